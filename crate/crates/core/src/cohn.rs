//! The Cohn localization Λ of a commutative domain A at a map A → R,
//! realized as the fraction ring S⁻¹A with S = {s : s ↦ unit of R}.

use std::fmt;

use crate::error::{Error, Result};
use crate::groupring::{GroupRing, GroupRingElem, RingMap};
use crate::laurent::LaurentPid;
use crate::parse::RawFrac;
use crate::ring::{Euclidean, Mat, Ring};
use crate::scalar::CoeffRing;
use crate::wclass::{w_membership, MatrixA};

/// The multiplicative set S of elements whose image is a unit.
#[derive(Debug, Clone, PartialEq)]
pub struct DenomSet {
    map: RingMap,
}

impl DenomSet {
    /// Requires A to be a commutative domain (trivial or free-abelian G).
    pub fn new(map: RingMap) -> Result<Self> {
        if !map.source().is_domain() {
            return Err(Error::Unsupported(format!(
                "fraction localization needs a commutative domain; {} is not one",
                map.source().header()
            )));
        }
        Ok(DenomSet { map })
    }

    pub fn map(&self) -> &RingMap {
        &self.map
    }

    pub fn ring(&self) -> &GroupRing {
        self.map.source()
    }

    pub fn contains(&self, s: &GroupRingElem) -> Result<bool> {
        Ok(self.map.target().is_unit(&self.map.apply(s)?))
    }

    pub fn frac(&self, num: GroupRingElem, den: GroupRingElem) -> Result<Frac> {
        if num.ring() != self.ring() || den.ring() != self.ring() {
            return Err(Error::RingMismatch(format!("fraction entries must lie in {}", self.ring())));
        }
        if !self.contains(&den)? {
            return Err(Error::Precondition(format!(
                "denominator {den} maps to {}, not a unit of {}",
                crate::scalar::fmt_scalar(&self.map.apply(&den)?),
                self.map.target()
            )));
        }
        Ok(self.canonical(Frac { num, den }))
    }

    pub fn from_raw(&self, f: RawFrac) -> Result<Frac> {
        self.frac(f.num, f.den)
    }

    pub fn from_elem(&self, a: GroupRingElem) -> Frac {
        Frac { den: self.ring().one(), num: a }
    }

    /// Folds unit denominators into the numerator, cancels common factors in
    /// the single-variable field case, and makes the denominator's image +1
    /// over ℤ.
    fn canonical(&self, f: Frac) -> Frac {
        let r = self.ring();
        if let Some(inv) = f.den.monomial_inverse() {
            return Frac { num: r.mul(&f.num, &inv), den: r.one() };
        }
        let mut f = f;
        if r.is_laurent_over_field() {
            let pid = LaurentPid::new(r.coeff(), "t").expect("field coefficients");
            let n = pid.from_elem(&f.num).unwrap();
            let d = pid.from_elem(&f.den).unwrap();
            let g = gcd(&pid, &n, &d);
            let g = pid.normalize(&g);
            if !pid.is_unit(&g) {
                let nn = pid.div_rem(&n, &g).0;
                let dd = pid.div_rem(&d, &g).0;
                let u = primitive_unit(&pid, &dd);
                f = Frac { num: pid.to_elem(r, &pid.mul(&nn, &u)), den: pid.to_elem(r, &pid.mul(&dd, &u)) };
            } else {
                let u = primitive_unit(&pid, &d);
                f = Frac { num: pid.to_elem(r, &pid.mul(&n, &u)), den: pid.to_elem(r, &pid.mul(&d, &u)) };
            }
            if let Some(inv) = f.den.monomial_inverse() {
                return Frac { num: r.mul(&f.num, &inv), den: r.one() };
            }
        }
        if self.map.target() == CoeffRing::Z {
            let img = self.map.apply(&f.den).expect("denominator lies in the source ring");
            if img < num_traits::Zero::zero() {
                return Frac { num: r.neg(&f.num), den: r.neg(&f.den) };
            }
        }
        f
    }

    /// The ring Λ as a [`Ring`] context.
    pub fn lambda(&self) -> Lambda {
        Lambda { dset: self.clone() }
    }
}

/// Unit making a denominator monic over 𝔽_p, or over ℚ an integer polynomial
/// with coprime coefficients, positive leading coefficient and no power of t.
fn primitive_unit(pid: &LaurentPid, d: &crate::laurent::Laurent) -> crate::laurent::Laurent {
    if pid.coeff != CoeffRing::Q {
        return pid.normal_unit(d);
    }
    use num_integer::Integer;
    let lcm = d.coeffs.iter().fold(num_bigint::BigInt::from(1), |a, c| a.lcm(c.denom()));
    let g = d.coeffs.iter().fold(num_bigint::BigInt::from(0), |a, c| a.gcd(&(c.numer() * &lcm / c.denom())));
    let mut c = crate::scalar::Scalar::new(lcm, g);
    if d.lead().is_some_and(|l| l < &num_traits::Zero::zero()) {
        c = -c;
    }
    pid.monomial(-d.low, c)
}

fn gcd<R: Euclidean>(r: &R, a: &R::Elem, b: &R::Elem) -> R::Elem {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !r.is_zero(&b) {
        let rem = r.div_rem(&a, &b).1;
        a = b;
        b = rem;
    }
    a
}

/// An element `num / den` of Λ, with `den ∈ S`.
#[derive(Debug, Clone)]
pub struct Frac {
    num: GroupRingElem,
    den: GroupRingElem,
}

impl Frac {
    pub fn num(&self) -> &GroupRingElem {
        &self.num
    }

    pub fn den(&self) -> &GroupRingElem {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// Equality by cross-multiplication, valid because A is a domain.
pub fn frac_eq(x: &Frac, y: &Frac) -> bool {
    let r = x.num.ring();
    r.mul(&x.num, &y.den) == r.mul(&y.num, &x.den)
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        frac_eq(self, other)
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = self.den.ring().one();
        if self.den == one {
            return write!(f, "{}", self.num);
        }
        let num = self.num.to_string();
        let den = self.den.to_string();
        let num = if self.num.terms().len() > 1 { format!("({num})") } else { num };
        let den = if self.den.terms().len() > 1 || den.contains(['*', '-', '/']) { format!("({den})") } else { den };
        write!(f, "{num}/{den}")
    }
}

/// Λ as a ring context.
#[derive(Debug, Clone, PartialEq)]
pub struct Lambda {
    dset: DenomSet,
}

impl Lambda {
    pub fn dset(&self) -> &DenomSet {
        &self.dset
    }

    /// Multiplicative inverse of an element whose numerator lies in S.
    pub fn inv(&self, x: &Frac) -> Result<Frac> {
        self.dset.frac(x.den.clone(), x.num.clone())
    }
}

impl Ring for Lambda {
    type Elem = Frac;

    fn zero(&self) -> Frac {
        self.dset.from_elem(self.dset.ring().zero())
    }

    fn one(&self) -> Frac {
        self.dset.from_elem(self.dset.ring().one())
    }

    fn add(&self, a: &Frac, b: &Frac) -> Frac {
        let r = self.dset.ring();
        if a.den == b.den {
            return self.dset.canonical(Frac { num: r.add(&a.num, &b.num), den: a.den.clone() });
        }
        self.dset.canonical(Frac {
            num: r.add(&r.mul(&a.num, &b.den), &r.mul(&b.num, &a.den)),
            den: r.mul(&a.den, &b.den),
        })
    }

    fn mul(&self, a: &Frac, b: &Frac) -> Frac {
        let r = self.dset.ring();
        self.dset.canonical(Frac { num: r.mul(&a.num, &b.num), den: r.mul(&a.den, &b.den) })
    }

    fn neg(&self, a: &Frac) -> Frac {
        Frac { num: self.dset.ring().neg(&a.num), den: a.den.clone() }
    }

    fn is_zero(&self, a: &Frac) -> bool {
        a.num.is_zero()
    }

    fn eq_elem(&self, a: &Frac, b: &Frac) -> bool {
        frac_eq(a, b)
    }
}

/// A matrix over Λ.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFrac {
    pub lambda: Lambda,
    pub mat: Mat<Frac>,
}

impl MatrixFrac {
    pub fn from_a(m: &MatrixA, dset: &DenomSet) -> Self {
        MatrixFrac { lambda: dset.lambda(), mat: m.mat.map(|e| dset.from_elem(e.clone())) }
    }

    pub fn mul(&self, other: &MatrixFrac) -> Result<MatrixFrac> {
        Ok(MatrixFrac { lambda: self.lambda.clone(), mat: crate::ring::mat_mul(&self.lambda, &self.mat, &other.mat)? })
    }

    pub fn is_identity(&self) -> bool {
        let l = &self.lambda;
        self.mat.is_square() && crate::ring::mat_eq(l, &self.mat, &crate::ring::identity(l, self.mat.rows))
    }

    pub fn row_strings(&self) -> Vec<String> {
        (0..self.mat.rows)
            .map(|i| self.mat.row(i).iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "))
            .collect()
    }
}

pub fn s_membership(s: &GroupRingElem, d: &DenomSet) -> Result<bool> {
    d.contains(s)
}

/// α⁻¹ = adj(α) / det(α) over Λ.
pub fn mat_invert_over_lambda(alpha: &MatrixA, d: &DenomSet) -> Result<MatrixFrac> {
    let w = w_membership(alpha, d.map())?;
    if !w.verdict {
        return Err(Error::Precondition(format!(
            "matrix is not in W: {}",
            w.reason.map(|r| r.to_string()).unwrap_or_default()
        )));
    }
    let det = alpha.det()?;
    let adj = alpha.adjugate()?;
    Ok(MatrixFrac { lambda: d.lambda(), mat: adj.mat.try_map(|e| d.frac(e.clone(), det.clone()))? })
}

/// A formal expression λα⁻¹μ for noncommutative A. It records the shape
/// only; no equality test is offered.
#[derive(Debug, Clone)]
pub struct FormalTriple {
    pub lambda: MatrixA,
    pub alpha: MatrixA,
    pub mu: MatrixA,
}

impl FormalTriple {
    pub fn new(lambda: MatrixA, alpha: MatrixA, mu: MatrixA) -> Result<Self> {
        if !alpha.is_square() || lambda.cols() != alpha.rows() || alpha.cols() != mu.rows() {
            return Err(Error::Dimension("λα⁻¹μ needs square α with matching λ, μ".into()));
        }
        if lambda.ring != alpha.ring || alpha.ring != mu.ring {
            return Err(Error::RingMismatch("λ, α, μ over different rings".into()));
        }
        Ok(FormalTriple { lambda, alpha, mu })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_elem, parse_frac};

    fn setup() -> (GroupRing, DenomSet) {
        let r = GroupRing::parse_header("Z[t]").unwrap();
        let d = DenomSet::new(RingMap::augmentation(r.clone(), CoeffRing::Z).unwrap()).unwrap();
        (r, d)
    }

    fn fr(d: &DenomSet, s: &str) -> Frac {
        d.from_raw(parse_frac(d.ring(), s, 0).unwrap()).unwrap()
    }

    #[test]
    fn membership() {
        let (r, d) = setup();
        assert!(d.contains(&parse_elem(&r, "2t-1", 0).unwrap()).unwrap());
        assert!(!d.contains(&parse_elem(&r, "t-1", 0).unwrap()).unwrap());
        let dm = DenomSet::new(RingMap::parse_spec(r.clone(), CoeffRing::Z, "t=-1").unwrap()).unwrap();
        assert!(!dm.contains(&parse_elem(&r, "t+1", 0).unwrap()).unwrap());
        assert!(dm.contains(&parse_elem(&r, "t+2", 0).unwrap()).unwrap());
        assert!(!d.contains(&r.zero()).unwrap());
    }

    #[test]
    fn arithmetic() {
        let (_, d) = setup();
        let l = d.lambda();
        assert!(frac_eq(&l.mul(&fr(&d, "1/(2t-1)"), &fr(&d, "2t-1")), &l.one()));
        assert!(frac_eq(&l.add(&fr(&d, "t/(2t-1)"), &fr(&d, "(t-1)/(2t-1)")), &l.one()));
        let s = l.add(&fr(&d, "1/(2t-1)"), &fr(&d, "1/(-2t+3)"));
        assert!(frac_eq(&s, &fr(&d, "2/((2t-1)(-2t+3))")));
        assert!(frac_eq(&fr(&d, "t/(2t-1)"), &fr(&d, "t^2/(2t^2-t)")));
        assert!(!frac_eq(&fr(&d, "t/(2t-1)"), &fr(&d, "1/(2t-1)")));
        assert!(d.from_raw(parse_frac(d.ring(), "1/(t-1)", 0).unwrap()).is_err());
    }

    #[test]
    fn canonical_sign() {
        let (_, d) = setup();
        // -2t+3 maps to 1; 2t-3 maps to -1 and gets flipped
        let x = fr(&d, "1/(2t-3)");
        assert_eq!(x.to_string(), "-1/(-2*t + 3)");
    }

    #[test]
    fn cramer_two_by_two() {
        let (r, d) = setup();
        let e = |s: &str| parse_elem(&r, s, 0).unwrap();
        let a = MatrixA::from_rows(&r, vec![vec![e("t"), e("1")], vec![e("0"), e("2t-1")]], 2).unwrap();
        let inv = mat_invert_over_lambda(&a, &d).unwrap();
        assert!(frac_eq(inv.mat.get(0, 0), &fr(&d, "1/t")));
        assert!(frac_eq(inv.mat.get(0, 1), &fr(&d, "-1/(t(2t-1))")));
        assert!(inv.mat.get(1, 0).is_zero());
        assert!(frac_eq(inv.mat.get(1, 1), &fr(&d, "1/(2t-1)")));
        let af = MatrixFrac::from_a(&a, &d);
        assert!(af.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&af).unwrap().is_identity());
        let bad = MatrixA::from_rows(&r, vec![vec![e("t-1")]], 1).unwrap();
        assert!(matches!(mat_invert_over_lambda(&bad, &d), Err(Error::Precondition(_))));
    }

    #[test]
    fn gcd_reduction_over_q() {
        let r = GroupRing::parse_header("Q[t]").unwrap();
        let d = DenomSet::new(RingMap::augmentation(r.clone(), CoeffRing::Q).unwrap()).unwrap();
        let x = fr(&d, "(t^2 - 4)/(2t - 4)");
        assert_eq!(x.to_string(), "1/2*t + 1");
    }
}
