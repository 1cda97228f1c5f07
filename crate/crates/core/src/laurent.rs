//! Single-variable Laurent polynomials k[t, t⁻¹] over a field, as a
//! Euclidean domain, optionally localized at `{f : f(c) ≠ 0}`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::GElt;
use crate::groupring::{GroupRing, GroupRingElem};
use crate::ring::{Euclidean, Ring};
use crate::scalar::{fmt_scalar, CoeffRing, Scalar};

/// `Σ coeffs[i] t^(low + i)`; zero is the empty vector, otherwise the first
/// and last coefficients are nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent {
    pub low: i64,
    pub coeffs: Vec<Scalar>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { low: 0, coeffs: vec![] }
    }

    fn normalized(mut low: i64, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead_zeros);
        low += lead_zeros as i64;
        if coeffs.is_empty() {
            low = 0;
        }
        Laurent { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }
}

/// The ring k[t, t⁻¹] for a field k.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPid {
    pub coeff: CoeffRing,
    pub var: String,
    /// When set, elements not vanishing at this point are treated as units by
    /// [`Euclidean::strip`].
    pub local_at: Option<Scalar>,
}

impl LaurentPid {
    pub fn new(coeff: CoeffRing, var: &str) -> Result<Self> {
        if !coeff.is_field() {
            return Err(Error::Unsupported(format!("{coeff}[{var}^±1] is not a Euclidean domain")));
        }
        Ok(LaurentPid { coeff, var: var.to_string(), local_at: None })
    }

    pub fn localized(mut self, at: Scalar) -> Self {
        self.local_at = Some(at);
        self
    }

    pub fn monomial(&self, e: i64, c: Scalar) -> Laurent {
        Laurent::normalized(e, vec![c])
    }

    pub fn from_elem(&self, a: &GroupRingElem) -> Result<Laurent> {
        if a.ring().group().rank() != Some(1) {
            return Err(Error::Unsupported("not a single-variable Laurent ring".into()));
        }
        let Some((lo, hi)) = a.degree_range() else { return Ok(Laurent::zero()) };
        let mut coeffs = vec![Scalar::zero(); (hi - lo + 1) as usize];
        for (g, c) in a.terms() {
            coeffs[(g.0[0] - lo) as usize] = self.coeff.coerce(c)?;
        }
        Ok(Laurent::normalized(lo, coeffs))
    }

    pub fn to_elem(&self, ring: &GroupRing, a: &Laurent) -> GroupRingElem {
        ring.from_terms(
            a.coeffs.iter().enumerate().map(|(i, c)| (GElt(vec![a.low + i as i64]), c.clone())),
        )
        .expect("Laurent coefficients lie in the ring")
    }

    pub fn eval(&self, a: &Laurent, x: &Scalar) -> Scalar {
        let k = self.coeff;
        let mut acc = Scalar::zero();
        for c in a.coeffs.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        k.mul(&acc, &k.pow(x, a.low).expect("evaluation point is a unit"))
    }

    /// Polynomial long division of coefficient vectors (low degree first).
    fn poly_divmod(&self, a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let k = self.coeff;
        let mut r = a.to_vec();
        if a.len() < b.len() {
            return (vec![], r);
        }
        let mut q = vec![Scalar::zero(); a.len() - b.len() + 1];
        let inv = k.inv(b.last().unwrap()).unwrap();
        for i in (0..q.len()).rev() {
            let c = k.mul(&r[i + b.len() - 1], &inv);
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                r[i + j] = k.sub(&r[i + j], &k.mul(&c, bj));
            }
            q[i] = c;
        }
        (q, r)
    }

    /// Multiplicity of `c` as a root.
    pub fn root_multiplicity(&self, a: &Laurent, c: &Scalar) -> usize {
        let k = self.coeff;
        let mut p = a.coeffs.clone();
        let mut m = 0;
        while p.len() > 1 {
            // synthetic division by (t - c)
            let mut q = vec![Scalar::zero(); p.len() - 1];
            let mut carry = Scalar::zero();
            for i in (0..p.len()).rev() {
                let v = k.add(&p[i], &k.mul(&carry, c));
                if i == 0 {
                    carry = v;
                } else {
                    q[i - 1] = v.clone();
                    carry = v;
                }
            }
            if !carry.is_zero() {
                break;
            }
            m += 1;
            p = q;
        }
        m
    }

    /// `(t - c)^n`.
    pub fn linear_power(&self, c: &Scalar, n: usize) -> Laurent {
        let k = self.coeff;
        let lin = Laurent::normalized(0, vec![k.neg(c), k.embed_int(1)]);
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, &lin);
        }
        acc
    }
}

impl Ring for LaurentPid {
    type Elem = Laurent;

    fn zero(&self) -> Laurent {
        Laurent::zero()
    }

    fn one(&self) -> Laurent {
        Laurent::normalized(0, vec![self.coeff.embed_int(1)])
    }

    fn add(&self, a: &Laurent, b: &Laurent) -> Laurent {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let low = a.low.min(b.low);
        let high = a.high().max(b.high());
        let mut coeffs = vec![Scalar::zero(); (high - low + 1) as usize];
        for (i, c) in a.coeffs.iter().enumerate() {
            coeffs[(a.low - low) as usize + i] = c.clone();
        }
        for (i, c) in b.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(b.low - low) as usize + i];
            *slot = self.coeff.add(slot, c);
        }
        Laurent::normalized(low, coeffs)
    }

    fn mul(&self, a: &Laurent, b: &Laurent) -> Laurent {
        if a.is_zero() || b.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![Scalar::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                coeffs[i + j] = self.coeff.add(&coeffs[i + j], &self.coeff.mul(x, y));
            }
        }
        Laurent::normalized(a.low + b.low, coeffs)
    }

    fn neg(&self, a: &Laurent) -> Laurent {
        Laurent { low: a.low, coeffs: a.coeffs.iter().map(|c| self.coeff.neg(c)).collect() }
    }

    fn is_zero(&self, a: &Laurent) -> bool {
        a.is_zero()
    }

    fn embed_int(&self, n: i64) -> Laurent {
        Laurent::normalized(0, vec![self.coeff.embed_int(n)])
    }

    fn eq_elem(&self, a: &Laurent, b: &Laurent) -> bool {
        a == b
    }
}

impl Euclidean for LaurentPid {
    fn size(&self, a: &Laurent) -> BigInt {
        BigInt::from(a.span())
    }

    fn div_rem(&self, a: &Laurent, b: &Laurent) -> (Laurent, Laurent) {
        assert!(!b.is_zero(), "division by zero");
        if a.is_zero() {
            return (Laurent::zero(), Laurent::zero());
        }
        let (q, r) = self.poly_divmod(&a.coeffs, &b.coeffs);
        (Laurent::normalized(a.low - b.low, q), Laurent::normalized(a.low, r))
    }

    fn is_unit(&self, a: &Laurent) -> bool {
        a.coeffs.len() == 1
    }

    fn unit_inv(&self, a: &Laurent) -> Option<Laurent> {
        if !self.is_unit(a) {
            return None;
        }
        Some(Laurent::normalized(-a.low, vec![self.coeff.inv(&a.coeffs[0])?]))
    }

    fn normal_unit(&self, a: &Laurent) -> Laurent {
        match a.lead() {
            None => self.one(),
            Some(l) => Laurent::normalized(-a.low, vec![self.coeff.inv(l).unwrap()]),
        }
    }

    fn strip(&self, d: &Laurent) -> Laurent {
        match &self.local_at {
            None => d.clone(),
            Some(_) if d.is_zero() => d.clone(),
            Some(c) => self.linear_power(c, self.root_multiplicity(d, c)),
        }
    }

    fn fmt_elem(&self, a: &Laurent) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let signed = !matches!(self.coeff, CoeffRing::Fp(_));
        let mut out = String::new();
        let mut first = true;
        for (i, c) in a.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = a.low + i as i64;
            let neg = signed && c < &Scalar::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{e}", self.var),
            };
            let one = mag == self.coeff.embed_int(1);
            if mono.is_empty() {
                out.push_str(&fmt_scalar(&mag));
            } else if one {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", fmt_scalar(&mag)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn q() -> LaurentPid {
        LaurentPid::new(CoeffRing::Q, "t").unwrap()
    }

    fn poly(low: i64, c: &[i64]) -> Laurent {
        Laurent::normalized(low, c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn division_identity() {
        let r = q();
        let a = poly(-2, &[3, 0, 1, 5, -2]);
        let b = poly(1, &[1, 2]);
        let (qq, rr) = r.div_rem(&a, &b);
        assert!(rr.is_zero() || rr.span() < b.span());
        assert_eq!(r.add(&r.mul(&qq, &b), &rr), a);
    }

    #[test]
    fn strip_keeps_root_part() {
        let r = q().localized(int(1));
        // (t - 1)^2 (2t - 1) t^3
        let d = r.mul(&r.mul(&r.linear_power(&int(1), 2), &poly(0, &[-1, 2])), &poly(3, &[1]));
        assert_eq!(r.strip(&d), r.linear_power(&int(1), 2));
    }

    #[test]
    fn formatting() {
        let r = q();
        assert_eq!(r.fmt_elem(&poly(0, &[1, -1, 1])), "t^2 - t + 1");
        assert_eq!(r.fmt_elem(&poly(-1, &[-2])), "-2*t^-1");
    }
}
