//! Reference computations that share no algorithm with the library code
//! they check: Laplace determinants over Laurent polynomials, brute-force
//! hom enumeration, column-echelon homology comparison and noncommutative
//! Fox calculus.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ggroup::homs::FiniteGGroup;
use crate::ggroup::stages::{PhiDiagram, PsiTriple};
use crate::ggroup::{FPGGroup, Word};
use crate::groupring::GroupRingElem;
use crate::knot::GroupPresentation;
use crate::scalar::Scalar;

/// Laurent polynomial in one variable: exponent ↦ coefficient.
pub type Poly = BTreeMap<i64, Scalar>;

pub fn poly_of(e: &GroupRingElem) -> Poly {
    e.terms().iter().map(|(g, c)| (g.0.first().copied().unwrap_or(0), c.clone())).collect()
}

fn clean(mut p: Poly) -> Poly {
    p.retain(|_, c| !c.is_zero());
    p
}

pub fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(*e).or_insert_with(Scalar::zero) += c;
    }
    clean(out)
}

pub fn poly_neg(a: &Poly) -> Poly {
    a.iter().map(|(e, c)| (*e, -c)).collect()
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            *out.entry(e1 + e2).or_insert_with(Scalar::zero) += c1 * c2;
        }
    }
    clean(out)
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::from([(0, Scalar::one())]);
    }
    let mut acc = Poly::new();
    for j in 0..n {
        if m[0][j].is_empty() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = poly_mul(&m[0][j], &cofactor_det(&minor));
        acc = poly_add(&acc, &if j % 2 == 0 { term } else { poly_neg(&term) });
    }
    acc
}

/// Coefficient ring of the oracle computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Int,
    Rat,
    Fp(u64),
}

impl Target {
    pub fn reduce(self, x: &Scalar) -> Scalar {
        match self {
            Target::Fp(p) => {
                let p = BigInt::from(p);
                let num = x.numer().mod_floor(&p);
                let den = x.denom().mod_floor(&p);
                let inv = den.extended_gcd(&p).x.mod_floor(&p);
                Scalar::from_integer((num * inv).mod_floor(&p))
            }
            _ => x.clone(),
        }
    }

    pub fn is_unit(self, x: &Scalar) -> bool {
        match self {
            Target::Int => x.is_integer() && x.abs().is_one(),
            Target::Rat => !x.is_zero(),
            Target::Fp(_) => !self.reduce(x).is_zero(),
        }
    }

    fn is_field(self) -> bool {
        self != Target::Int
    }

    /// `(g, x, y)` with `g = x·a + y·b` a gcd (any nonzero pivot over a field).
    fn xgcd(self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar, Scalar) {
        if self.is_field() {
            return if a.is_zero() {
                (b.clone(), Scalar::zero(), Scalar::one())
            } else {
                (a.clone(), Scalar::one(), Scalar::zero())
            };
        }
        let e = a.numer().extended_gcd(b.numer());
        (Scalar::from_integer(e.gcd), Scalar::from_integer(e.x), Scalar::from_integer(e.y))
    }

    fn div(self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        let q = self.reduce(&(a / b));
        if self == Target::Int && !q.is_integer() {
            return None;
        }
        Some(q)
    }
}

pub fn eval_poly(p: &Poly, x: &Scalar, t: Target) -> Scalar {
    let mut acc = Scalar::zero();
    for (e, c) in p {
        let base = if *e < 0 { x.recip() } else { x.clone() };
        let mut pw = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            pw *= &base;
        }
        acc += c * pw;
    }
    t.reduce(&acc)
}

type M = Vec<Vec<Scalar>>;

fn cols_of(m: &M, ncols: usize) -> usize {
    m.first().map(|r| r.len()).unwrap_or(ncols)
}

/// Column echelon form `A·U = H` with U invertible over the target; returns
/// H, U and the number of nonzero columns of H.
fn col_echelon(t: Target, a: &M, ncols: usize) -> (M, M, usize) {
    let rows = a.len();
    let cols = cols_of(a, ncols);
    let mut h = a.clone();
    let mut u: M = (0..cols).map(|i| (0..cols).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect();
    let mut c = 0;
    let comb = |m: &mut M, c: usize, j: usize, x: &Scalar, y: &Scalar, z: &Scalar, w: &Scalar| {
        for row in m.iter_mut() {
            let (p, q) = (row[c].clone(), row[j].clone());
            row[c] = t.reduce(&(x * &p + y * &q));
            row[j] = t.reduce(&(z * &p + w * &q));
        }
    };
    for i in 0..rows {
        if c >= cols {
            break;
        }
        for j in c + 1..cols {
            if h[i][j].is_zero() {
                continue;
            }
            let (p, q) = (h[i][c].clone(), h[i][j].clone());
            let (g, x, y) = t.xgcd(&p, &q);
            let (z, w) = (-t.div(&q, &g).unwrap(), t.div(&p, &g).unwrap());
            comb(&mut h, c, j, &x, &y, &z, &w);
            comb(&mut u, c, j, &x, &y, &z, &w);
        }
        if !h[i][c].is_zero() {
            c += 1;
        }
    }
    (h, u, c)
}

/// Kernel basis as columns of a `cols × k` matrix.
fn kernel(t: Target, a: &M, ncols: usize) -> M {
    let (_, u, r) = col_echelon(t, a, ncols);
    u.iter().map(|row| row[r..].to_vec()).collect()
}

/// Some x with A·x = b, when one exists over the target.
fn solve(t: Target, a: &M, ncols: usize, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let (h, u, r) = col_echelon(t, a, ncols);
    let mut y = vec![Scalar::zero(); cols_of(a, ncols)];
    for k in 0..r {
        // pivot of column k: its first nonzero row
        let i = (0..h.len()).find(|&i| !h[i][k].is_zero())?;
        let mut rest = b[i].clone();
        for l in 0..k {
            rest -= &h[i][l] * &y[l];
        }
        y[k] = t.div(&t.reduce(&rest), &h[i][k])?;
    }
    for i in 0..h.len() {
        let s = (0..r).fold(Scalar::zero(), |s, l| s + &h[i][l] * &y[l]);
        if t.reduce(&s) != t.reduce(&b[i]) {
            return None;
        }
    }
    Some((0..u.len()).map(|i| t.reduce(&(0..y.len()).fold(Scalar::zero(), |s, l| s + &u[i][l] * &y[l]))).collect())
}

fn column(m: &M, j: usize) -> Vec<Scalar> {
    m.iter().map(|r| r[j].clone()).collect()
}

fn from_columns(rows: usize, cols: &[Vec<Scalar>]) -> M {
    (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

fn mat_vec(t: Target, m: &M, v: &[Scalar]) -> Vec<Scalar> {
    m.iter().map(|row| t.reduce(&row.iter().zip(v).fold(Scalar::zero(), |s, (a, b)| s + a * b))).collect()
}

/// A complex over the target: `d[n]` is the boundary `C_(n+1) → C_n` as a
/// `ranks[n] × ranks[n+1]` matrix.
#[derive(Debug, Clone)]
pub struct ROracleComplex {
    pub ranks: Vec<usize>,
    pub d: Vec<M>,
}

impl ROracleComplex {
    fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `d_n: C_n → C_(n-1)`, zero-padded.
    fn boundary(&self, n: usize) -> M {
        match (n, self.d.get(n.wrapping_sub(1))) {
            (1.., Some(m)) if !m.is_empty() => m.clone(),
            _ => (0..if n == 0 { 0 } else { self.rank(n - 1) }).map(|_| vec![Scalar::zero(); self.rank(n)]).collect(),
        }
    }
}

/// Cycles as kernel columns, and boundaries in cycle coordinates.
fn homology_data(t: Target, c: &ROracleComplex, n: usize) -> (M, M, usize) {
    let r = c.rank(n);
    let z = kernel(t, &c.boundary(n), r);
    let k = if r == 0 { 0 } else { cols_of(&z, 0) };
    let b = c.boundary(n + 1);
    let x_cols: Vec<Vec<Scalar>> = (0..c.rank(n + 1))
        .map(|j| solve(t, &z, k, &column(&b, j)).expect("boundaries are cycles"))
        .collect();
    (z, from_columns(k, &x_cols), k)
}

/// Whether `f` induces an isomorphism on homology in every degree, by
/// comparing cycle/boundary coordinates directly.
pub fn homology_iso(t: Target, src: &ROracleComplex, tgt: &ROracleComplex, f: &[M]) -> bool {
    let len = src.ranks.len().max(tgt.ranks.len());
    for n in 0..len {
        let (z, x, k) = homology_data(t, src, n);
        let (z2, x2, k2) = homology_data(t, tgt, n);
        let fx = f.get(n).cloned().unwrap_or_default();
        let xc = cols_of(&x, 0);
        let x2c = cols_of(&x2, 0);
        let mut y_cols = Vec::new();
        for j in 0..k {
            let img = if fx.is_empty() { vec![Scalar::zero(); z2.len()] } else { mat_vec(t, &fx, &column(&z, j)) };
            match solve(t, &z2, k2, &img) {
                Some(y) => y_cols.push(y),
                None => return false,
            }
        }
        // [Y | X′] : ℤ^(k + x2c) → ℤ^k2
        let mut cols = y_cols.clone();
        cols.extend((0..x2c).map(|j| column(&x2, j)));
        let yx = from_columns(k2, &cols);
        let width = k + x2c;
        for i in 0..k2 {
            let e: Vec<Scalar> = (0..k2).map(|r| if r == i { Scalar::one() } else { Scalar::zero() }).collect();
            if solve(t, &yx, width, &e).is_none() {
                return false;
            }
        }
        if k2 == 0 {
            // every class maps to zero; injective iff H_n(C) = 0
            for i in 0..k {
                let e: Vec<Scalar> = (0..k).map(|r| if r == i { Scalar::one() } else { Scalar::zero() }).collect();
                if solve(t, &x, xc, &e).is_none() {
                    return false;
                }
            }
            continue;
        }
        let ker = kernel(t, &yx, width);
        for j in 0..cols_of(&ker, 0) {
            let v: Vec<Scalar> = column(&ker, j)[..k].to_vec();
            if solve(t, &x, xc, &v).is_none() {
                return false;
            }
        }
    }
    true
}

/// Values of a finite G-group word under an assignment, evaluated letter by
/// letter against the group table.
pub struct WordEval {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    id: usize,
}

impl WordEval {
    pub fn new(t: &FiniteGGroup) -> Self {
        let els = t.h.elements().expect("finite");
        let pos = |g| els.iter().position(|x| *x == g).unwrap();
        let mul = els.iter().map(|a| els.iter().map(|b| pos(t.h.mul(a, b))).collect()).collect();
        let inv = els.iter().map(|a| pos(t.h.inv(a))).collect();
        WordEval { mul, inv, id: pos(t.h.identity()) }
    }

    pub fn eval(&self, t: &FiniteGGroup, gens: &[String], vals: &[usize], w: &Word) -> usize {
        w.0.iter().fold(self.id, |acc, l| {
            let i = gens.iter().position(|s| *s == l.sym).expect("symbol");
            let v = t.act(vals[i], &l.g);
            self.mul[acc][if l.inv { self.inv[v] } else { v }]
        })
    }

    fn tuples(&self, k: usize) -> Vec<Vec<usize>> {
        let n = self.inv.len();
        let mut out = vec![vec![]];
        for _ in 0..k {
            out = out.into_iter().flat_map(|v: Vec<usize>| (0..n).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        out
    }

    pub fn homs(&self, t: &FiniteGGroup, g: &FPGGroup) -> Vec<Vec<usize>> {
        self.tuples(g.gens.len())
            .into_iter()
            .filter(|v| g.rels.iter().all(|r| self.eval(t, &g.gens, v, r) == self.id))
            .collect()
    }
}

/// Pairs (f: Γ → T, k: F(V) → T) with f∘β = k∘α for every diagram.
pub fn pushout_count(gamma: &FPGGroup, j: &[PhiDiagram], t: &FiniteGGroup) -> usize {
    let ev = WordEval::new(t);
    ev.homs(t, gamma)
        .iter()
        .map(|f| {
            j.iter()
                .map(|d| {
                    let vg = &d.alpha.target.gens;
                    ev.tuples(vg.len())
                        .iter()
                        .filter(|k| {
                            d.alpha.source.gens.iter().enumerate().all(|(i, _)| {
                                ev.eval(t, &gamma.gens, f, &d.beta[i]) == ev.eval(t, vg, k, &d.alpha.images[i])
                            })
                        })
                        .count()
                })
                .product::<usize>()
        })
        .sum()
}

/// Homs f: Γ → T with f∘γ = f∘γ′ for every triple.
pub fn coequalizer_count(gamma: &FPGGroup, j: &[PsiTriple], t: &FiniteGGroup) -> usize {
    let ev = WordEval::new(t);
    ev.homs(t, gamma)
        .iter()
        .filter(|f| {
            j.iter().all(|tr| {
                tr.gamma.iter().zip(&tr.gamma2).all(|(a, b)| ev.eval(t, &gamma.gens, f, a) == ev.eval(t, &gamma.gens, f, b))
            })
        })
        .count()
}

/// Free-group element as a reduced letter list.
type FreeWord = Vec<(usize, bool)>;

fn push_letter(w: &mut FreeWord, l: (usize, bool)) {
    if w.last().is_some_and(|&(g, i)| g == l.0 && i != l.1) {
        w.pop();
    } else {
        w.push(l);
    }
}

/// ∂w/∂x_j in ℤ[F] as a sum of reduced words.
pub fn fox_free(w: &[(usize, bool)], j: usize) -> BTreeMap<FreeWord, BigInt> {
    let mut out: BTreeMap<FreeWord, BigInt> = BTreeMap::new();
    let mut prefix: FreeWord = Vec::new();
    for &(g, inv) in w {
        if g == j {
            if inv {
                let mut p = prefix.clone();
                push_letter(&mut p, (g, true));
                *out.entry(p).or_default() -= 1;
            } else {
                *out.entry(prefix.clone()).or_default() += 1;
            }
        }
        push_letter(&mut prefix, (g, inv));
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Δ from the Fox matrix with the first degree-±1 column deleted, by Laplace
/// expansion, normalized to lowest degree 0 and positive leading coefficient.
pub fn alexander_oracle(p: &GroupPresentation) -> Option<Poly> {
    let n = p.gens.len();
    let del = (0..n).find(|&j| p.degrees[j].abs() == 1)?;
    let rows: Vec<Vec<Poly>> = p
        .rels
        .iter()
        .map(|r| {
            (0..n)
                .filter(|&j| j != del)
                .map(|j| {
                    let mut poly = Poly::new();
                    for (w, c) in fox_free(r, j) {
                        let e: i64 = w.iter().map(|&(g, inv)| if inv { -p.degrees[g] } else { p.degrees[g] }).sum();
                        *poly.entry(e).or_insert_with(Scalar::zero) += Scalar::from_integer(c);
                    }
                    clean(poly)
                })
                .collect()
        })
        .collect();
    if rows.len() != n - 1 {
        return None;
    }
    let d = cofactor_det(&rows);
    let low = *d.keys().next().unwrap_or(&0);
    let sign = if d.values().next_back().is_some_and(|c| c.is_negative()) { -Scalar::one() } else { Scalar::one() };
    Some(d.into_iter().map(|(e, c)| (e - low, c * &sign)).collect())
}

pub fn format_poly(p: &Poly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.iter().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match *e {
            0 => String::new(),
            1 => "t".into(),
            k => format!("t^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&crate::scalar::fmt_scalar(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{mono}", crate::scalar::fmt_scalar(&a)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::parse_presentation;

    fn q(n: i64) -> Scalar {
        Scalar::from_integer(n.into())
    }

    #[test]
    fn laplace_and_eval() {
        let t_minus = Poly::from([(1, q(2)), (0, q(-1))]);
        let m = vec![vec![t_minus.clone(), Poly::from([(0, q(1))])], vec![Poly::new(), Poly::from([(1, q(1))])]];
        let d = cofactor_det(&m);
        assert_eq!(format_poly(&d), "2*t^2 - t");
        assert_eq!(eval_poly(&d, &q(1), Target::Int), q(1));
        assert_eq!(Target::Fp(3).reduce(&Scalar::new(1.into(), 2.into())), q(2));
    }

    #[test]
    fn echelon_solves_over_z() {
        let a: M = vec![vec![q(2), q(4)], vec![q(1), q(3)]];
        assert_eq!(solve(Target::Int, &a, 2, &[q(2), q(1)]), Some(vec![q(1), q(0)]));
        let b: M = vec![vec![q(2), q(4)]];
        assert!(solve(Target::Int, &b, 2, &[q(1)]).is_none());
        assert!(solve(Target::Rat, &b, 2, &[q(1)]).is_some());
        let k = kernel(Target::Int, &b, 2);
        assert_eq!(mat_vec(Target::Int, &b, &column(&k, 0)), vec![q(0)]);
    }

    #[test]
    fn fox_oracle_knots() {
        let tre = parse_presentation("gens x,y; rels x y x Y X Y").unwrap();
        assert_eq!(format_poly(&alexander_oracle(&tre).unwrap()), "t^2 - t + 1");
        let fig = parse_presentation("gens x,y; rels x Y X y x Y x y X Y").unwrap();
        assert_eq!(format_poly(&alexander_oracle(&fig).unwrap()), "t^2 - 3*t + 1");
    }

    #[test]
    fn homology_iso_detects_multiplication_by_two() {
        // C = (ℤ --2--> ℤ) so H0 = ℤ/2; ×1 is iso, ×2 is not, ×3 is.
        let c = ROracleComplex { ranks: vec![1, 1], d: vec![vec![vec![q(2)]]] };
        let f = |k| vec![vec![vec![q(k)]], vec![vec![q(k)]]];
        assert!(homology_iso(Target::Int, &c, &c, &f(1)));
        assert!(!homology_iso(Target::Int, &c, &c, &f(2)));
        assert!(homology_iso(Target::Int, &c, &c, &f(3)));
        assert!(!homology_iso(Target::Fp(2), &c, &c, &f(2)));
    }
}
