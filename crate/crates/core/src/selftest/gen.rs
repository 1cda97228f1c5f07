//! Seeded random corpora: small-coefficient matrices, unimodular changes of
//! basis, chain complexes and chain maps.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::oracle::{eval_poly, poly_of, Target};
use crate::chainloc::{ChainComplex, ChainMap};
use crate::error::Result;
use crate::groupring::{GroupRing, GroupRingElem};
use crate::parse::parse_elem;
use crate::ring::{Mat, Ring};
use crate::scalar::Scalar;
use crate::wclass::MatrixA;

pub type Rng8 = ChaCha8Rng;

/// The small-coefficient entry pool.
pub const POOL: [&str; 10] = ["0", "1", "-1", "t", "-t", "t^-1", "-t^-1", "2t-1", "t-1", "t+1"];

const S_CANDIDATES: [&str; 14] =
    ["1", "-1", "t", "t^-1", "2t-1", "t^2-t+1", "2-t", "t+1", "3", "2t+1", "t+2", "t^2+t+1", "t^2+1", "3t-2"];

pub fn elem(ring: &GroupRing, s: &str) -> GroupRingElem {
    parse_elem(ring, s, 0).expect("pool element")
}

pub fn pool(ring: &GroupRing) -> Vec<GroupRingElem> {
    POOL.iter().map(|s| elem(ring, s)).collect()
}

pub fn nonzero_pool(ring: &GroupRing) -> Vec<GroupRingElem> {
    pool(ring).into_iter().filter(|e| !e.is_zero()).collect()
}

/// Candidates whose image at `t ↦ value` is a unit of the target.
pub fn s_pool(ring: &GroupRing, value: &Scalar, target: Target) -> Vec<GroupRingElem> {
    S_CANDIDATES
        .iter()
        .map(|s| elem(ring, s))
        .filter(|e| target.is_unit(&eval_poly(&poly_of(e), value, target)))
        .collect()
}

pub fn pick<'a, T>(rng: &mut Rng8, xs: &'a [T]) -> &'a T {
    xs.choose(rng).expect("nonempty pool")
}

pub fn random_matrix(rng: &mut Rng8, ring: &GroupRing, rows: usize, cols: usize, from: &[GroupRingElem]) -> MatrixA {
    MatrixA { ring: ring.clone(), mat: Mat::from_fn(rows, cols, |_, _| pick(rng, from).clone()) }
}

fn elementary(ring: &GroupRing, n: usize, i: usize, j: usize, c: &GroupRingElem) -> MatrixA {
    let mut m = MatrixA::identity(ring, n);
    m.mat.set(i, j, c.clone());
    m
}

/// A random invertible matrix over A with its inverse: elementary factors
/// and units `±t^k` on the diagonal.
pub fn unimodular(rng: &mut Rng8, ring: &GroupRing, n: usize, steps: usize) -> (MatrixA, MatrixA) {
    let mut u = MatrixA::identity(ring, n);
    let mut ui = MatrixA::identity(ring, n);
    let pool = nonzero_pool(ring);
    for _ in 0..steps {
        if n >= 2 {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let c = pick(rng, &pool).clone();
            u = u.mul(&elementary(ring, n, i, j, &c)).unwrap();
            ui = elementary(ring, n, i, j, &ring.neg(&c)).mul(&ui).unwrap();
        }
    }
    if n > 0 {
        let i = rng.gen_range(0..n);
        let k = rng.gen_range(-1..=1);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let unit = ring.mul(&ring.int(sign), &ring.gen_pow(0, k));
        let inv = unit.monomial_inverse().unwrap();
        let mut d = MatrixA::identity(ring, n);
        let mut di = MatrixA::identity(ring, n);
        d.mat.set(i, i, unit);
        di.mat.set(i, i, inv);
        u = u.mul(&d).unwrap();
        ui = di.mul(&ui).unwrap();
    }
    (u, ui)
}

/// Product of elementary and S-diagonal factors: an element of W.
pub fn w_matrix(rng: &mut Rng8, ring: &GroupRing, n: usize, s: &[GroupRingElem]) -> MatrixA {
    let pool = nonzero_pool(ring);
    let mut m = MatrixA::identity(ring, n);
    for _ in 0..rng.gen_range(2..=4) {
        let f = if n >= 2 && rng.gen_bool(0.5) {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            elementary(ring, n, i, j, pick(rng, &pool))
        } else {
            let mut d = MatrixA::identity(ring, n);
            for i in 0..n {
                d.mat.set(i, i, pick(rng, s).clone());
            }
            d
        };
        m = m.mul(&f).unwrap();
    }
    m
}

/// Block-diagonal complex of free cells and two-cell pieces `A --a--> A`,
/// returned with the list of per-degree pieces for building chain maps.
pub fn random_complex(rng: &mut Rng8, ring: &GroupRing, len: usize, max_rank: usize, from: &[GroupRingElem]) -> ChainComplex {
    let mut ranks = vec![0usize; len];
    // entries of each boundary as (row, col, value)
    let mut entries: Vec<Vec<(usize, usize, GroupRingElem)>> = vec![vec![]; len.saturating_sub(1)];
    for _ in 0..rng.gen_range(1..=2 * len) {
        let n = rng.gen_range(0..len);
        if n + 1 < len && rng.gen_bool(0.6) {
            if ranks[n] < max_rank && ranks[n + 1] < max_rank {
                entries[n].push((ranks[n], ranks[n + 1], pick(rng, from).clone()));
                ranks[n] += 1;
                ranks[n + 1] += 1;
            }
        } else if ranks[n] < max_rank {
            ranks[n] += 1;
        }
    }
    let d = (1..len)
        .map(|n| {
            let mut m = MatrixA::zero(ring, ranks[n - 1], ranks[n]);
            for (i, j, v) in &entries[n - 1] {
                m.mat.set(*i, *j, v.clone());
            }
            m
        })
        .collect();
    ChainComplex::new(ring.clone(), ranks, d).expect("block complex")
}

/// Changes of basis `U_n` with inverses, one per degree.
pub type Basis = Vec<(MatrixA, MatrixA)>;

pub fn random_basis(rng: &mut Rng8, c: &ChainComplex) -> Basis {
    (0..c.len()).map(|n| unimodular(rng, &c.ring, c.rank(n), 2)).collect()
}

/// `d′_n = U_(n-1) d_n U_n⁻¹`.
pub fn conjugate(c: &ChainComplex, b: &Basis) -> ChainComplex {
    let d = (1..c.len()).map(|n| b[n - 1].0.mul(&c.boundary(n)).unwrap().mul(&b[n].1).unwrap()).collect();
    ChainComplex::new(c.ring.clone(), c.ranks.clone(), d).unwrap()
}

/// `f′_n = U′_n f_n U_n⁻¹` between conjugated complexes.
pub fn conjugate_map(f: &ChainMap, bs: &Basis, bt: &Basis) -> Result<ChainMap> {
    let len = f.source.len().max(f.target.len());
    let comps = (0..len)
        .map(|n| {
            let fn_ = f.comp(n);
            let left = bt.get(n).map(|x| x.0.clone()).unwrap_or_else(|| MatrixA::identity(&f.source.ring, 0));
            let right = bs.get(n).map(|x| x.1.clone()).unwrap_or_else(|| MatrixA::identity(&f.source.ring, 0));
            left.mul(&fn_)?.mul(&right)
        })
        .collect::<Result<Vec<_>>>()?;
    ChainMap::new(conjugate(&f.source, bs), conjugate(&f.target, bt), comps)
}

/// Adds the null-homotopic term `d′h + hd` for a random `h: C_n → C′_(n+1)`.
pub fn perturb(rng: &mut Rng8, f: &ChainMap, from: &[GroupRingElem]) -> Result<ChainMap> {
    let ring = &f.source.ring;
    let len = f.source.len().max(f.target.len());
    let h: Vec<MatrixA> = (0..len).map(|n| random_matrix(rng, ring, f.target.rank(n + 1), f.source.rank(n), from)).collect();
    let comps = (0..len)
        .map(|n| {
            let mut m = f.comp(n).add(&f.target.boundary(n + 1).mul(&h[n])?)?;
            if n > 0 {
                m = m.add(&h[n - 1].mul(&f.source.boundary(n))?)?;
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    ChainMap::new(f.source.clone(), f.target.clone(), comps)
}

/// `C ⊕ D` with the inclusion of C and the projection onto C.
pub fn inclusion_projection(c: &ChainComplex, d: &ChainComplex) -> Result<(ChainMap, ChainMap)> {
    let len = c.len().max(d.len());
    let cd = c.padded(len).direct_sum(&d.padded(len))?;
    let ring = &c.ring;
    let incl = (0..len)
        .map(|n| MatrixA::identity(ring, c.rank(n)).vstack(&MatrixA::zero(ring, d.rank(n), c.rank(n))))
        .collect::<Result<Vec<_>>>()?;
    let proj = (0..len)
        .map(|n| MatrixA::identity(ring, c.rank(n)).hstack(&MatrixA::zero(ring, c.rank(n), d.rank(n))))
        .collect::<Result<Vec<_>>>()?;
    Ok((
        ChainMap::new(c.padded(len), cd.clone(), incl)?,
        ChainMap::new(cd, c.padded(len), proj)?,
    ))
}

/// Multiplication by a central element.
pub fn scalar_map(c: &ChainComplex, a: &GroupRingElem) -> Result<ChainMap> {
    let comps = (0..c.len()).map(|n| MatrixA::scalar_diag(&c.ring, a, c.rank(n))).collect();
    ChainMap::new(c.clone(), c.clone(), comps)
}
