//! Finitely presented modules, their localization M ⊗_A Λ, locality tests
//! against finite W-families, and the finite-subset factorization.
//!
//! Modules are cokernels of presentation matrices acting on row vectors:
//! `M = A^k / (rows of P)`.

use crate::cancel::CancelToken;
use crate::cohn::{DenomSet, Frac, Lambda, MatrixFrac};
use crate::error::{Error, Result};
use crate::group::GroupKind;
use crate::groupring::{GroupRing, GroupRingElem, RingMap};
use crate::laurent::LaurentPid;
use crate::ring::{self, Euclidean, Mat, Ring, ScalarPid};
use crate::scalar::Scalar;
use crate::smith::smith;
use crate::wclass::{w_membership, MatrixA, MatrixR};

#[derive(Debug, Clone, PartialEq)]
pub struct FPModule {
    pub pres: MatrixA,
}

impl FPModule {
    pub fn new(pres: MatrixA) -> Self {
        FPModule { pres }
    }

    pub fn free(ring: &GroupRing, k: usize) -> Self {
        FPModule { pres: MatrixA::zero(ring, 0, k) }
    }

    pub fn ring(&self) -> &GroupRing {
        &self.pres.ring
    }

    pub fn gens(&self) -> usize {
        self.pres.cols()
    }

    pub fn relations(&self) -> usize {
        self.pres.rows()
    }

    /// Direct sum of `n` copies.
    pub fn power(&self, n: usize) -> FPModule {
        let mut p = MatrixA::zero(self.ring(), 0, 0);
        for _ in 0..n {
            p = p.block_diag(&self.pres).expect("same ring");
        }
        FPModule { pres: p }
    }
}

/// Engines for the configurations where module questions are decidable by
/// Smith normal form.
#[derive(Debug, Clone)]
pub enum Engine {
    /// ℤ or a field (trivial G).
    Scalar(ScalarPid),
    /// k[t, t⁻¹] with k a field.
    Laurent(LaurentPid),
    /// k[G] for finite G, flattened to k-linear algebra through the regular
    /// representation.
    Linear(ScalarPid, GroupRing),
}

impl Engine {
    /// Engine for `ring`, localized at `local` when given.
    pub fn new(ring: &GroupRing, local: Option<&RingMap>) -> Result<Engine> {
        if let Some(m) = local {
            if m.source() != ring {
                return Err(Error::RingMismatch(format!("map from {} used on {}", m.source(), ring)));
            }
        }
        match ring.group().kind() {
            GroupKind::Trivial => Ok(Engine::Scalar(ScalarPid {
                coeff: ring.coeff(),
                local_target: local.map(|m| m.target()),
            })),
            GroupKind::FreeAbelian { rank: 1 } if ring.coeff().is_field() => {
                let pid = LaurentPid::new(ring.coeff(), &ring.group().generators()[0])?;
                Ok(Engine::Laurent(match local {
                    Some(m) => pid.localized(m.values()[0].clone()),
                    None => pid,
                }))
            }
            GroupKind::Finite(_) if local.is_none() => {
                Ok(Engine::Linear(ScalarPid::new(ring.coeff()), ring.clone()))
            }
            _ => Err(Error::Unsupported(format!(
                "{} is not a Euclidean configuration{}",
                ring.header(),
                if local.is_some() { " for localized computations" } else { "" }
            ))),
        }
    }

    pub fn is_euclidean(ring: &GroupRing) -> bool {
        Engine::new(ring, None).is_ok() && !matches!(ring.group().kind(), GroupKind::Finite(_))
    }
}

/// Conversion between group-ring matrices and engine matrices.
trait Lift: Euclidean {
    fn lift(&self, m: &MatrixA) -> Result<Mat<Self::Elem>>;
    fn lower(&self, ring: &GroupRing, e: &Self::Elem) -> GroupRingElem;
}

impl Lift for ScalarPid {
    fn lift(&self, m: &MatrixA) -> Result<Mat<Scalar>> {
        m.mat.try_map(|e| {
            e.as_constant().ok_or_else(|| Error::RingMismatch(format!("{e} is not a constant")))
        })
    }

    fn lower(&self, ring: &GroupRing, e: &Scalar) -> GroupRingElem {
        ring.scalar(e.clone())
    }
}

impl Lift for LaurentPid {
    fn lift(&self, m: &MatrixA) -> Result<Mat<crate::laurent::Laurent>> {
        m.mat.try_map(|e| self.from_elem(e))
    }

    fn lower(&self, ring: &GroupRing, e: &crate::laurent::Laurent) -> GroupRingElem {
        self.to_elem(ring, e)
    }
}

/// Regular representation: `e_g · a = Σ c_h e_(gh)`, blockwise over the matrix.
fn linearize(ring: &GroupRing, m: &MatrixA) -> Mat<Scalar> {
    let elems = ring.group().elements().expect("finite group");
    let n = elems.len();
    let idx = |g: &crate::group::GElt| g.0[0] as usize;
    let mut out = Mat::from_fn(m.rows() * n, m.cols() * n, |_, _| Scalar::from_integer(0.into()));
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            for (h, c) in m.get(i, j).terms() {
                for g in &elems {
                    let gh = ring.group().mul(g, h);
                    let (r, col) = (i * n + idx(g), j * n + idx(&gh));
                    let v = ring.coeff().add(out.get(r, col), c);
                    out.set(r, col, v);
                }
            }
        }
    }
    out
}

impl Engine {
    fn lift_scalar(&self, m: &MatrixA) -> Result<Mat<Scalar>> {
        match self {
            Engine::Scalar(r) => r.lift(m),
            Engine::Linear(_, ring) => Ok(linearize(ring, m)),
            Engine::Laurent(_) => unreachable!(),
        }
    }
}

fn row_member<R: Euclidean>(r: &R, p: &Mat<R::Elem>, x: &[R::Elem], cancel: Option<&CancelToken>) -> Result<bool> {
    let s = smith(r, p, cancel)?;
    let z = ring::mat_mul(r, &Mat { rows: 1, cols: x.len(), data: x.to_vec() }, &s.v)?;
    for (j, zj) in z.data.iter().enumerate() {
        if j < s.rank {
            let n = r.strip(&s.diag[j]);
            if !r.divides(&n, zj) {
                return Ok(false);
            }
        } else if !r.is_zero(zj) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `row` lies in the A-row space of `p` (Euclidean or finite-group
/// configurations).
pub fn in_row_space(p: &MatrixA, row: &[GroupRingElem]) -> Result<bool> {
    let eng = Engine::new(&p.ring, None)?;
    let x = MatrixA::from_rows(&p.ring, vec![row.to_vec()], p.cols())?;
    match &eng {
        Engine::Scalar(r) | Engine::Linear(r, _) => {
            let lx = eng.lift_scalar(&x)?;
            // the linearized row of the identity element stands for x itself
            let id = match p.ring.group().identity().0.first() {
                Some(&i) if matches!(eng, Engine::Linear(..)) => i as usize,
                _ => 0,
            };
            row_member(r, &eng.lift_scalar(p)?, lx.row(id), None)
        }
        Engine::Laurent(r) => row_member(r, &r.lift(p)?, &r.lift(&x)?.data, None),
    }
}

/// Bijectivity of `coker P1 → coker P2, x ↦ xΦ` (the map must be well defined).
fn presented_map<R: Euclidean>(
    r: &R,
    p1: &Mat<R::Elem>,
    p2: &Mat<R::Elem>,
    phi: &Mat<R::Elem>,
    cancel: Option<&CancelToken>,
) -> Result<(bool, bool)> {
    let n1 = phi.rows;
    let n2 = phi.cols;
    let b = phi.vstack(p2)?;
    let s = smith(r, &b, cancel)?;
    let surjective = s.rank == n2 && s.diag[..s.rank].iter().all(|d| r.is_local_unit(d));
    let mut injective = true;
    for i in s.rank..b.rows {
        let x: Vec<R::Elem> = s.u.row(i)[..n1].to_vec();
        if x.iter().all(|e| r.is_zero(e)) {
            continue;
        }
        if !row_member(r, p1, &x, cancel)? {
            injective = false;
            break;
        }
    }
    Ok((surjective, injective))
}

fn invariant_factors<R: Lift>(r: &R, ring: &GroupRing, p: &MatrixA, cancel: Option<&CancelToken>) -> Result<(Vec<GroupRingElem>, usize)> {
    let m = r.lift(p)?;
    let s = smith(r, &m, cancel)?;
    let factors = s.diag[..s.rank]
        .iter()
        .map(|d| r.normalize(&r.strip(d)))
        .filter(|d| !r.is_unit(d))
        .map(|d| r.lower(ring, &d))
        .collect();
    Ok((factors, p.cols() - s.rank))
}

/// Smith normal form `U·P·V = D` over a Euclidean configuration.
pub fn smith_normal_form(p: &MatrixA, cancel: Option<&CancelToken>) -> Result<(MatrixA, MatrixA, MatrixA)> {
    let ring = &p.ring;
    if !Engine::is_euclidean(ring) {
        return Err(Error::Unsupported(format!("{} is not Euclidean", ring.header())));
    }
    fn run<R: Lift>(r: &R, p: &MatrixA, cancel: Option<&CancelToken>) -> Result<(MatrixA, MatrixA, MatrixA)> {
        let ring = &p.ring;
        let s = smith(r, &r.lift(p)?, cancel)?;
        let low = |m: &Mat<R::Elem>| MatrixA { ring: ring.clone(), mat: m.map(|e| r.lower(ring, e)) };
        let mut d = MatrixA::zero(ring, p.rows(), p.cols());
        for (i, x) in s.diag.iter().enumerate() {
            d.mat.set(i, i, r.lower(ring, x));
        }
        Ok((low(&s.u), d, low(&s.v)))
    }
    match Engine::new(ring, None)? {
        Engine::Scalar(r) => run(&r, p, cancel),
        Engine::Laurent(r) => run(&r, p, cancel),
        Engine::Linear(..) => unreachable!(),
    }
}

/// M ⊗_A Λ, presented by the same matrix read over Λ.
#[derive(Debug, Clone)]
pub struct LocModule {
    pub module: FPModule,
    pub dset: DenomSet,
}

/// A vector of fractions, taken modulo the relations of a [`LocModule`].
#[derive(Debug, Clone)]
pub struct LocModuleElem {
    pub entries: Vec<Frac>,
}

/// Structure of a localized module.
#[derive(Debug, Clone, PartialEq)]
pub struct LocStructure {
    pub rank: usize,
    /// Non-unit localized invariant factors; `None` when the configuration
    /// has no invariant-factor algorithm.
    pub torsion: Option<Vec<GroupRingElem>>,
    pub is_zero: bool,
    /// For non-Euclidean rings: determinant of the lifted left inverse times
    /// the presentation, an element of S proving the module vanishes.
    pub zero_certificate: Option<GroupRingElem>,
}

pub fn module_localize(m: &FPModule, d: &DenomSet) -> Result<LocModule> {
    if m.ring() != d.ring() {
        return Err(Error::RingMismatch(format!("module over {} localized at map from {}", m.ring(), d.ring())));
    }
    Ok(LocModule { module: m.clone(), dset: d.clone() })
}

impl LocModule {
    pub fn ring(&self) -> &GroupRing {
        self.module.ring()
    }

    pub fn lambda(&self) -> Lambda {
        self.dset.lambda()
    }

    pub fn elem(&self, entries: Vec<Frac>) -> Result<LocModuleElem> {
        if entries.len() != self.module.gens() {
            return Err(Error::Dimension(format!("expected {} entries, got {}", self.module.gens(), entries.len())));
        }
        Ok(LocModuleElem { entries })
    }

    /// Class of the i-th generator.
    pub fn generator(&self, i: usize) -> LocModuleElem {
        let l = self.lambda();
        LocModuleElem {
            entries: (0..self.module.gens()).map(|j| if i == j { l.one() } else { l.zero() }).collect(),
        }
    }

    fn engine(&self) -> Result<Engine> {
        Engine::new(self.ring(), Some(self.dset.map()))
    }

    /// Clears denominators: returns `s·v` as an A-vector together with `s ∈ S`.
    fn integral(&self, v: &[Frac]) -> (Vec<GroupRingElem>, GroupRingElem) {
        clear_denominators(self.ring(), v.iter())
    }

    /// Equality of two classes in M ⊗ Λ.
    pub fn elem_eq(&self, v: &LocModuleElem, w: &LocModuleElem) -> Result<bool> {
        let l = self.lambda();
        let diff: Vec<Frac> = v.entries.iter().zip(&w.entries).map(|(a, b)| l.sub(a, b)).collect();
        self.contains(&diff)
    }

    /// Whether the vector of fractions lies in the Λ-row space of P.
    pub fn contains(&self, v: &[Frac]) -> Result<bool> {
        let (x, _) = self.integral(v);
        let eng = self.engine()?;
        let row = MatrixA::from_rows(self.ring(), vec![x], v.len())?;
        match &eng {
            Engine::Scalar(r) => row_member(r, &r.lift(&self.module.pres)?, &r.lift(&row)?.data, None),
            Engine::Laurent(r) => row_member(r, &r.lift(&self.module.pres)?, &r.lift(&row)?.data, None),
            Engine::Linear(..) => unreachable!(),
        }
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.structure(None)?.is_zero)
    }

    /// Λ-rank, localized invariant factors, and vanishing.
    pub fn structure(&self, cancel: Option<&CancelToken>) -> Result<LocStructure> {
        let ring = self.ring();
        if let Ok(eng) = self.engine() {
            let (torsion, rank) = match &eng {
                Engine::Scalar(r) => invariant_factors(r, ring, &self.module.pres, cancel)?,
                Engine::Laurent(r) => invariant_factors(r, ring, &self.module.pres, cancel)?,
                Engine::Linear(..) => unreachable!(),
            };
            let is_zero = rank == 0 && torsion.is_empty();
            return Ok(LocStructure { rank, torsion: Some(torsion), is_zero, zero_certificate: None });
        }
        let rank = self.module.gens() - domain_rank(&self.module.pres, cancel)?;
        if rank > 0 {
            return Ok(LocStructure { rank, torsion: None, is_zero: false, zero_certificate: None });
        }
        let cert = self.zero_certificate()?;
        Ok(LocStructure { rank, torsion: None, is_zero: cert.is_some(), zero_certificate: cert })
    }

    /// M ⊗ Λ = 0 exactly when M ⊗ R = 0. When the image presentation has a
    /// left inverse Q over R, lifting Q to A gives `det(Q·P) ∈ S`, which is
    /// returned after being checked.
    fn zero_certificate(&self) -> Result<Option<GroupRingElem>> {
        let map = self.dset.map();
        let ring = self.ring();
        let target = map.target();
        let k = self.module.gens();
        let image = crate::wclass::mat_image(&self.module.pres, map)?;
        let pid = ScalarPid::new(target);
        let s = smith(&pid, &image.mat, None)?;
        if s.rank != k || !s.diag[..k].iter().all(|d| pid.is_unit(d)) {
            return Ok(None);
        }
        // Q = V · diag(d)^-1 · (first k rows of U)
        let mut q = Mat::from_fn(k, image.mat.rows, |i, j| s.u.get(i, j).clone());
        for i in 0..k {
            let inv = pid.unit_inv(&s.diag[i]).unwrap();
            for j in 0..q.cols {
                let v = pid.mul(&inv, q.get(i, j));
                q.set(i, j, v);
            }
        }
        let q = ring::mat_mul(&pid, &s.v, &q)?;
        debug_assert!(ring::mat_eq(&pid, &ring::mat_mul(&pid, &q, &image.mat)?, &ring::identity(&pid, k)));
        // lift to A: integer representatives, denominators cleared for ℚ
        let lcm = q.data.iter().fold(num_bigint::BigInt::from(1), |acc, x| {
            num_integer::Integer::lcm(&acc, x.denom())
        });
        let scale = Scalar::from_integer(lcm);
        let qa = MatrixA {
            ring: ring.clone(),
            mat: q.try_map(|x| Ok(ring.scalar(ring.coeff().coerce(&(x * &scale))?)))?,
        };
        let det = qa.mul(&self.module.pres)?.det()?;
        if !self.dset.contains(&det)? {
            return Err(Error::Precondition("vanishing certificate failed to verify".into()));
        }
        Ok(Some(det))
    }
}

/// Rank over the fraction field of a commutative domain, by fraction-free
/// elimination.
pub fn domain_rank(p: &MatrixA, cancel: Option<&CancelToken>) -> Result<usize> {
    let r = &p.ring;
    if !r.is_domain() {
        return Err(Error::Unsupported(format!("{} is not a domain", r.header())));
    }
    let mut a = p.mat.clone();
    let mut rank = 0;
    for col in 0..a.cols {
        crate::cancel::check(cancel)?;
        let Some(pr) = (rank..a.rows).find(|&i| !a.get(i, col).is_zero()) else { continue };
        a.swap_rows(pr, rank);
        let piv = a.get(rank, col).clone();
        for i in rank + 1..a.rows {
            let f = a.get(i, col).clone();
            if f.is_zero() {
                continue;
            }
            for j in col..a.cols {
                let v = r.sub(&r.mul(&piv, a.get(i, j)), &r.mul(&f, a.get(rank, j)));
                a.set(i, j, v);
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// A finite family of test matrices, each checked to lie in W(A, R).
#[derive(Debug, Clone)]
pub struct WFamily {
    pub map: RingMap,
    pub members: Vec<MatrixA>,
}

impl WFamily {
    pub fn new(map: RingMap, members: Vec<MatrixA>) -> Result<Self> {
        for (i, a) in members.iter().enumerate() {
            let w = w_membership(a, &map)?;
            if !w.verdict {
                return Err(Error::Precondition(format!(
                    "family member {i} is not in W: {}",
                    w.reason.map(|r| r.to_string()).unwrap_or_default()
                )));
            }
        }
        Ok(WFamily { map, members })
    }
}

/// Per-member outcome of a locality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityVerdict {
    pub surjective: bool,
    pub injective: bool,
}

impl LocalityVerdict {
    pub fn bijective(&self) -> bool {
        self.surjective && self.injective
    }
}

/// `Φ = αᵀ ⊗ I_n` in block form: the map `M^k' → M^k, (m_j) ↦ (Σ_j α_ij m_j)`.
fn hom_matrix(alpha: &MatrixA, n: usize) -> MatrixA {
    let ring = &alpha.ring;
    let (k, kp) = (alpha.rows(), alpha.cols());
    let mat = Mat::from_fn(kp * n, k * n, |r, c| {
        let (j, a) = (r / n, r % n);
        let (i, b) = (c / n, c % n);
        if a == b { alpha.get(i, j).clone() } else { ring.zero() }
    });
    MatrixA { ring: ring.clone(), mat }
}

fn locality_with(eng: &Engine, m: &FPModule, family: &WFamily, cancel: Option<&CancelToken>) -> Result<Vec<LocalityVerdict>> {
    let mut out = Vec::new();
    for alpha in &family.members {
        if alpha.ring != *m.ring() {
            return Err(Error::RingMismatch(format!("family over {} but module over {}", alpha.ring, m.ring())));
        }
        let p1 = m.power(alpha.cols()).pres;
        let p2 = m.power(alpha.rows()).pres;
        let phi = hom_matrix(alpha, m.gens());
        let (surjective, injective) = match eng {
            Engine::Scalar(r) | Engine::Linear(r, _) => {
                presented_map(r, &eng.lift_scalar(&p1)?, &eng.lift_scalar(&p2)?, &eng.lift_scalar(&phi)?, cancel)?
            }
            Engine::Laurent(r) => presented_map(r, &r.lift(&p1)?, &r.lift(&p2)?, &r.lift(&phi)?, cancel)?,
        };
        out.push(LocalityVerdict { surjective, injective });
    }
    Ok(out)
}

/// Whether `Hom(F', M) → Hom(F, M)` is bijective for every α in the family.
pub fn locality_test(m: &FPModule, family: &WFamily) -> Result<Vec<LocalityVerdict>> {
    let eng = Engine::new(m.ring(), None)?;
    locality_with(&eng, m, family, None)
}

impl LocModule {
    /// Locality of M ⊗ Λ, viewed as an A-module.
    pub fn locality_test(&self, family: &WFamily) -> Result<Vec<LocalityVerdict>> {
        locality_with(&self.engine()?, &self.module, family, None)
    }
}

/// Outcome of [`factor_finite_subset`]: `α: F → F'` in W, `β: F → M` the
/// generator map, `γ: F' → L(M)`, with `i∘β = γ∘α` and every target element
/// equal to γ of its listed preimage.
#[derive(Debug, Clone)]
pub struct FactorizationDiagram {
    pub alpha: MatrixA,
    pub beta: MatrixA,
    pub gamma: MatrixFrac,
    pub denominator: GroupRingElem,
    pub preimages: Vec<Vec<GroupRingElem>>,
}

/// Product of the distinct denominators `s`, and each numerator multiplied
/// by `s / den`.
fn clear_denominators<'a>(ring: &GroupRing, fracs: impl Iterator<Item = &'a Frac> + Clone) -> (Vec<GroupRingElem>, GroupRingElem) {
    let mut dens: Vec<&GroupRingElem> = Vec::new();
    for f in fracs.clone() {
        if !dens.contains(&f.den()) {
            dens.push(f.den());
        }
    }
    let s = dens.iter().fold(ring.one(), |acc, d| ring.mul(&acc, d));
    let x = fracs
        .map(|f| dens.iter().filter(|d| **d != f.den()).fold(f.num().clone(), |acc, d| ring.mul(&acc, d)))
        .collect();
    (x, s)
}

pub fn factor_finite_subset(m: &LocModule, xs: &[LocModuleElem]) -> Result<FactorizationDiagram> {
    let ring = m.ring();
    let k = m.module.gens();
    let l = m.lambda();
    for x in xs {
        if x.entries.len() != k {
            return Err(Error::Dimension(format!("element has {} entries, module has {k} generators", x.entries.len())));
        }
    }
    let all = xs.iter().flat_map(|x| x.entries.iter());
    let (flat, s) = clear_denominators(ring, all);
    let preimages = flat.chunks(k.max(1)).take(xs.len()).map(|c| c.to_vec()).collect();
    let preimages = if k == 0 { vec![vec![]; xs.len()] } else { preimages };
    let alpha = MatrixA::scalar_diag(ring, &s, k);
    let beta = MatrixA::identity(ring, k);
    let inv_s = m.dset.frac(ring.one(), s.clone())?;
    let gamma = MatrixFrac {
        lambda: l.clone(),
        mat: ring::mat_scale(&l, &inv_s, &ring::identity(&l, k)),
    };
    Ok(FactorizationDiagram { alpha, beta, gamma, denominator: s, preimages })
}

impl FactorizationDiagram {
    /// Re-checks α ∈ W, `i∘β = γ∘α` entrywise, and coverage.
    pub fn verify(&self, m: &LocModule, xs: &[LocModuleElem]) -> Result<bool> {
        let l = m.lambda();
        if !w_membership(&self.alpha, m.dset.map())?.verdict {
            return Ok(false);
        }
        let ga = MatrixFrac::from_a(&self.alpha, &m.dset).mul(&self.gamma)?;
        let ib = MatrixFrac::from_a(&self.beta, &m.dset);
        if !ring::mat_eq(&l, &ga.mat, &ib.mat) {
            return Ok(false);
        }
        for (x, pre) in xs.iter().zip(&self.preimages) {
            let row = MatrixFrac {
                lambda: l.clone(),
                mat: Mat { rows: 1, cols: pre.len(), data: pre.iter().map(|e| m.dset.from_elem(e.clone())).collect() },
            };
            let img = row.mul(&self.gamma)?;
            if !img.mat.data.iter().zip(&x.entries).all(|(a, b)| l.eq_elem(a, b)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Image of the presentation over R, and its Smith form when R is ℤ or a field.
pub fn presentation_over_r(m: &FPModule, map: &RingMap) -> Result<(MatrixR, Vec<Scalar>, usize)> {
    let image = crate::wclass::mat_image(&m.pres, map)?;
    let pid = ScalarPid::new(map.target());
    let s = smith(&pid, &image.mat, None)?;
    let factors = s.diag[..s.rank].iter().map(|d| pid.normalize(d)).filter(|d| !pid.is_unit(d)).collect();
    Ok((image, factors, m.gens() - s.rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_elem, parse_frac};
    use crate::scalar::CoeffRing;

    fn qt() -> GroupRing {
        GroupRing::parse_header("Q[t]").unwrap()
    }

    fn mat(r: &GroupRing, rows: &[&[&str]], cols: usize) -> MatrixA {
        MatrixA::from_rows(r, rows.iter().map(|row| row.iter().map(|s| parse_elem(r, s, 0).unwrap()).collect()).collect(), cols)
            .unwrap()
    }

    fn dset(r: &GroupRing, target: CoeffRing) -> DenomSet {
        DenomSet::new(RingMap::augmentation(r.clone(), target).unwrap()).unwrap()
    }

    fn fr(d: &DenomSet, s: &str) -> Frac {
        d.from_raw(parse_frac(d.ring(), s, 0).unwrap()).unwrap()
    }

    #[test]
    fn localization_examples() {
        let r = qt();
        let d = dset(&r, CoeffRing::Q);
        let m = module_localize(&FPModule::new(mat(&r, &[&["2t-1"]], 1)), &d).unwrap();
        assert!(m.is_zero().unwrap());
        let m = module_localize(&FPModule::new(mat(&r, &[&["t-1"]], 1)), &d).unwrap();
        let st = m.structure(None).unwrap();
        assert_eq!(st.torsion.unwrap()[0].to_string(), "t - 1");
        let m = module_localize(&FPModule::free(&r, 3), &d).unwrap();
        assert_eq!(m.structure(None).unwrap().rank, 3);
    }

    #[test]
    fn smith_examples() {
        let r = qt();
        let (u, dd, v) = smith_normal_form(&mat(&r, &[&["t-1", "0"], &["0", "2"]], 2), None).unwrap();
        assert_eq!(dd.get(0, 0).to_string(), "1");
        assert_eq!(dd.get(1, 1).to_string(), "t - 1");
        assert_eq!(u.mul(&mat(&r, &[&["t-1", "0"], &["0", "2"]], 2)).unwrap().mul(&v).unwrap(), dd);
        let z = GroupRing::parse_header("Z").unwrap();
        let (_, dd, _) = smith_normal_form(&mat(&z, &[&["6", "4"]], 2), None).unwrap();
        assert_eq!(dd.row_strings(), vec!["2, 0"]);
        let zt = GroupRing::parse_header("Z[t]").unwrap();
        assert!(smith_normal_form(&mat(&zt, &[&["t"]], 1), None).is_err());
    }

    #[test]
    fn element_equality() {
        let r = qt();
        let d = dset(&r, CoeffRing::Q);
        let m = module_localize(&FPModule::new(mat(&r, &[&["t-1"]], 1)), &d).unwrap();
        let one = m.elem(vec![fr(&d, "1")]).unwrap();
        let t = m.elem(vec![fr(&d, "t")]).unwrap();
        let zero = m.elem(vec![fr(&d, "0")]).unwrap();
        assert!(m.elem_eq(&one, &t).unwrap());
        assert!(!m.elem_eq(&one, &zero).unwrap());
        assert!(m.elem_eq(&one, &one).unwrap());
        let half = m.elem(vec![fr(&d, "(t-1)/(2t-1)")]).unwrap();
        assert!(m.elem_eq(&half, &zero).unwrap());
    }

    #[test]
    fn locality_examples() {
        let r = qt();
        let d = dset(&r, CoeffRing::Q);
        let fam = WFamily::new(d.map().clone(), vec![mat(&r, &[&["2t-1"]], 1)]).unwrap();
        let lam = module_localize(&FPModule::free(&r, 1), &d).unwrap();
        assert!(lam.locality_test(&fam).unwrap()[0].bijective());
        let v = locality_test(&FPModule::free(&r, 1), &fam).unwrap();
        assert!(v[0].injective && !v[0].surjective);
        let zero = FPModule::new(MatrixA::zero(&r, 0, 0));
        assert!(locality_test(&zero, &fam).unwrap()[0].bijective());
        assert!(WFamily::new(d.map().clone(), vec![mat(&r, &[&["t-1"]], 1)]).is_err());
    }

    #[test]
    fn factorization_examples() {
        let r = qt();
        let d = dset(&r, CoeffRing::Q);
        let m = module_localize(&FPModule::free(&r, 1), &d).unwrap();
        let xs = vec![m.elem(vec![fr(&d, "1/(2t-1)")]).unwrap()];
        let f = factor_finite_subset(&m, &xs).unwrap();
        assert_eq!(f.alpha.to_string(), "[2*t - 1]");
        assert_eq!(f.preimages[0][0].to_string(), "1");
        assert!(f.verify(&m, &xs).unwrap());
        let f = factor_finite_subset(&m, &[]).unwrap();
        assert_eq!(f.alpha, MatrixA::identity(&r, 1));
    }

    #[test]
    fn non_euclidean_vanishing() {
        let r = GroupRing::parse_header("Z[t]").unwrap();
        let d = dset(&r, CoeffRing::Z);
        let m = module_localize(&FPModule::new(mat(&r, &[&["t-2"]], 1)), &d).unwrap();
        let st = m.structure(None).unwrap();
        assert!(st.is_zero);
        assert!(st.zero_certificate.is_some());
        let m = module_localize(&FPModule::new(mat(&r, &[&["t-1"]], 1)), &d).unwrap();
        assert!(!m.structure(None).unwrap().is_zero);
        let m = module_localize(&FPModule::new(mat(&r, &[&["2t"], &["3t^2"]], 1)), &d).unwrap();
        assert!(m.structure(None).unwrap().is_zero);
    }

    #[test]
    fn finite_group_linearization() {
        let r = GroupRing::parse_header("Q[C2:g]").unwrap();
        let map = RingMap::parse_spec(r.clone(), CoeffRing::Q, "g=-1").unwrap();
        // 1 - g maps to 2 under g = -1
        let fam = WFamily::new(map, vec![mat(&r, &[&["1-g"]], 1)]).unwrap();
        // M = Q[C2]/(1+g) ≅ Q with g = -1: multiplication by 1-g is 2, bijective
        let v = locality_test(&FPModule::new(mat(&r, &[&["1+g"]], 1)), &fam).unwrap();
        assert!(v[0].bijective());
        // M = Q[C2]: 1-g is a zero divisor
        let v = locality_test(&FPModule::free(&r, 1), &fam).unwrap();
        assert!(!v[0].bijective());
    }
}
