//! Finite connective chain complexes of free A-modules: homology with
//! coefficients in R, the class W∗ of chain maps that are R-homology
//! isomorphisms, degree windows, one attachment step, and homology after
//! localization.
//!
//! Boundaries act on column vectors: `d_n` is an `r_(n-1) × r_n` matrix.

use std::fmt;

use crate::cohn::DenomSet;
use crate::error::{Error, Result};
use crate::groupring::{GroupRing, GroupRingElem, RingMap};
use crate::modloc::{domain_rank, module_localize, smith_normal_form, FPModule};
use crate::ring::{Euclidean, Ring, ScalarPid};
use crate::scalar::{fmt_scalar, CoeffRing, Scalar};
use crate::smith::smith;
use crate::wclass::{mat_image, MatrixA};

#[derive(Debug, Clone, PartialEq)]
pub struct ChainComplex {
    pub ring: GroupRing,
    /// `r_0 .. r_N`.
    pub ranks: Vec<usize>,
    /// `d[n-1]` is `d_n : C_n → C_(n-1)` for `1 ≤ n ≤ N`.
    pub d: Vec<MatrixA>,
}

impl ChainComplex {
    /// Checks shapes and `d_n ∘ d_(n+1) = 0` exactly.
    pub fn new(ring: GroupRing, ranks: Vec<usize>, d: Vec<MatrixA>) -> Result<Self> {
        if d.len() + 1 != ranks.len().max(1) {
            return Err(Error::Dimension(format!("{} ranks need {} boundaries", ranks.len(), ranks.len().saturating_sub(1))));
        }
        for (i, m) in d.iter().enumerate() {
            if m.ring != ring {
                return Err(Error::RingMismatch(format!("boundary d_{} is over {}", i + 1, m.ring)));
            }
            if m.rows() != ranks[i] || m.cols() != ranks[i + 1] {
                return Err(Error::Dimension(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    i + 1,
                    m.rows(),
                    m.cols(),
                    ranks[i],
                    ranks[i + 1]
                )));
            }
        }
        for i in 1..d.len() {
            if !d[i - 1].mul(&d[i])?.is_zero() {
                return Err(Error::Precondition(format!("d_{} d_{} is not zero", i, i + 1)));
            }
        }
        Ok(ChainComplex { ring, ranks, d })
    }

    pub fn zero(ring: &GroupRing) -> Self {
        ChainComplex { ring: ring.clone(), ranks: vec![], d: vec![] }
    }

    /// Index of the top degree plus one.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `d_n` for any `n`, zero outside the stored range.
    pub fn boundary(&self, n: usize) -> MatrixA {
        if n >= 1 && n < self.ranks.len() {
            self.d[n - 1].clone()
        } else {
            MatrixA::zero(&self.ring, if n == 0 { 0 } else { self.rank(n - 1) }, self.rank(n))
        }
    }

    /// Same complex with zero modules appended up to length `len`.
    pub fn padded(&self, len: usize) -> ChainComplex {
        let mut ranks = self.ranks.clone();
        ranks.resize(len.max(ranks.len()), 0);
        let d = (1..ranks.len())
            .map(|n| if n < self.ranks.len() { self.d[n - 1].clone() } else { MatrixA::zero(&self.ring, ranks[n - 1], ranks[n]) })
            .collect();
        ChainComplex { ring: self.ring.clone(), ranks, d }
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        let len = self.len().max(other.len());
        let (a, b) = (self.padded(len), other.padded(len));
        let ranks = (0..len).map(|n| a.rank(n) + b.rank(n)).collect();
        let d = (1..len).map(|n| a.boundary(n).block_diag(&b.boundary(n))).collect::<Result<Vec<_>>>()?;
        ChainComplex::new(self.ring.clone(), ranks, d)
    }

    pub fn change_coeff(&self, coeff: CoeffRing) -> Result<ChainComplex> {
        let d = self.d.iter().map(|m| m.change_coeff(coeff)).collect::<Result<Vec<_>>>()?;
        ChainComplex::new(self.ring.with_coeff(coeff), self.ranks.clone(), d)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    /// `f_n : C_n → C′_n` as an `r′_n × r_n` matrix.
    pub comps: Vec<MatrixA>,
}

impl ChainMap {
    /// Checks shapes and `d′_n f_n = f_(n-1) d_n` exactly.
    pub fn new(source: ChainComplex, target: ChainComplex, comps: Vec<MatrixA>) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch("chain map between complexes over different rings".into()));
        }
        let len = source.len().max(target.len());
        let mut comps = comps;
        if comps.len() > len {
            return Err(Error::Dimension("more components than degrees".into()));
        }
        for n in comps.len()..len {
            comps.push(MatrixA::zero(&source.ring, target.rank(n), source.rank(n)));
        }
        for (n, f) in comps.iter().enumerate() {
            if f.rows() != target.rank(n) || f.cols() != source.rank(n) {
                return Err(Error::Dimension(format!("f_{n} has the wrong shape")));
            }
        }
        for n in 1..len {
            let lhs = target.boundary(n).mul(&comps[n])?;
            let rhs = comps[n - 1].mul(&source.boundary(n))?;
            if lhs != rhs && !lhs.add(&rhs.neg())?.is_zero() {
                return Err(Error::Precondition(format!("chain map does not commute with d_{n}")));
            }
        }
        Ok(ChainMap { source, target, comps })
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        let comps = c.ranks.iter().map(|&r| MatrixA::identity(&c.ring, r)).collect();
        ChainMap { source: c.clone(), target: c.clone(), comps }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Result<ChainMap> {
        ChainMap::new(source.clone(), target.clone(), vec![])
    }

    pub fn comp(&self, n: usize) -> MatrixA {
        self.comps
            .get(n)
            .cloned()
            .unwrap_or_else(|| MatrixA::zero(&self.source.ring, self.target.rank(n), self.source.rank(n)))
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &ChainMap) -> Result<ChainMap> {
        let len = self.source.len().max(after.target.len()).max(self.target.len());
        let comps = (0..len).map(|n| after.comp(n).mul(&self.comp(n))).collect::<Result<Vec<_>>>()?;
        let comps = comps.into_iter().take(self.source.len().max(after.target.len())).collect();
        ChainMap::new(self.source.clone(), after.target.clone(), comps)
    }
}

/// Homology in one degree over R: free rank and non-unit torsion
/// invariant factors (always empty over a field).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHomology {
    pub rank: usize,
    pub torsion: Vec<Scalar>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn format(&self, coeff: CoeffRing) -> String {
        let mut parts = Vec::new();
        let name = coeff.name();
        if self.rank == 1 {
            parts.push(name.clone());
        } else if self.rank > 1 {
            parts.push(format!("{name}^{}", self.rank));
        }
        for t in &self.torsion {
            parts.push(format!("{name}/{}", fmt_scalar(t)));
        }
        if parts.is_empty() { "0".into() } else { parts.join(" + ") }
    }
}

/// Degreewise equality, treating missing degrees as zero.
pub fn homology_eq(a: &[DegreeHomology], b: &[DegreeHomology]) -> bool {
    let zero = DegreeHomology { rank: 0, torsion: vec![] };
    (0..a.len().max(b.len())).all(|n| a.get(n).unwrap_or(&zero) == b.get(n).unwrap_or(&zero))
}

/// Rank and normalized non-unit invariant factors of a matrix over R.
fn scalar_profile(coeff: CoeffRing, m: &crate::ring::Mat<Scalar>) -> Result<(usize, Vec<Scalar>)> {
    let pid = ScalarPid::new(coeff);
    let s = smith(&pid, m, None)?;
    let tors = s.diag[..s.rank].iter().map(|d| pid.normalize(d)).filter(|d| !pid.is_unit(d)).collect();
    Ok((s.rank, tors))
}

/// `H_n(C ⊗ R)` for every degree of C.
pub fn homology_over_r(c: &ChainComplex, map: &RingMap) -> Result<Vec<DegreeHomology>> {
    if map.source() != &c.ring {
        return Err(Error::RingMismatch(format!("complex over {} but map from {}", c.ring, map.source())));
    }
    let coeff = map.target();
    let profiles = (0..=c.len())
        .map(|n| scalar_profile(coeff, &mat_image(&c.boundary(n), map)?.mat))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..c.len())
        .map(|n| DegreeHomology {
            rank: c.rank(n) - profiles[n].0 - profiles[n + 1].0,
            torsion: profiles[n + 1].1.clone(),
        })
        .collect())
}

/// `cone_n = C_(n-1) ⊕ C′_n` with differential `[[-d, 0], [f, d′]]`.
pub fn mapping_cone(f: &ChainMap) -> Result<ChainComplex> {
    let ring = &f.source.ring;
    let len = f.source.len().max(f.target.len()) + 1;
    let sr = |n: usize| if n == 0 { 0 } else { f.source.rank(n - 1) };
    let ranks: Vec<usize> = (0..len).map(|n| sr(n) + f.target.rank(n)).collect();
    let mut d = Vec::new();
    for n in 1..len {
        // cone_n → cone_(n-1): rows C_(n-2) ⊕ C′_(n-1), cols C_(n-1) ⊕ C′_n
        let top_left = if n >= 2 { f.source.boundary(n - 1).neg() } else { MatrixA::zero(ring, 0, sr(n)) };
        let top_right = MatrixA::zero(ring, sr(n - 1), f.target.rank(n));
        let bottom_left = f.comp(n - 1);
        let bottom_right = f.target.boundary(n);
        let top = top_left.hstack(&top_right)?;
        let bottom = bottom_left.hstack(&bottom_right)?;
        d.push(top.vstack(&bottom)?);
    }
    ChainComplex::new(ring.clone(), ranks, d)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConeReport {
    pub homology: Vec<DegreeHomology>,
    pub acyclic: bool,
}

/// `f ∈ W∗` exactly when its mapping cone is acyclic over R.
pub fn wstar_membership(f: &ChainMap, map: &RingMap) -> Result<ConeReport> {
    let homology = homology_over_r(&mapping_cone(f)?, map)?;
    let acyclic = homology.iter().all(DegreeHomology::is_zero);
    Ok(ConeReport { homology, acyclic })
}

fn is_one(e: &GroupRingElem) -> bool {
    e.as_constant().is_some_and(|c| c == Scalar::from_integer(1.into())) && e.terms().len() == 1
}

/// For a matrix whose columns are distinct standard basis vectors, the row
/// position of each column.
pub fn coordinate_positions(m: &MatrixA) -> Option<Vec<usize>> {
    let mut used = vec![false; m.rows()];
    let mut out = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let nz: Vec<usize> = (0..m.rows()).filter(|&i| !m.get(i, j).is_zero()).collect();
        match nz.as_slice() {
            [i] if is_one(m.get(*i, j)) && !used[*i] => {
                used[*i] = true;
                out.push(*i);
            }
            _ => return None,
        }
    }
    Some(out)
}

/// Rank of the cokernel of a split injection `f_n`, or an error when
/// `f_n` is not a split injection (decided only for coordinate inclusions
/// and over Euclidean rings).
fn split_cokernel_rank(f: &MatrixA) -> Result<usize> {
    if coordinate_positions(f).is_some() {
        return Ok(f.rows() - f.cols());
    }
    let (_, d, _) = smith_normal_form(f, None)
        .map_err(|e| e.context("split check needs a coordinate inclusion or a Euclidean ring"))?;
    let diag_units = (0..f.cols()).all(|i| i < f.rows() && d.get(i, i).monomial_inverse().is_some());
    if !diag_units {
        return Err(Error::Precondition("component is not a split injection".into()));
    }
    Ok(f.rows() - f.cols())
}

/// Whether f is a degreewise split injection with cokernel in degrees
/// `p..=q` and f ∈ W∗.
pub fn window_membership(f: &ChainMap, p: usize, q: usize, map: &RingMap) -> Result<bool> {
    let len = f.source.len().max(f.target.len());
    for n in 0..len {
        let r = split_cokernel_rank(&f.comp(n)).map_err(|e| e.context(&format!("degree {n}")))?;
        if r > 0 && (n < p || n > q) {
            return Ok(false);
        }
    }
    Ok(wstar_membership(f, map)?.acyclic)
}

/// One attachment: a coordinate inclusion `K ⊂ L` and a chain map `K → C`.
#[derive(Debug, Clone)]
pub struct Attachment {
    pub incl: ChainMap,
    pub attach: ChainMap,
}

/// Pushout of `C ← K → L` for each attachment, with `P_n = C_n ⊕ (L_n / K_n)`.
/// A cell of L outside K keeps its L-boundary, whose K-part is sent to C
/// through the attaching map.
pub fn estep_pushout(c: &ChainComplex, atts: &[Attachment]) -> Result<ChainComplex> {
    let ring = &c.ring;
    let len = atts.iter().map(|a| a.incl.target.len()).chain([c.len()]).max().unwrap_or(0);
    let mut out = c.padded(len);
    for (k, a) in atts.iter().enumerate() {
        let ctx = format!("attachment {k}");
        if a.attach.target != *c || a.attach.source != a.incl.source {
            return Err(Error::Dimension(format!("{ctx}: attaching map must go from K to C")));
        }
        let l = a.incl.target.padded(len);
        // per degree: positions of K in L and the complement Q
        let mut kpos = Vec::new();
        let mut qpos = Vec::new();
        for n in 0..len {
            let pos = coordinate_positions(&a.incl.comp(n))
                .ok_or_else(|| Error::Precondition(format!("{ctx}: K → L must be a coordinate inclusion in degree {n}")))?;
            qpos.push((0..l.rank(n)).filter(|i| !pos.contains(i)).collect::<Vec<_>>());
            kpos.push(pos);
        }
        let base = out.clone();
        let ranks: Vec<usize> = (0..len).map(|n| base.rank(n) + qpos[n].len()).collect();
        let mut d = Vec::new();
        for n in 1..len {
            let dl = l.boundary(n);
            let dq = dl.submatrix(&qpos[n - 1], &qpos[n]);
            let dk = dl.submatrix(&kpos[n - 1], &qpos[n]);
            // C-part of earlier attachments is the first c.rank rows of base
            let phi = a.attach.comp(n - 1);
            let mut to_c = MatrixA::zero(ring, base.rank(n - 1), c.rank(n - 1));
            for i in 0..c.rank(n - 1) {
                to_c.mat.set(i, i, ring.one());
            }
            let corr = to_c.mul(&phi)?.mul(&dk)?;
            let top = base.boundary(n).hstack(&corr)?;
            let bottom = MatrixA::zero(ring, qpos[n - 1].len(), base.rank(n)).hstack(&dq)?;
            d.push(top.vstack(&bottom)?);
        }
        out = ChainComplex::new(ring.clone(), ranks, d).map_err(|e| e.context(&ctx))?;
    }
    Ok(out)
}

/// Homology of `C ⊗ Λ` in one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct LocDegree {
    pub rank: usize,
    /// Localized non-unit invariant factors of the boundary into this
    /// degree; `None` when the ring has no invariant-factor algorithm.
    pub torsion: Option<Vec<GroupRingElem>>,
}

impl LocDegree {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.as_ref().is_some_and(|t| t.is_empty())
    }
}

impl fmt::Display for LocDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank == 1 {
            parts.push("L".to_string());
        } else if self.rank > 1 {
            parts.push(format!("L^{}", self.rank));
        }
        match &self.torsion {
            Some(t) => parts.extend(t.iter().map(|e| format!("L/({e})"))),
            None => parts.push("torsion unknown".into()),
        }
        if parts.is_empty() { write!(f, "0") } else { write!(f, "{}", parts.join(" + ")) }
    }
}

/// `H_n(C ⊗ Λ)` by flatness: ranks over the fraction field, torsion from the
/// Smith form of `d_(n+1)` with S-factors stripped.
pub fn localized_homology(c: &ChainComplex, d: &DenomSet) -> Result<Vec<LocDegree>> {
    if d.ring() != &c.ring {
        return Err(Error::RingMismatch("complex and localization over different rings".into()));
    }
    let ranks = (0..=c.len()).map(|n| domain_rank(&c.boundary(n), None)).collect::<Result<Vec<_>>>()?;
    (0..c.len())
        .map(|n| {
            // coker of d_(n+1) on columns is the row cokernel of its transpose
            let m = module_localize(&FPModule::new(c.boundary(n + 1).transpose()), d)?;
            let torsion = m.structure(None)?.torsion;
            Ok(LocDegree { rank: c.rank(n) - ranks[n] - ranks[n + 1], torsion })
        })
        .collect()
}

/// A window-(p, q) inclusion `K ⊂ L` split as `K ⊂ K1` (cells in degrees p,
/// p+1) followed by `K1 ⊂ L1` (cells in degrees p+1 and up), where
/// `L1 = L ⊕ (T → Ω)` is L with a contractible pair attached, and
/// explicit maps show `L1 ≃ L`.
#[derive(Debug, Clone)]
pub struct WindowSplit {
    pub first: ChainMap,
    pub second: ChainMap,
    /// `L1 → L`.
    pub proj: ChainMap,
    /// `L → L1`.
    pub incl: ChainMap,
    /// `h_n : L1_n → L1_(n+1)` with `id − incl∘proj = d h + h d`.
    pub homotopy: Vec<MatrixA>,
}

impl WindowSplit {
    /// `proj∘incl = id`, the homotopy identity, and `proj∘second∘first = f`.
    pub fn verify(&self, f: &ChainMap) -> Result<bool> {
        let l = &self.incl.source;
        let l1 = &self.incl.target;
        let ring = &l.ring;
        let pi = self.incl.then(&self.proj)?;
        if (0..l.len()).any(|n| pi.comp(n) != MatrixA::identity(ring, l.rank(n))) {
            return Ok(false);
        }
        let ip = self.proj.then(&self.incl)?;
        let h = |n: usize| {
            self.homotopy.get(n).cloned().unwrap_or_else(|| MatrixA::zero(ring, l1.rank(n + 1), l1.rank(n)))
        };
        for n in 0..l1.len() {
            let lhs = MatrixA::identity(ring, l1.rank(n)).add(&ip.comp(n).neg())?;
            let dh = l1.boundary(n + 1).mul(&h(n))?;
            let hd = if n == 0 { MatrixA::zero(ring, l1.rank(0), l1.rank(0)) } else { h(n - 1).mul(&l1.boundary(n))? };
            if !lhs.add(&dh.add(&hd)?.neg())?.is_zero() {
                return Ok(false);
            }
        }
        let comp = self.first.then(&self.second)?.then(&self.proj)?;
        Ok((0..f.source.len()).all(|n| comp.comp(n) == f.comp(n)))
    }
}

fn scalar_lift(ring: &GroupRing, x: &Scalar) -> Result<GroupRingElem> {
    Ok(ring.scalar(ring.coeff().coerce(x)?))
}

/// Splits a coordinate inclusion `f: K ⊂ L` in W∗ whose new cells lie in
/// degrees `p..=q` with `p + 1 < q`. Each new p-cell σ gets a lift `s(σ)`
/// of σ through the R-boundary of the new (p+1)-cells, and a (p+1)-cell
/// `τ_σ` attached along `d s(σ)`.
pub fn split_window(f: &ChainMap, p: usize, q: usize, map: &RingMap) -> Result<WindowSplit> {
    if p + 1 >= q {
        return Err(Error::Precondition("splitting needs a window (p, q) with p + 1 < q".into()));
    }
    if !window_membership(f, p, q, map)? {
        return Err(Error::Precondition(format!("inclusion is not in the window ({p}, {q}) of W∗")));
    }
    let ring = &f.source.ring;
    let k = &f.source;
    let len = f.target.len().max(p + 3);
    let l = f.target.padded(len);
    let kpos: Vec<Vec<usize>> = (0..len).map(|n| coordinate_positions(&f.comp(n)).unwrap_or_default()).collect();
    let qpos: Vec<Vec<usize>> = (0..len).map(|n| (0..l.rank(n)).filter(|i| !kpos[n].contains(i)).collect()).collect();
    let sigma = qpos[p].len();
    // lift: S over R with d_Q S = I, then constants in A
    let dq = l.boundary(p + 1).submatrix(&qpos[p], &qpos[p + 1]);
    let dqr = mat_image(&dq, map)?.mat;
    let pid = ScalarPid::new(map.target());
    let sm = smith(&pid, &dqr, None)?;
    if sm.rank < sigma || !sm.diag[..sigma].iter().all(|x| pid.is_unit(x)) {
        return Err(Error::Precondition("boundary of the new cells is not onto over R".into()));
    }
    let mut dplus = crate::ring::zeros(&pid, dqr.cols, sigma);
    for i in 0..sigma {
        dplus.set(i, i, pid.unit_inv(&sm.diag[i]).unwrap());
    }
    let s_r = crate::ring::mat_mul(&pid, &crate::ring::mat_mul(&pid, &sm.v, &dplus)?, &sm.u)?;
    let s_q = MatrixA::new(ring.clone(), s_r.try_map(|x| scalar_lift(ring, x))?)?;
    // s(σ) as vectors in L_(p+1)
    let mut s_l = MatrixA::zero(ring, l.rank(p + 1), sigma);
    for (a, &row) in qpos[p + 1].iter().enumerate() {
        for b in 0..sigma {
            s_l.mat.set(row, b, s_q.get(a, b).clone());
        }
    }
    let ds = l.boundary(p + 1).mul(&s_l)?;

    // K1: K, then Σ in degree p, then T in degree p+1
    let k = k.padded(len);
    let k1_ranks: Vec<usize> = (0..len)
        .map(|n| k.rank(n) + if n == p || n == p + 1 { sigma } else { 0 })
        .collect();
    // L1: L, then T in degree p+1, Ω in degree p+2
    let l1_ranks: Vec<usize> = (0..len).map(|n| l.rank(n) + if n == p + 1 || n == p + 2 { sigma } else { 0 }).collect();
    let mut l1_d = Vec::new();
    for n in 1..len {
        let mut m = MatrixA::zero(ring, l1_ranks[n - 1], l1_ranks[n]);
        let dl = l.boundary(n);
        for i in 0..dl.rows() {
            for j in 0..dl.cols() {
                m.mat.set(i, j, dl.get(i, j).clone());
            }
        }
        if n == p + 1 {
            // d τ_σ = d s(σ)
            for b in 0..sigma {
                for i in 0..ds.rows() {
                    m.mat.set(i, l.rank(n) + b, ds.get(i, b).clone());
                }
            }
        }
        if n == p + 2 {
            // d ω_σ = τ_σ − s(σ)
            for b in 0..sigma {
                m.mat.set(l.rank(n - 1) + b, l.rank(n) + b, ring.one());
                for i in 0..s_l.rows() {
                    m.mat.set(i, l.rank(n) + b, ring.neg(s_l.get(i, b)));
                }
            }
        }
        l1_d.push(m);
    }
    let l1 = ChainComplex::new(ring.clone(), l1_ranks.clone(), l1_d)?;
    // K1 as a subcomplex of L1: positions of its basis
    let k1_pos: Vec<Vec<usize>> = (0..len)
        .map(|n| {
            let mut pos = kpos[n].clone();
            if n == p {
                pos.extend(qpos[p].iter().copied());
            }
            if n == p + 1 {
                pos.extend((0..sigma).map(|b| l.rank(n) + b));
            }
            pos
        })
        .collect();
    let sub = |n: usize| l1.boundary(n).submatrix(&k1_pos[n - 1], &k1_pos[n]);
    let k1 = ChainComplex::new(ring.clone(), k1_ranks.clone(), (1..len).map(sub).collect())?;
    let inclusion = |rows: usize, pos: &[usize]| {
        let mut m = MatrixA::zero(ring, rows, pos.len());
        for (j, &i) in pos.iter().enumerate() {
            m.mat.set(i, j, ring.one());
        }
        m
    };
    let first_comps = (0..len)
        .map(|n| {
            let mut m = MatrixA::zero(ring, k1_ranks[n], k.rank(n));
            for j in 0..k.rank(n) {
                m.mat.set(j, j, ring.one());
            }
            m
        })
        .collect();
    let first = ChainMap::new(k.clone(), k1.clone(), first_comps)?;
    let second = ChainMap::new(k1, l1.clone(), (0..len).map(|n| inclusion(l1_ranks[n], &k1_pos[n])).collect())?;
    let proj_comps = (0..len)
        .map(|n| {
            let mut m = MatrixA::zero(ring, l.rank(n), l1_ranks[n]);
            for j in 0..l.rank(n) {
                m.mat.set(j, j, ring.one());
            }
            if n == p + 1 {
                for b in 0..sigma {
                    for i in 0..s_l.rows() {
                        m.mat.set(i, l.rank(n) + b, s_l.get(i, b).clone());
                    }
                }
            }
            m
        })
        .collect();
    let proj = ChainMap::new(l1.clone(), l.clone(), proj_comps)?;
    let incl = ChainMap::new(l.clone(), l1.clone(), (0..len).map(|n| inclusion(l1_ranks[n], &(0..l.rank(n)).collect::<Vec<_>>())).collect())?;
    let homotopy = (0..len)
        .map(|n| {
            let mut h = MatrixA::zero(ring, l1.rank(n + 1), l1_ranks[n]);
            if n == p + 1 {
                for b in 0..sigma {
                    h.mat.set(l.rank(n + 1) + b, l.rank(n) + b, ring.one());
                }
            }
            h
        })
        .collect();
    let f = ChainMap::new(k, l, (0..len).map(|n| f.comp(n)).collect())?;
    let split = WindowSplit { first, second, proj, incl, homotopy };
    if !split.verify(&f)? {
        return Err(Error::Precondition("window split failed its own verification".into()));
    }
    Ok(split)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_elem;

    fn zt() -> GroupRing {
        GroupRing::parse_header("Z[t]").unwrap()
    }

    fn m(r: &GroupRing, rows: &[&[&str]], cols: usize) -> MatrixA {
        MatrixA::from_rows(r, rows.iter().map(|row| row.iter().map(|s| parse_elem(r, s, 0).unwrap()).collect()).collect(), cols)
            .unwrap()
    }

    fn aug(r: &GroupRing) -> RingMap {
        RingMap::augmentation(r.clone(), CoeffRing::Z).unwrap()
    }

    fn two_term(r: &GroupRing, e: &str) -> ChainComplex {
        ChainComplex::new(r.clone(), vec![1, 1], vec![m(r, &[&[e]], 1)]).unwrap()
    }

    fn fmt(h: &[DegreeHomology]) -> Vec<String> {
        h.iter().map(|x| x.format(CoeffRing::Z)).collect()
    }

    #[test]
    fn homology_examples() {
        let r = zt();
        assert_eq!(fmt(&homology_over_r(&two_term(&r, "t-1"), &aug(&r)).unwrap()), vec!["Z", "Z"]);
        assert_eq!(fmt(&homology_over_r(&two_term(&r, "2t-1"), &aug(&r)).unwrap()), vec!["0", "0"]);
        assert_eq!(fmt(&homology_over_r(&two_term(&r, "t+1"), &aug(&r)).unwrap()), vec!["Z/2", "0"]);
        assert!(homology_over_r(&ChainComplex::zero(&r), &aug(&r)).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_complexes() {
        let r = zt();
        let d1 = m(&r, &[&["1"]], 1);
        let d2 = m(&r, &[&["1"]], 1);
        assert!(ChainComplex::new(r.clone(), vec![1, 1, 1], vec![d1, d2]).is_err());
    }

    #[test]
    fn wstar_examples() {
        let r = zt();
        let c = two_term(&r, "2t-1");
        assert!(wstar_membership(&ChainMap::identity(&c), &aug(&r)).unwrap().acyclic);
        let z = ChainComplex::zero(&r);
        assert!(wstar_membership(&ChainMap::zero(&z, &c).unwrap(), &aug(&r)).unwrap().acyclic);
        let c2 = two_term(&r, "t-1");
        assert!(!wstar_membership(&ChainMap::zero(&z, &c2).unwrap(), &aug(&r)).unwrap().acyclic);
    }

    #[test]
    fn window_examples() {
        let r = zt();
        // A in degrees 1, 2 with d = 2t-1
        let c = ChainComplex::new(r.clone(), vec![0, 1, 1], vec![MatrixA::zero(&r, 0, 1), m(&r, &[&["2t-1"]], 1)]).unwrap();
        let f = ChainMap::zero(&ChainComplex::zero(&r), &c).unwrap();
        assert!(window_membership(&f, 1, 2, &aug(&r)).unwrap());
        assert!(!window_membership(&f, 2, 3, &aug(&r)).unwrap());
        assert!(window_membership(&ChainMap::identity(&c), 5, 6, &aug(&r)).unwrap());
        let c0 = ChainComplex::new(r.clone(), vec![1], vec![]).unwrap();
        let g = ChainMap::zero(&ChainComplex::zero(&r), &c0).unwrap();
        assert!(!window_membership(&g, 1, 2, &aug(&r)).unwrap());
    }

    #[test]
    fn estep_attaches_w_star_inclusion() {
        let r = zt();
        let c = ChainComplex::new(r.clone(), vec![1], vec![]).unwrap();
        let k = c.clone();
        let l = ChainComplex::new(r.clone(), vec![2, 1], vec![m(&r, &[&["t-1"], &["2t-1"]], 1)]).unwrap();
        let incl = ChainMap::new(k.clone(), l, vec![m(&r, &[&["1"], &["0"]], 1)]).unwrap();
        assert!(wstar_membership(&incl, &aug(&r)).unwrap().acyclic);
        let attach = ChainMap::new(k, c.clone(), vec![m(&r, &[&["t"]], 1)]).unwrap();
        let p = estep_pushout(&c, &[Attachment { incl, attach }]).unwrap();
        assert_eq!(p.ranks, vec![2, 1]);
        assert_eq!(p.d[0].to_string(), "[t^2 - t; 2*t - 1]");
        assert!(homology_eq(&homology_over_r(&p, &aug(&r)).unwrap(), &homology_over_r(&c, &aug(&r)).unwrap()));
        assert_eq!(estep_pushout(&c, &[]).unwrap(), c);
    }

    #[test]
    fn localized_examples() {
        let r = GroupRing::parse_header("Q[t]").unwrap();
        let d = DenomSet::new(RingMap::augmentation(r.clone(), CoeffRing::Q).unwrap()).unwrap();
        let h = localized_homology(&two_term(&r, "2t-1"), &d).unwrap();
        assert!(h.iter().all(LocDegree::is_zero));
        let h = localized_homology(&two_term(&r, "t-1"), &d).unwrap();
        assert_eq!(h[0].to_string(), "L/(t - 1)");
        assert_eq!(h[1].to_string(), "0");
        let free = ChainComplex::new(r.clone(), vec![2, 1], vec![MatrixA::zero(&r, 2, 1)]).unwrap();
        let h = localized_homology(&free, &d).unwrap();
        assert_eq!((h[0].rank, h[1].rank), (2, 1));
    }

    #[test]
    fn split_window_stages() {
        let r = zt();
        // K = 0; L: A in degrees 1..3, d_2 = 2t-1, d_3 = 0, plus an acyclic pair in 2..3
        let l = ChainComplex::new(
            r.clone(),
            vec![0, 1, 2, 1],
            vec![MatrixA::zero(&r, 0, 1), m(&r, &[&["2t-1", "t"]], 2), m(&r, &[&["t"], &["1-2t"]], 1)],
        )
        .unwrap();
        let f = ChainMap::zero(&ChainComplex::zero(&r), &l).unwrap();
        let map = aug(&r);
        assert!(wstar_membership(&f, &map).unwrap().acyclic);
        let s = split_window(&f, 1, 3, &map).unwrap();
        assert!(s.verify(&f).unwrap());
        assert!(window_membership(&s.first, 1, 2, &map).unwrap());
        assert!(window_membership(&s.second, 2, 3, &map).unwrap());
    }
}
