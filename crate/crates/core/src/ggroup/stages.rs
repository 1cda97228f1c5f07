//! The pushout stage Φ(Γ, J), the coequalizer stage Ψ(Γ, J′), and finite
//! localization towers built from them.

use std::collections::BTreeSet;

use super::{abelian_member, abelianize, is_relator_conjugate, wg_membership, FPGGroup, GGroupHom, Word};
use crate::cohn::DenomSet;
use crate::error::{Error, Result};
use crate::groupring::RingMap;
use crate::modloc::{module_localize, presentation_over_r, LocStructure};
use crate::scalar::{CoeffRing, Scalar};
use crate::wclass::{MatrixA, MatrixR};

/// One diagram of a Φ stage: `α: F(U) → F(V)` and `β: F(U) → Γ` given by
/// the images of the generators of U as words over Γ.
#[derive(Debug, Clone)]
pub struct PhiDiagram {
    pub alpha: GGroupHom,
    pub beta: Vec<Word>,
}

/// One triple of a Ψ stage: `α: F(U) → F(V)` and `γ, γ′: F(V) → Γ`.
#[derive(Debug, Clone)]
pub struct PsiTriple {
    pub alpha: GGroupHom,
    pub gamma: Vec<Word>,
    pub gamma2: Vec<Word>,
}

#[derive(Debug, Clone)]
pub enum Stage {
    Phi(Vec<PhiDiagram>),
    Psi(Vec<PsiTriple>),
}

impl Stage {
    pub fn kind(&self) -> &'static str {
        match self {
            Stage::Phi(_) => "phi",
            Stage::Psi(_) => "psi",
        }
    }

    fn alphas(&self) -> Vec<&GGroupHom> {
        match self {
            Stage::Phi(j) => j.iter().map(|d| &d.alpha).collect(),
            Stage::Psi(j) => j.iter().map(|t| &t.alpha).collect(),
        }
    }
}

/// Result of a stage constructor.
#[derive(Debug, Clone)]
pub struct StageOutput {
    pub group: FPGGroup,
    /// For Φ: per diagram, the new name of each generator of V.
    pub renames: Vec<Vec<(String, String)>>,
    pub caveats: Vec<String>,
}

fn fresh(name: &str, used: &BTreeSet<String>) -> String {
    if !used.contains(name) {
        return name.to_string();
    }
    (1..).map(|i| format!("{name}_{i}")).find(|c| !used.contains(c)).unwrap()
}

fn check_alpha(gamma: &FPGGroup, a: &GGroupHom) -> Result<()> {
    if a.source.base != gamma.base {
        return Err(Error::InvalidMap("diagram over a different base group".into()));
    }
    if !a.source.is_free() || !a.target.is_free() {
        return Err(Error::Precondition("α must be a map between free G-groups".into()));
    }
    Ok(())
}

/// Pushout of `Γ ← F(U) → F(V)` for every diagram at once, presented as a
/// quotient of the free product.
pub fn phi_stage(gamma: &FPGGroup, j: &[PhiDiagram]) -> Result<StageOutput> {
    let mut gens = gamma.gens.clone();
    let mut rels = gamma.rels.clone();
    let mut used: BTreeSet<String> = gens.iter().cloned().collect();
    let mut renames = Vec::new();
    for (k, d) in j.iter().enumerate() {
        check_alpha(gamma, &d.alpha).map_err(|e| e.context(&format!("diagram {k}")))?;
        let beta = GGroupHom::new(d.alpha.source.clone(), gamma.clone(), d.beta.clone())
            .map_err(|e| e.context(&format!("diagram {k}: β")))?;
        let mut ren = Vec::new();
        for v in &d.alpha.target.gens {
            let n = fresh(v, &used);
            used.insert(n.clone());
            gens.push(n.clone());
            ren.push((v.clone(), n));
        }
        let rename = |s: &str| ren.iter().find(|(a, _)| a == s).map(|(_, b)| b.clone()).unwrap();
        for (u, a) in beta.source.gens.iter().zip(&d.alpha.images) {
            let b = beta.image_of(u).unwrap();
            rels.push(b.mul(&a.rename(rename).inverse()));
        }
        renames.push(ren);
    }
    Ok(StageOutput { group: FPGGroup::new(gamma.base.clone(), gens, rels)?, renames, caveats: vec![] })
}

/// Coequalizer of the pairs `γ, γ′` after checking `γ∘α = γ′∘α`.
pub fn psi_stage(gamma: &FPGGroup, j: &[PsiTriple]) -> Result<StageOutput> {
    let mut rels = gamma.rels.clone();
    let mut caveats = Vec::new();
    for (k, t) in j.iter().enumerate() {
        let ctx = format!("triple {k}");
        check_alpha(gamma, &t.alpha).map_err(|e| e.context(&ctx))?;
        let g1 = GGroupHom::new(t.alpha.target.clone(), gamma.clone(), t.gamma.clone()).map_err(|e| e.context(&ctx))?;
        let g2 = GGroupHom::new(t.alpha.target.clone(), gamma.clone(), t.gamma2.clone()).map_err(|e| e.context(&ctx))?;
        for (u, a) in t.alpha.source.gens.iter().zip(&t.alpha.images) {
            let d = g1.apply(a)?.mul(&g2.apply(a)?.inverse());
            if is_relator_conjugate(gamma, &d) {
                continue;
            }
            match abelian_member(gamma, &d) {
                Ok(true) => caveats.push(format!(
                    "{ctx}: γ∘α = γ′∘α on `{u}` verified after abelianization only"
                )),
                Ok(false) => {
                    return Err(Error::Precondition(format!("{ctx}: γ∘α ≠ γ′∘α on `{u}`")));
                }
                Err(e) => {
                    return Err(e.context(&format!("{ctx}: cannot decide γ∘α = γ′∘α on `{u}`")));
                }
            }
        }
        for (w1, w2) in g1.images.iter().zip(&g2.images) {
            rels.push(w1.mul(&w2.inverse()));
        }
    }
    Ok(StageOutput { group: FPGGroup::new(gamma.base.clone(), gamma.gens.clone(), rels)?, renames: vec![], caveats })
}

/// A finite list of stages with every α checked to lie in W(G, R).
#[derive(Debug, Clone)]
pub struct StageSchedule {
    pub stages: Vec<Stage>,
    pub map: RingMap,
}

impl StageSchedule {
    pub fn new(stages: Vec<Stage>, map: RingMap) -> Result<Self> {
        for (i, st) in stages.iter().enumerate() {
            for (k, a) in st.alphas().into_iter().enumerate() {
                let d = wg_membership(a, &map).map_err(|e| e.context(&format!("stage {i}, entry {k}")))?;
                if !d.verdict {
                    return Err(Error::Precondition(format!(
                        "stage {i}, entry {k}: α is not in W(G,R): {}",
                        d.reason.map(|r| r.to_string()).unwrap_or_default()
                    )));
                }
            }
        }
        Ok(StageSchedule { stages, map })
    }
}

/// Per-stage record of a tower run.
#[derive(Debug, Clone)]
pub struct StageTrace {
    pub index: usize,
    pub kind: &'static str,
    pub group: FPGGroup,
    pub abelianized: MatrixA,
    pub image: MatrixR,
    /// Non-unit invariant factors of the image presentation over R.
    pub r_invariants: Vec<Scalar>,
    pub r_free_rank: usize,
    /// Structure of the abelianization after localization, when available.
    pub localized: Option<LocStructure>,
    pub caveats: Vec<String>,
}

fn trace(index: usize, kind: &'static str, g: &FPGGroup, map: &RingMap, caveats: Vec<String>) -> Result<StageTrace> {
    let m = abelianize(g);
    let m = if map.source().coeff() != CoeffRing::Z {
        crate::modloc::FPModule::new(m.pres.change_coeff(map.source().coeff())?)
    } else {
        m
    };
    let (image, r_invariants, r_free_rank) = presentation_over_r(&m, map)?;
    let localized = match DenomSet::new(map.clone()) {
        Ok(d) => Some(module_localize(&m, &d)?.structure(None)?),
        Err(_) => None,
    };
    Ok(StageTrace {
        index,
        kind,
        group: g.clone(),
        abelianized: m.pres,
        image,
        r_invariants,
        r_free_rank,
        localized,
        caveats,
    })
}

/// Folds the stages over Γ; the trace starts with Γ itself.
pub fn tower_run(gamma: &FPGGroup, sched: &StageSchedule) -> Result<(FPGGroup, Vec<StageTrace>)> {
    if sched.map.source().group() != &gamma.base {
        return Err(Error::RingMismatch("ring map and G-group have different base groups".into()));
    }
    let mut cur = gamma.clone();
    let mut out = vec![trace(0, "start", &cur, &sched.map, vec![])?];
    for (i, st) in sched.stages.iter().enumerate() {
        let ctx = format!("stage {}", i + 1);
        let res = match st {
            Stage::Phi(j) => phi_stage(&cur, j),
            Stage::Psi(j) => psi_stage(&cur, j),
        }
        .map_err(|e| e.context(&ctx))?;
        cur = res.group;
        out.push(trace(i + 1, st.kind(), &cur, &sched.map, res.caveats).map_err(|e| e.context(&ctx))?);
    }
    Ok((cur, out))
}

/// `F(U1 ⊔ U2) → F(V1 ⊔ V2)` with `u1 ↦ α_J(u1)·λ(u1)⁻¹` and `u2 ↦ α(u2)`;
/// its abelianization is `[[α_J, −λ], [0, α]]`.
pub fn assemble_block_upper(alpha_j: &GGroupHom, lambda: &[Word], alpha: &GGroupHom) -> Result<GGroupHom> {
    let base = &alpha_j.source.base;
    if lambda.len() != alpha_j.images.len() {
        return Err(Error::Dimension("λ needs one image per generator of α_J's source".into()));
    }
    let mut src: Vec<String> = alpha_j.source.gens.clone();
    let mut tgt: Vec<String> = alpha_j.target.gens.clone();
    for s in &alpha.source.gens {
        if src.contains(s) {
            return Err(Error::InvalidGroup(format!("source generator `{s}` appears in both blocks")));
        }
        src.push(s.clone());
    }
    for s in &alpha.target.gens {
        if tgt.contains(s) {
            return Err(Error::InvalidGroup(format!("target generator `{s}` appears in both blocks")));
        }
        tgt.push(s.clone());
    }
    let source = FPGGroup::new(base.clone(), src, vec![])?;
    let target = FPGGroup::new(base.clone(), tgt, vec![])?;
    let mut images: Vec<Word> = alpha_j.images.iter().zip(lambda).map(|(a, l)| a.mul(&l.inverse())).collect();
    images.extend(alpha.images.iter().cloned());
    GGroupHom::between_free(&source, &target, images)
}

/// Pushes Φ data along `h: Γ → Γ″` and returns `Φ(Γ, J)`, `Φ(Γ″, h∘J)` and
/// the induced map between them.
pub fn phi_functorial(h: &GGroupHom, j: &[PhiDiagram]) -> Result<(FPGGroup, FPGGroup, GGroupHom)> {
    let pushed: Vec<PhiDiagram> = j
        .iter()
        .map(|d| {
            Ok(PhiDiagram {
                alpha: d.alpha.clone(),
                beta: d.beta.iter().map(|w| h.apply(w)).collect::<Result<Vec<_>>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let a = phi_stage(&h.source, j)?;
    let b = phi_stage(&h.target, &pushed)?;
    let mut images: Vec<Word> = h.images.clone();
    for (ra, rb) in a.renames.iter().zip(&b.renames) {
        for ((_, na), (_, nb)) in ra.iter().zip(rb) {
            debug_assert!(a.group.gens.contains(na));
            images.push(b.group.gen_word(nb));
        }
    }
    let map = GGroupHom::new(a.group.clone(), b.group.clone(), images)?;
    Ok((a.group, b.group, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ggroup::simplify;
    use crate::group::GroupDesc;
    use crate::groupring::GroupRing;

    fn z() -> GroupDesc {
        GroupDesc::infinite_cyclic("t").unwrap()
    }

    #[test]
    fn phi_examples() {
        let triv = GroupDesc::trivial();
        let gam = FPGGroup::free(&["s"], &triv).unwrap();
        let fu = FPGGroup::free(&["u"], &triv).unwrap();
        let fv = FPGGroup::free(&["v"], &triv).unwrap();
        let alpha = GGroupHom::between_free(&fu, &fv, vec![fv.parse_word("v").unwrap()]).unwrap();
        let out = phi_stage(&gam, &[PhiDiagram { alpha, beta: vec![gam.parse_word("s").unwrap()] }]).unwrap();
        assert_eq!(out.group.relator_strings(), vec!["(s,1)(v,1)^-1"]);
        let s = simplify(&out.group);
        assert!(s.is_free() && s.gens.len() == 1);
        assert_eq!(phi_stage(&gam, &[]).unwrap().group, gam);
    }

    #[test]
    fn phi_over_z() {
        let gam = FPGGroup::free(&["s"], &z()).unwrap();
        let fu = FPGGroup::free(&["u"], &z()).unwrap();
        let fv = FPGGroup::free(&["v"], &z()).unwrap();
        let alpha = GGroupHom::between_free(&fu, &fv, vec![fv.parse_word("(v,t)(v,1)^-2").unwrap()]).unwrap();
        let out = phi_stage(&gam, &[PhiDiagram { alpha, beta: vec![gam.parse_word("s").unwrap()] }]).unwrap();
        let m = abelianize(&out.group);
        assert_eq!(m.pres.to_string(), "[1, -t + 2]");
    }

    #[test]
    fn psi_examples() {
        let triv = GroupDesc::trivial();
        let gam = FPGGroup::free(&["a", "b"], &triv).unwrap();
        let fu = FPGGroup::free(&[], &triv).unwrap();
        let fv = FPGGroup::free(&["v"], &triv).unwrap();
        let alpha = GGroupHom::between_free(&fu, &fv, vec![]).unwrap();
        let t = PsiTriple {
            alpha: alpha.clone(),
            gamma: vec![gam.parse_word("a").unwrap()],
            gamma2: vec![gam.parse_word("b").unwrap()],
        };
        let out = psi_stage(&gam, &[t]).unwrap();
        let s = simplify(&out.group);
        assert!(s.is_free() && s.gens.len() == 1);
        let same = PsiTriple {
            alpha,
            gamma: vec![gam.parse_word("a b").unwrap()],
            gamma2: vec![gam.parse_word("a b").unwrap()],
        };
        assert_eq!(psi_stage(&gam, &[same]).unwrap().group, gam);
        // equalizer failure
        let fu = FPGGroup::free(&["u"], &triv).unwrap();
        let alpha = GGroupHom::between_free(&fu, &fv, vec![fv.parse_word("v").unwrap()]).unwrap();
        let bad = PsiTriple { alpha, gamma: vec![gam.parse_word("a").unwrap()], gamma2: vec![gam.parse_word("b").unwrap()] };
        assert!(psi_stage(&gam, &[bad]).is_err());
    }

    #[test]
    fn tower_inverts_t_minus_two() {
        let f = FPGGroup::free(&["s"], &z()).unwrap();
        let gam = FPGGroup::new(z(), f.gens.clone(), vec![f.parse_word("(s,t)(s,1)^-2").unwrap()]).unwrap();
        let fu = FPGGroup::free(&["u"], &z()).unwrap();
        let fv = FPGGroup::free(&["v"], &z()).unwrap();
        let alpha = GGroupHom::between_free(&fu, &fv, vec![fv.parse_word("(v,t)(v,1)^-2").unwrap()]).unwrap();
        let map = RingMap::augmentation(GroupRing::new(z(), CoeffRing::Z), CoeffRing::Z).unwrap();
        let sched = StageSchedule::new(
            vec![Stage::Phi(vec![PhiDiagram { alpha, beta: vec![gam.parse_word("s").unwrap()] }])],
            map.clone(),
        )
        .unwrap();
        let (_, tr) = tower_run(&gam, &sched).unwrap();
        assert_eq!(tr.len(), 2);
        for st in &tr {
            assert!(st.localized.as_ref().unwrap().is_zero);
            assert!(st.r_invariants.is_empty() && st.r_free_rank == 0);
        }
        // an α outside W is rejected by the schedule
        let bad = GGroupHom::between_free(&fu, &fv, vec![fv.parse_word("(v,1)(v,t)").unwrap()]).unwrap();
        let st = Stage::Phi(vec![PhiDiagram { alpha: bad, beta: vec![gam.parse_word("s").unwrap()] }]);
        assert!(StageSchedule::new(vec![st], map).is_err());
    }

    #[test]
    fn block_assembly_abelianizes_to_block_matrix() {
        let g = z();
        let fu = FPGGroup::free(&["u1"], &g).unwrap();
        let fv = FPGGroup::free(&["v1"], &g).unwrap();
        let fu2 = FPGGroup::free(&["u2"], &g).unwrap();
        let fv2 = FPGGroup::free(&["v2"], &g).unwrap();
        let aj = GGroupHom::between_free(&fu, &fv, vec![fv.parse_word("(v1,t)^2(v1,1)^-1").unwrap()]).unwrap();
        let a = GGroupHom::between_free(&fu2, &fv2, vec![fv2.parse_word("(v2,t)").unwrap()]).unwrap();
        let lam = vec![fv2.parse_word("(v2,1)^5").unwrap()];
        let phi = assemble_block_upper(&aj, &lam, &a).unwrap();
        assert_eq!(phi.abelianize().to_string(), "[2*t - 1, -5; 0, t]");
        let map = RingMap::augmentation(GroupRing::new(g, CoeffRing::Z), CoeffRing::Z).unwrap();
        assert!(wg_membership(&phi, &map).unwrap().verdict);
    }
}
