//! Moving G-groups along group homomorphisms and the conjugation action of
//! a sub-G-group.

use super::{abelianize_word, FPGGroup, Letter, Word};
use crate::error::{Error, Result};
use crate::group::{GElt, GroupHom};
use crate::groupring::{GroupRing, GroupRingElem};
use crate::wclass::MatrixA;

/// Γ over G′ viewed as a G-group through an onto `f: G → G′`.
#[derive(Debug, Clone)]
pub struct Restricted {
    pub group: FPGGroup,
    /// Chosen preimage of every element of G′, as `(g′, g)` pairs.
    pub section: Vec<(GElt, GElt)>,
}

fn is_identity_hom(f: &GroupHom) -> bool {
    f.source == f.target && (0..f.source.generators().len()).all(|i| f.images()[i] == f.source.generator(i))
}

/// Same generators; letters `(s, g′)` become `(s, σ(g′))` for the chosen
/// section σ, and `(s, k)(s, 1)⁻¹` is added for generators k of ker f.
pub fn restrict_action(gamma: &FPGGroup, f: &GroupHom) -> Result<Restricted> {
    if f.target != gamma.base {
        return Err(Error::InvalidMap("hom target is not the base group of Γ".into()));
    }
    if is_identity_hom(f) {
        return Ok(Restricted { group: gamma.clone(), section: vec![] });
    }
    let sec = f.section().map_err(|e| e.context("restriction along a non-identity hom"))?;
    if sec.len() != f.target.order().unwrap_or(0) {
        return Err(Error::Precondition("f is not onto; restriction needs a preimage for every element".into()));
    }
    let lift = |w: &Word| {
        Word(w.0.iter().map(|l| Letter { sym: l.sym.clone(), g: sec[&l.g].clone(), inv: l.inv }).collect())
    };
    let mut rels: Vec<Word> = gamma.rels.iter().map(lift).collect();
    let id = f.source.identity();
    for k in f.kernel_generators()? {
        for s in &gamma.gens {
            rels.push(Word(vec![Letter::new(s, k.clone()), Letter::new(s, id.clone()).inverse()]));
        }
    }
    let group = FPGGroup::new(f.source.clone(), gamma.gens.clone(), rels)?;
    Ok(Restricted { group, section: sec.into_iter().collect() })
}

/// Image of a group-ring element under `k[G] → k[G′]`.
pub fn push_elem(a: &GroupRingElem, f: &GroupHom) -> Result<GroupRingElem> {
    if a.ring().group() != &f.source {
        return Err(Error::RingMismatch("element is not over the hom's source group".into()));
    }
    let target = GroupRing::new(f.target.clone(), a.ring().coeff());
    target.from_terms(a.terms().iter().map(|(g, c)| (f.apply(g), c.clone())))
}

pub fn push_matrix(m: &MatrixA, f: &GroupHom) -> Result<MatrixA> {
    let target = GroupRing::new(f.target.clone(), m.ring.coeff());
    MatrixA::new(target, m.mat.try_map(|a| push_elem(a, f))?)
}

/// Γ with the action `x·(g, γ) = γ⁻¹(x·g)γ` of G ⋉ Γ′, where Γ′ is the
/// sub-G-group generated by the listed generators.
#[derive(Debug, Clone)]
pub struct SemidirectAction {
    pub gamma: FPGGroup,
    pub sub: Vec<String>,
}

pub fn semidirect_action(gamma: &FPGGroup, sub: &[&str]) -> Result<SemidirectAction> {
    for s in sub {
        if !gamma.gens.iter().any(|g| g == s) {
            return Err(Error::InvalidGroup(format!("`{s}` is not a generator of Γ")));
        }
    }
    Ok(SemidirectAction { gamma: gamma.clone(), sub: sub.iter().map(|s| s.to_string()).collect() })
}

impl SemidirectAction {
    pub fn act(&self, x: &Word, g: &GElt, c: &Word) -> Result<Word> {
        if let Some(s) = c.symbols().find(|s| !self.sub.iter().any(|t| t == s)) {
            return Err(Error::Precondition(format!("`{s}` does not lie in the sub-G-group")));
        }
        self.gamma.check_word(x)?;
        Ok(c.inverse().mul(&x.translate(&self.gamma.base, g)).mul(c))
    }

    /// Abelianized row of `x·(g, γ)`; conjugation drops out, leaving `row(x)·g`.
    pub fn abelianized(&self, x: &Word, g: &GElt, c: &Word) -> Result<Vec<GroupRingElem>> {
        let ring = GroupRing::new(self.gamma.base.clone(), crate::scalar::CoeffRing::Z);
        Ok(abelianize_word(&ring, &self.gamma.gens, &self.act(x, g, c)?))
    }
}

/// Right multiplication of a row by a group element.
pub fn translate_row(row: &[GroupRingElem], g: &GElt) -> Vec<GroupRingElem> {
    row.iter()
        .map(|a| {
            let ring = a.ring();
            ring.from_terms(a.terms().iter().map(|(h, c)| (ring.group().mul(h, g), c.clone())))
                .expect("translates stay in the group")
        })
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::ggroup::abelianize;
    use crate::group::GroupDesc;

    fn z() -> GroupDesc {
        GroupDesc::infinite_cyclic("t").unwrap()
    }

    #[test]
    fn identity_restriction_is_noop() {
        let f = FPGGroup::free(&["s"], &z()).unwrap();
        let g = FPGGroup::new(z(), f.gens.clone(), vec![f.parse_word("(s,t)(s,1)^-2").unwrap()]).unwrap();
        assert_eq!(restrict_action(&g, &GroupHom::identity(&z())).unwrap().group, g);
    }

    #[test]
    fn restrict_z_to_c2() {
        let c2 = GroupDesc::cyclic(2, "g").unwrap();
        let f = GroupHom::new(z(), c2.clone(), vec![c2.generator(0)]).unwrap();
        let free = FPGGroup::free(&["s"], &c2).unwrap();
        let g = FPGGroup::new(c2, free.gens.clone(), vec![free.parse_word("(s,1)(s,g)").unwrap()]).unwrap();
        let r = restrict_action(&g, &f).unwrap();
        assert_eq!(r.group.relator_strings(), vec!["(s,1)(s,t)", "(s,t^2)(s,1)^-1"]);
        assert_eq!(abelianize(&r.group).pres.to_string(), "[t + 1; t^2 - 1]");
    }

    #[test]
    fn semidirect_conjugation() {
        let c2 = GroupDesc::cyclic(2, "g").unwrap();
        let free = FPGGroup::free(&["x", "y"], &c2).unwrap();
        let act = semidirect_action(&free, &["y"]).unwrap();
        let x = free.parse_word("x").unwrap();
        let y = free.parse_word("(y,g)").unwrap();
        assert_eq!(free.format_word(&act.act(&x, &c2.identity(), &y).unwrap()), "(y,g)^-1(x,1)(y,g)");
        assert_eq!(act.act(&x, &c2.generator(0), &Word::empty()).unwrap(), free.parse_word("(x,g)").unwrap());
        assert!(act.act(&x, &c2.identity(), &x).is_err());
        let r = free.parse_word("(x,1)(y,g)(x,g)^-1").unwrap();
        let ring = GroupRing::new(c2.clone(), crate::scalar::CoeffRing::Z);
        let g = c2.generator(0);
        assert_eq!(act.abelianized(&r, &g, &y).unwrap(), translate_row(&abelianize_word(&ring, &free.gens, &r), &g));
    }

    #[test]
    fn push_matrix_to_quotient() {
        let c2 = GroupDesc::cyclic(2, "g").unwrap();
        let f = GroupHom::new(z(), c2.clone(), vec![c2.generator(0)]).unwrap();
        let ring = GroupRing::laurent(crate::scalar::CoeffRing::Q, "t").unwrap();
        let m = MatrixA::from_rows(&ring, vec![vec![ring.laurent_elem(&[(2, 1), (0, -3), (1, 1)])]], 1).unwrap();
        assert_eq!(push_matrix(&m, &f).unwrap().to_string(), "[-2 + g]");
    }
}
