//! Finitely presented G-groups: the free G-group on S is the free group on
//! S × G, and a presentation adds relators whose G-translates are implicit.

pub mod homs;
pub mod search;
pub mod stages;
pub mod transport;
pub mod word;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::GroupDesc;
use crate::groupring::{GroupRing, GroupRingElem, RingMap};
use crate::modloc::FPModule;
use crate::ring::Ring;
use crate::scalar::{int, CoeffRing};
use crate::wclass::{w_membership, MatrixA, WDecision};

pub use word::{parse_word, Letter, Word};

#[derive(Debug, Clone, PartialEq)]
pub struct FPGGroup {
    pub base: GroupDesc,
    pub gens: Vec<String>,
    pub rels: Vec<Word>,
}

fn check_symbols(gens: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for s in gens {
        let ok = s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::InvalidGroup(format!("bad generator symbol `{s}`")));
        }
        if !seen.insert(s) {
            return Err(Error::InvalidGroup(format!("duplicate generator symbol `{s}`")));
        }
    }
    Ok(())
}

impl FPGGroup {
    pub fn new(base: GroupDesc, gens: Vec<String>, rels: Vec<Word>) -> Result<Self> {
        check_symbols(&gens)?;
        let mut out = Vec::new();
        for r in rels {
            for l in &r.0 {
                if !gens.contains(&l.sym) {
                    return Err(Error::InvalidGroup(format!("relator uses unknown generator `{}`", l.sym)));
                }
                if !base.contains(&l.g) {
                    return Err(Error::InvalidGroup(format!("letter of `{}` is not over {}", l.sym, base)));
                }
            }
            let r = Word::reduce(r.0);
            if !r.is_empty() {
                out.push(r);
            }
        }
        Ok(FPGGroup { base, gens, rels: out })
    }

    /// The free G-group on `symbols`.
    pub fn free(symbols: &[&str], base: &GroupDesc) -> Result<Self> {
        Self::new(base.clone(), symbols.iter().map(|s| s.to_string()).collect(), vec![])
    }

    pub fn is_free(&self) -> bool {
        self.rels.is_empty()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word(&self.base, &self.gens, text, 0)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.format(&self.base)
    }

    /// The generator `(s, 1)` as a word.
    pub fn gen_word(&self, s: &str) -> Word {
        Word::letter(s, self.base.identity())
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        for l in &w.0 {
            if !self.gens.contains(&l.sym) {
                return Err(Error::InvalidMap(format!("generator `{}` does not belong to the target", l.sym)));
            }
        }
        Ok(())
    }

    /// `rels` line as written in presentation files.
    pub fn relator_strings(&self) -> Vec<String> {
        self.rels.iter().map(|r| self.format_word(r)).collect()
    }
}

/// Abelianized row of a word: entry `s` is `Σ ±g` over the letters `(s, g)^±1`.
pub fn abelianize_word(ring: &GroupRing, gens: &[String], w: &Word) -> Vec<GroupRingElem> {
    let mut row = vec![ring.zero(); gens.len()];
    for l in &w.0 {
        let i = gens.iter().position(|s| *s == l.sym).expect("letter symbol is a generator");
        let term = ring.monomial(l.g.clone(), int(if l.inv { -1 } else { 1 }));
        row[i] = ring.add(&row[i], &term);
    }
    row
}

/// The ℤ[G]-module presented by the abelianized relators.
pub fn abelianize(gamma: &FPGGroup) -> FPModule {
    let ring = GroupRing::new(gamma.base.clone(), CoeffRing::Z);
    let rows: Vec<Vec<GroupRingElem>> = gamma.rels.iter().map(|r| abelianize_word(&ring, &gamma.gens, r)).collect();
    FPModule::new(MatrixA::from_rows(&ring, rows, gamma.gens.len()).expect("rows have one entry per generator"))
}

/// A homomorphism of G-groups, fixed by the images of the `(s, 1)`.
#[derive(Debug, Clone)]
pub struct GGroupHom {
    pub source: FPGGroup,
    pub target: FPGGroup,
    pub images: Vec<Word>,
    /// Relator images verified only after abelianization.
    pub caveats: Vec<String>,
}

impl GGroupHom {
    /// Checks that relator images die in the target: by free reduction when
    /// possible, otherwise at the abelianized level (recorded as a caveat).
    pub fn new(source: FPGGroup, target: FPGGroup, images: Vec<Word>) -> Result<Self> {
        if source.base != target.base {
            return Err(Error::InvalidMap("source and target have different base groups".into()));
        }
        if images.len() != source.gens.len() {
            return Err(Error::InvalidMap(format!(
                "{} images for {} generators",
                images.len(),
                source.gens.len()
            )));
        }
        for w in &images {
            target.check_word(w)?;
        }
        let images: Vec<Word> = images.into_iter().map(|w| Word::reduce(w.0)).collect();
        let mut hom = GGroupHom { source, target, images, caveats: vec![] };
        for (i, r) in hom.source.rels.clone().iter().enumerate() {
            let img = hom.apply(r)?;
            if img.is_empty() || hom.target.rels.iter().any(|t| *t == img || t.inverse() == img) {
                continue;
            }
            match abelian_member(&hom.target, &img) {
                Ok(true) => hom.caveats.push(format!(
                    "image of relator {i} is trivial after abelianization; group-level identity not checked"
                )),
                Ok(false) => {
                    return Err(Error::Precondition(format!(
                        "image of relator {i} is not trivial in the target (already nonzero after abelianization)"
                    )))
                }
                Err(e) => return Err(e.context(&format!("cannot check relator {i}"))),
            }
        }
        Ok(hom)
    }

    /// Between free G-groups; no checks needed beyond symbols.
    pub fn between_free(source: &FPGGroup, target: &FPGGroup, images: Vec<Word>) -> Result<Self> {
        if !source.is_free() || !target.is_free() {
            return Err(Error::Precondition("both endpoints must be free G-groups".into()));
        }
        Self::new(source.clone(), target.clone(), images)
    }

    pub fn image_of(&self, s: &str) -> Option<Word> {
        self.source.gens.iter().position(|x| x == s).map(|i| self.images[i].clone())
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        w.substitute(&self.source.base, |s| self.image_of(s))
    }

    /// Abelianization: row `s` is the abelianized image of `(s, 1)`.
    pub fn abelianize(&self) -> MatrixA {
        let ring = GroupRing::new(self.source.base.clone(), CoeffRing::Z);
        let rows = self.images.iter().map(|w| abelianize_word(&ring, &self.target.gens, w)).collect();
        MatrixA::from_rows(&ring, rows, self.target.gens.len()).expect("one entry per target generator")
    }

    /// Every target generator `(s, 1)` is the image of some source generator.
    pub fn is_generator_surjective(&self) -> bool {
        self.target.gens.iter().all(|s| {
            let w = self.target.gen_word(s);
            self.images.contains(&w)
        })
    }

    pub fn compose(&self, after: &GGroupHom) -> Result<GGroupHom> {
        let images = self.images.iter().map(|w| after.apply(w)).collect::<Result<Vec<_>>>()?;
        GGroupHom::new(self.source.clone(), after.target.clone(), images)
    }
}

/// Whether the abelianized row of `w` lies in the row space of Γ's
/// abelianized presentation (errors when no decision procedure applies).
pub fn abelian_member(gamma: &FPGGroup, w: &Word) -> Result<bool> {
    let m = abelianize(gamma);
    let ring = m.ring().clone();
    let row = abelianize_word(&ring, &gamma.gens, w);
    row_in_span(&m.pres, &row)
}

/// Whether `w` is a conjugate of a G-translate of a relator or its inverse,
/// hence trivial in Γ.
pub fn is_relator_conjugate(gamma: &FPGGroup, w: &Word) -> bool {
    let w = w.cyclic_reduce();
    if w.is_empty() {
        return true;
    }
    let n = w.len();
    let base = &gamma.base;
    gamma.rels.iter().flat_map(|r| [r.cyclic_reduce(), r.inverse().cyclic_reduce()]).any(|r| {
        r.len() == n
            && (0..n).any(|k| {
                let rot = Word(r.0[k..].iter().chain(&r.0[..k]).cloned().collect());
                let g = base.mul(&base.inv(&rot.0[0].g), &w.0[0].g);
                rot.translate(base, &g) == w
            })
    })
}

/// Membership of `row` in the row space of `p` over a decidable configuration.
pub fn row_in_span(p: &MatrixA, row: &[GroupRingElem]) -> Result<bool> {
    if row.iter().all(|e| e.is_zero()) {
        return Ok(true);
    }
    crate::modloc::in_row_space(p, row)
}

/// W(G, R) membership of a map between free G-groups, decided on its
/// abelianization.
pub fn wg_membership(alpha: &GGroupHom, map: &RingMap) -> Result<WDecision> {
    if !alpha.source.is_free() || !alpha.target.is_free() {
        return Err(Error::Precondition("W(G,R) is defined for maps between free G-groups".into()));
    }
    let m = alpha.abelianize();
    let m = if map.source().coeff() != CoeffRing::Z { m.change_coeff(map.source().coeff())? } else { m };
    w_membership(&m, map)
}

/// Tietze simplification: while some relator contains a generator exactly
/// once, solve for that generator and eliminate it. Later generators are
/// eliminated first.
pub fn simplify(gamma: &FPGGroup) -> FPGGroup {
    let mut g = gamma.clone();
    loop {
        let mut found = None;
        'outer: for (ri, r) in g.rels.iter().enumerate() {
            for s in g.gens.iter().rev() {
                let count = r.0.iter().filter(|l| l.sym == *s).count();
                if count == 1 {
                    found = Some((ri, s.clone()));
                    break 'outer;
                }
            }
        }
        let Some((ri, s)) = found else { return g };
        let r = g.rels[ri].clone();
        let pos = r.0.iter().position(|l| l.sym == s).unwrap();
        let a = Word(r.0[..pos].to_vec());
        let b = Word(r.0[pos + 1..].to_vec());
        let letter = &r.0[pos];
        // A x B = 1  ⟹  x = A⁻¹ B⁻¹, with x = (s, g)^±1
        let x = a.inverse().mul(&b.inverse());
        let x = if letter.inv { x.inverse() } else { x };
        let sub = x.translate(&g.base, &g.base.inv(&letter.g));
        let base = g.base.clone();
        let rels: Vec<Word> = g
            .rels
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != ri)
            .map(|(_, w)| {
                w.substitute(&base, |t| if t == s { Some(sub.clone()) } else { Some(Word::letter(t, base.identity())) })
                    .expect("all symbols have images")
            })
            .collect();
        let gens = g.gens.iter().filter(|t| **t != s).cloned().collect();
        g = FPGGroup::new(base, gens, rels).expect("elimination keeps a valid presentation");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CoeffRing;

    fn z() -> GroupDesc {
        GroupDesc::infinite_cyclic("t").unwrap()
    }

    #[test]
    fn relator_conjugates_are_trivial() {
        let f = FPGGroup::free(&["a", "b"], &z()).unwrap();
        let gam = FPGGroup::new(z(), f.gens.clone(), vec![f.parse_word("(a,t)(b,1)^-1").unwrap()]).unwrap();
        for w in ["(b,t)^-1(a,t^2)", "(a,1)(b,t^-1)^-1", "(b,1)(a,t)^-1", "(b,1)(b,1)^-1"] {
            assert!(is_relator_conjugate(&gam, &gam.parse_word(w).unwrap()), "{w}");
        }
        for w in ["(a,t)(b,1)", "(a,t)(b,t)^-1", "(a,1)"] {
            assert!(!is_relator_conjugate(&gam, &gam.parse_word(w).unwrap()), "{w}");
        }
    }

    #[test]
    fn abelianize_examples() {
        let c2 = GroupDesc::cyclic(2, "g").unwrap();
        let f = FPGGroup::free(&["s"], &c2).unwrap();
        let gam = FPGGroup::new(c2.clone(), f.gens.clone(), vec![f.parse_word("(s,1)(s,g)").unwrap()]).unwrap();
        assert_eq!(abelianize(&gam).pres.to_string(), "[1 + g]");
        let f = FPGGroup::free(&["s"], &z()).unwrap();
        let gam = FPGGroup::new(z(), f.gens.clone(), vec![f.parse_word("(s,t)(s,1)^-2").unwrap()]).unwrap();
        assert_eq!(abelianize(&gam).pres.to_string(), "[t - 2]");
        let free = FPGGroup::free(&["u", "v"], &z()).unwrap();
        assert_eq!(abelianize(&free).gens(), 2);
        assert_eq!(abelianize(&free).relations(), 0);
    }

    #[test]
    fn wg_examples() {
        let triv = GroupDesc::trivial();
        let fu = FPGGroup::free(&["u"], &triv).unwrap();
        let fv = FPGGroup::free(&["v"], &triv).unwrap();
        let a = GGroupHom::between_free(&fu, &fv, vec![fv.parse_word("v").unwrap()]).unwrap();
        let map = RingMap::augmentation(GroupRing::new(triv, CoeffRing::Z), CoeffRing::Z).unwrap();
        assert!(wg_membership(&a, &map).unwrap().verdict);

        let fu = FPGGroup::free(&["u"], &z()).unwrap();
        let fv = FPGGroup::free(&["v"], &z()).unwrap();
        let map = RingMap::augmentation(GroupRing::new(z(), CoeffRing::Z), CoeffRing::Z).unwrap();
        let a = GGroupHom::between_free(&fu, &fv, vec![fv.parse_word("(v,t)(v,1)^-2").unwrap()]).unwrap();
        let d = wg_membership(&a, &map).unwrap();
        assert!(d.verdict);
        assert_eq!(d.det_image, Some(int(-1)));
        let a = GGroupHom::between_free(&fu, &fv, vec![fv.parse_word("(v,1)(v,t)").unwrap()]).unwrap();
        assert!(!wg_membership(&a, &map).unwrap().verdict);
    }

    #[test]
    fn tietze_elimination() {
        let triv = GroupDesc::trivial();
        let f = FPGGroup::free(&["a", "b"], &triv).unwrap();
        let g = FPGGroup::new(triv, f.gens.clone(), vec![f.parse_word("a b^-1").unwrap()]).unwrap();
        let s = simplify(&g);
        assert_eq!(s.gens.len(), 1);
        assert!(s.rels.is_empty());
    }

    #[test]
    fn hom_relator_checks() {
        let triv = GroupDesc::trivial();
        let f = FPGGroup::free(&["a"], &triv).unwrap();
        let src = FPGGroup::new(triv.clone(), f.gens.clone(), vec![f.parse_word("a^2").unwrap()]).unwrap();
        let tgt = FPGGroup::new(triv.clone(), vec!["b".into()], vec![Word::letter("b", triv.identity()).pow(4)]).unwrap();
        let b = tgt.parse_word("b^2").unwrap();
        let h = GGroupHom::new(src.clone(), tgt.clone(), vec![b]).unwrap();
        assert!(h.caveats.is_empty());
        assert!(GGroupHom::new(src, tgt.clone(), vec![tgt.parse_word("b").unwrap()]).is_err());
    }
}
