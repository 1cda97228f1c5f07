//! Knot group presentations, Fox derivatives in abelianized form, the
//! Alexander polynomial, and the Alexander module localized at `t ↦ 1`.

use num_traits::Signed;

use crate::cohn::DenomSet;
use crate::error::{Error, Result};
use crate::group::GElt;
use crate::groupring::{GroupRing, GroupRingElem, RingMap};
use crate::modloc::{module_localize, FPModule, LocStructure};
use crate::ring::Ring;
use crate::scalar::{fmt_scalar, int, CoeffRing, Scalar};
use crate::wclass::{w_membership, MatrixA};

/// A letter of a free-group word: generator index and inversion flag.
pub type FreeLetter = (usize, bool);

#[derive(Debug, Clone, PartialEq)]
pub struct GroupPresentation {
    pub gens: Vec<String>,
    pub rels: Vec<Vec<FreeLetter>>,
    /// Exponent of t assigned to each generator.
    pub degrees: Vec<i64>,
    pub warnings: Vec<String>,
}

fn free_reduce(w: &[FreeLetter]) -> Vec<FreeLetter> {
    let mut out: Vec<FreeLetter> = Vec::with_capacity(w.len());
    for &l in w {
        match out.last() {
            Some(&(g, inv)) if g == l.0 && inv != l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

fn is_gen_name(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_lowercase()) && c.all(|ch| ch.is_ascii_lowercase() || ch.is_ascii_digit() || ch == '_')
}

impl GroupPresentation {
    pub fn new(gens: Vec<String>, rels: Vec<Vec<FreeLetter>>, degrees: Option<Vec<i64>>) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if !is_gen_name(g) {
                return Err(Error::parse(0, format!("generator `{g}` must start with a lowercase letter")));
            }
            if gens[..i].contains(g) {
                return Err(Error::parse(0, format!("duplicate generator `{g}`")));
            }
        }
        let degrees = degrees.unwrap_or_else(|| vec![1; gens.len()]);
        if degrees.len() != gens.len() {
            return Err(Error::Dimension("one degree per generator".into()));
        }
        let mut warnings = Vec::new();
        let mut reduced = Vec::new();
        for (k, r) in rels.into_iter().enumerate() {
            if r.iter().any(|&(g, _)| g >= gens.len()) {
                return Err(Error::InvalidGroup(format!("relator {k} uses an unknown generator")));
            }
            let red = free_reduce(&r);
            if red.len() != r.len() {
                warnings.push(format!("relator {} was not freely reduced", k + 1));
            }
            let deg: i64 = red.iter().map(|&(g, inv)| if inv { -degrees[g] } else { degrees[g] }).sum();
            if deg != 0 {
                return Err(Error::Precondition(format!("relator {} has total degree {deg}, expected 0", k + 1)));
            }
            reduced.push(red);
        }
        Ok(GroupPresentation { gens, rels: reduced, degrees, warnings })
    }

    pub fn format_word(&self, w: &[FreeLetter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&(g, inv)| if inv { self.gens[g].to_ascii_uppercase() } else { self.gens[g].clone() })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Canonical text form, parseable by [`parse_presentation`].
    pub fn to_text(&self) -> String {
        let rels: Vec<String> = self.rels.iter().map(|r| self.format_word(r)).collect();
        let mut out = format!("gens {}; rels {}", self.gens.join(", "), rels.join(", "));
        if self.degrees.iter().any(|&d| d != 1) {
            let ds: Vec<String> = self.gens.iter().zip(&self.degrees).map(|(g, d)| format!("{g}={d}")).collect();
            out.push_str(&format!("; degrees {}", ds.join(", ")));
        }
        out
    }
}

/// Parses `gens x, y; rels x y x Y X Y, ...` with an optional
/// `; degrees x=1, y=1` clause. Clauses are separated by `;` or newlines, and
/// clauses with no keyword after `rels` are further relators. Capitalized
/// names are inverses; when every generator is a single letter, letters may
/// be written without spaces.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation> {
    let mut gens: Option<Vec<String>> = None;
    let mut rels_src: Vec<(usize, &str)> = Vec::new();
    let mut in_rels = false;
    let mut deg_src: Option<(usize, &str)> = None;
    let mut offset = 0;
    for clause in text.split([';', '\n']) {
        let start = offset + (clause.len() - clause.trim_start().len());
        offset += clause.len() + 1;
        let body = clause.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let (kw, rest) = body.split_at(body.find(char::is_whitespace).unwrap_or(body.len()));
        let rest_off = start + kw.len() + (rest.len() - rest.trim_start().len());
        if in_rels && !matches!(kw, "gens" | "rels" | "degrees") {
            rels_src.push((start, body));
            continue;
        }
        in_rels = kw == "rels";
        match kw {
            "gens" => {
                let list: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                for g in &list {
                    if !is_gen_name(g) {
                        let pos = rest_off + rest.trim_start().find(g.as_str()).unwrap_or(0);
                        return Err(Error::parse(pos, format!("bad generator name `{g}`")));
                    }
                }
                gens = Some(list);
            }
            "rels" => rels_src.push((rest_off, rest.trim())),
            "degrees" => deg_src = Some((rest_off, rest.trim())),
            _ => return Err(Error::parse(start, format!("expected `gens`, `rels` or `degrees`, found `{kw}`"))),
        }
    }
    let gens = gens.ok_or_else(|| Error::parse(0, "missing `gens` clause"))?;
    let single = gens.iter().all(|g| g.len() == 1);
    let lookup = |tok: &str| -> Option<FreeLetter> {
        if let Some(i) = gens.iter().position(|g| g == tok) {
            return Some((i, false));
        }
        gens.iter().position(|g| g.to_ascii_uppercase() == tok && tok.chars().next().is_some_and(|c| c.is_ascii_uppercase())).map(|i| (i, true))
    };
    let mut rels = Vec::new();
    for (base, src) in rels_src {
        let mut pos = base;
        for rel in src.split(',') {
            let mut word = Vec::new();
            let mut p = pos;
            for tok in rel.split(char::is_whitespace) {
                let tpos = p + rel[p - pos..].find(tok).unwrap_or(0);
                p = tpos + tok.len();
                if tok.is_empty() {
                    continue;
                }
                if tok == "1" {
                    continue;
                }
                if let Some(l) = lookup(tok) {
                    word.push(l);
                } else if single {
                    for (k, ch) in tok.char_indices() {
                        let l = lookup(&ch.to_string())
                            .ok_or_else(|| Error::parse(tpos + k, format!("unknown letter `{ch}`")))?;
                        word.push(l);
                    }
                } else {
                    return Err(Error::parse(tpos, format!("unknown letter `{tok}`")));
                }
            }
            if !rel.trim().is_empty() {
                rels.push(word);
            }
            pos += rel.len() + 1;
        }
    }
    let degrees = match deg_src {
        None => None,
        Some((base, src)) => {
            let mut d = vec![1; gens.len()];
            for item in src.split(',').filter(|s| !s.trim().is_empty()) {
                let (g, v) = item
                    .split_once('=')
                    .ok_or_else(|| Error::parse(base, format!("expected `gen=degree`, found `{}`", item.trim())))?;
                let i = gens
                    .iter()
                    .position(|x| x == g.trim())
                    .ok_or_else(|| Error::parse(base, format!("unknown generator `{}`", g.trim())))?;
                d[i] = v.trim().parse().map_err(|_| Error::parse(base, format!("bad degree `{}`", v.trim())))?;
            }
            Some(d)
        }
    };
    GroupPresentation::new(gens, rels, degrees)
}

/// ℤ[t^±1].
pub fn laurent_ring() -> GroupRing {
    GroupRing::laurent(CoeffRing::Z, "t").expect("valid label")
}

/// `∂w/∂x_j` mapped to ℤ[t^±1] through the degree map, using
/// `∂(uv) = ∂u + ab(u)·∂v`, `∂x = 1`, `∂x⁻¹ = −ab(x)⁻¹`.
pub fn fox_derivative(p: &GroupPresentation, w: &[FreeLetter], j: usize) -> Result<GroupRingElem> {
    if j >= p.gens.len() {
        return Err(Error::InvalidGroup(format!("no generator with index {j}")));
    }
    let ring = laurent_ring();
    let mut acc = ring.zero();
    let mut e = 0i64;
    for &(g, inv) in w {
        if g >= p.gens.len() {
            return Err(Error::InvalidGroup(format!("unknown generator index {g}")));
        }
        if inv {
            e -= p.degrees[g];
            if g == j {
                acc = ring.sub(&acc, &ring.monomial(GElt(vec![e]), int(1)));
            }
        } else {
            if g == j {
                acc = ring.add(&acc, &ring.monomial(GElt(vec![e]), int(1)));
            }
            e += p.degrees[g];
        }
    }
    Ok(acc)
}

/// Rows are relators, columns generators.
pub fn fox_jacobian(p: &GroupPresentation) -> Result<MatrixA> {
    let ring = laurent_ring();
    let rows = p
        .rels
        .iter()
        .map(|r| (0..p.gens.len()).map(|j| fox_derivative(p, r, j)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    MatrixA::from_rows(&ring, rows, p.gens.len())
}

/// Multiplies by `±t^k` so the lowest exponent is 0 and the leading
/// coefficient is positive.
pub fn normalize_delta(a: &GroupRingElem) -> GroupRingElem {
    let ring = a.ring().clone();
    let Some((lo, hi)) = a.degree_range() else { return a.clone() };
    let sign = if a.coeff_of(&GElt(vec![hi])).is_negative() { -1 } else { 1 };
    ring.mul(a, &ring.monomial(GElt(vec![-lo]), int(sign)))
}

fn invert_variable(a: &GroupRingElem) -> GroupRingElem {
    let ring = a.ring();
    ring.from_terms(a.terms().iter().map(|(g, c)| (GElt(vec![-g.0[0]]), c.clone()))).expect("same ring")
}

#[derive(Debug, Clone)]
pub struct AlexanderData {
    pub presentation: GroupPresentation,
    pub jacobian: MatrixA,
    pub deleted: usize,
    pub reduced: MatrixA,
    pub delta: Option<GroupRingElem>,
    pub delta_at_one: Option<Scalar>,
    pub symmetric: Option<bool>,
    /// Whether the reduced matrix lies in W(ℤ[t^±1], ℤ) for `t ↦ 1`.
    pub in_w: Option<bool>,
    pub localized: LocStructure,
    pub warnings: Vec<String>,
}

/// Fox Jacobian, Alexander polynomial from the matrix with one column
/// deleted, and the localized Alexander module.
pub fn alexander_pipeline(p: &GroupPresentation) -> Result<AlexanderData> {
    let jac = fox_jacobian(p)?;
    let ring = laurent_ring();
    let mut warnings = p.warnings.clone();
    let n = p.gens.len();
    if n == 0 {
        return Err(Error::Precondition("presentation has no generators".into()));
    }
    // the last generator of degree ±1
    let deleted = (0..n).rev().find(|&j| p.degrees[j].abs() == 1).unwrap_or(n - 1);
    let keep: Vec<usize> = (0..n).filter(|&j| j != deleted).collect();
    let reduced = jac.submatrix(&(0..jac.rows()).collect::<Vec<_>>(), &keep);
    let map = RingMap::augmentation(ring.clone(), CoeffRing::Z)?;
    let (delta, delta_at_one, symmetric, in_w) = if reduced.is_square() {
        let d = normalize_delta(&reduced.det()?);
        let at_one = map.apply(&d)?;
        let sym = normalize_delta(&invert_variable(&d)) == d;
        if d.is_zero() {
            warnings.push("Alexander polynomial is zero".into());
        } else {
            if !sym {
                warnings.push("Alexander polynomial is not symmetric under t -> t^-1".into());
            }
            if !CoeffRing::Z.is_unit(&at_one) {
                warnings.push(format!("Delta(1) = {} is not +-1; not a knot-shaped presentation", fmt_scalar(&at_one)));
            }
        }
        let in_w = w_membership(&reduced, &map)?.verdict;
        (Some(d), Some(at_one), Some(sym), Some(in_w))
    } else {
        warnings.push(format!(
            "reduced matrix is {}x{}, not square; Delta omitted",
            reduced.rows(),
            reduced.cols()
        ));
        (None, None, None, None)
    };
    let dset = DenomSet::new(map)?;
    let localized = module_localize(&FPModule::new(reduced.clone()), &dset)?.structure(None)?;
    Ok(AlexanderData {
        presentation: p.clone(),
        jacobian: jac,
        deleted,
        reduced,
        delta,
        delta_at_one,
        symmetric,
        in_w,
        localized,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta(text: &str) -> String {
        let p = parse_presentation(text).unwrap();
        alexander_pipeline(&p).unwrap().delta.unwrap().to_string()
    }

    #[test]
    fn parses_and_rejects() {
        let p = parse_presentation("gens x,y; rels x y x Y X Y").unwrap();
        assert_eq!(p.gens, vec!["x", "y"]);
        assert_eq!(p.rels[0].len(), 6);
        assert_eq!(parse_presentation("gens x,y; rels xyxYXY").unwrap(), p);
        assert_eq!(parse_presentation("# trefoil\ngens x,y\nrels\nx y x Y X Y\n").unwrap(), p);
        match parse_presentation("gens x,y\nrels x y\ny q") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 20),
            other => panic!("{other:?}"),
        }
        let free = parse_presentation("gens x; rels ").unwrap();
        assert!(free.rels.is_empty());
        match parse_presentation("gens x,y; rels x q") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 17),
            other => panic!("{other:?}"),
        }
        assert!(parse_presentation("gens x; rels x").is_err());
        let p = parse_presentation("gens x,y; rels x y Y x X X").unwrap();
        assert!(p.rels[0].is_empty() && !p.warnings.is_empty());
    }

    #[test]
    fn fox_examples() {
        let p = parse_presentation("gens x,y; rels ").unwrap();
        let ring = laurent_ring();
        assert_eq!(fox_derivative(&p, &[(0, false)], 0).unwrap(), ring.int(1));
        assert_eq!(fox_derivative(&p, &[(0, false), (1, false)], 1).unwrap().to_string(), "t");
        let comm = [(0, false), (1, false), (0, true), (1, true)];
        assert_eq!(fox_derivative(&p, &comm, 0).unwrap().to_string(), "-t + 1");
    }

    #[test]
    fn classic_polynomials() {
        assert_eq!(delta("gens x,y; rels x y x Y X Y"), "t^2 - t + 1");
        assert_eq!(delta("gens x; rels "), "1");
        assert_eq!(delta("gens x,y; rels x Y X y x Y x y X Y"), "t^2 - 3*t + 1");
        let p = parse_presentation("gens x,y; rels x y x Y X Y").unwrap();
        let a = alexander_pipeline(&p).unwrap();
        assert_eq!(a.delta_at_one, Some(int(1)));
        assert!(a.localized.is_zero && a.in_w == Some(true) && a.symmetric == Some(true));
    }
}
