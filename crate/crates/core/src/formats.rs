//! Text file formats for matrices, module elements, chain complexes, chain
//! maps, G-group presentations and stage schedules.
//!
//! Every format is a sequence of statements separated by newlines or `;`,
//! with `#` starting a comment. A statement starting with a keyword opens a
//! section; other statements are data rows for the current section.

use crate::chainloc::{ChainComplex, ChainMap};
use crate::cohn::DenomSet;
use crate::error::{Error, Result};
use crate::ggroup::stages::{phi_stage, psi_stage, PhiDiagram, PsiTriple, Stage, StageSchedule};
use crate::ggroup::{parse_word, FPGGroup, GGroupHom, Word};
use crate::group::GroupDesc;
use crate::groupring::{GroupRing, RingMap};
use crate::modloc::{LocModule, LocModuleElem};
use crate::parse::{parse_elem, parse_frac};
use crate::wclass::MatrixA;

#[derive(Debug, Clone, Copy)]
struct Stmt<'a> {
    offset: usize,
    text: &'a str,
}

impl<'a> Stmt<'a> {
    fn keyword(&self) -> &'a str {
        self.text.split_whitespace().next().unwrap_or("")
    }

    /// Text after the keyword, with its offset.
    fn rest(&self) -> (usize, &'a str) {
        let kw = self.keyword();
        let after = &self.text[kw.len()..];
        let lead = after.len() - after.trim_start().len();
        (self.offset + kw.len() + lead, after.trim())
    }
}

fn statements(text: &str) -> Vec<Stmt<'_>> {
    let mut out = Vec::new();
    let mut line_start = 0;
    for line in text.split('\n') {
        let body = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        let mut off = line_start;
        for part in body.split(';') {
            let lead = part.len() - part.trim_start().len();
            let t = part.trim();
            if !t.is_empty() {
                out.push(Stmt { offset: off + lead, text: t });
            }
            off += part.len() + 1;
        }
        line_start += line.len() + 1;
    }
    out
}

/// Splits at commas outside parentheses, keeping offsets.
fn split_top(text: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((base + start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((base + start, &text[start..]));
    out.into_iter()
        .map(|(o, s)| (o + s.len() - s.trim_start().len(), s.trim()))
        .filter(|(_, s)| !s.is_empty())
        .collect()
}

fn parse_usizes(text: &str, base: usize) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| Error::parse(base, format!("expected a non-negative integer, found `{s}`"))))
        .collect()
}

fn parse_ring_stmt(st: &Stmt) -> Result<GroupRing> {
    let (off, rest) = st.rest();
    GroupRing::parse_header(rest).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(off, message),
        other => Error::parse(off, other.to_string()),
    })
}

/// Data rows into a `rows × cols` matrix; entries separated by commas.
fn matrix_from_rows(ring: &GroupRing, rows: usize, cols: usize, data: &[Stmt], at: usize) -> Result<MatrixA> {
    let data: Vec<&Stmt> = data.iter().collect();
    if rows == 0 || cols == 0 {
        if let Some(st) = data.first() {
            return Err(Error::parse(st.offset, "unexpected entries for an empty matrix"));
        }
        return Ok(MatrixA::zero(ring, rows, cols));
    }
    if data.len() != rows {
        return Err(Error::parse(
            data.get(rows).map(|s| s.offset).unwrap_or(at),
            format!("expected {rows} rows, found {}", data.len()),
        ));
    }
    let mut out = Vec::with_capacity(rows);
    for st in data {
        let entries = split_top(st.text, st.offset);
        if entries.len() != cols {
            return Err(Error::parse(st.offset, format!("expected {cols} entries, found {}", entries.len())));
        }
        out.push(entries.iter().map(|(o, s)| parse_elem(ring, s, *o)).collect::<Result<Vec<_>>>()?);
    }
    MatrixA::from_rows(ring, out, cols)
}

/// ```text
/// ring Z[t]
/// 2 2
/// 2t - 1, 0
/// 0, 1
/// ```
/// The `ring` line is optional and defaults to `Z[t]`.
pub fn parse_matrix_file(text: &str) -> Result<MatrixA> {
    let sts = statements(text);
    let mut i = 0;
    let ring = if sts.first().is_some_and(|s| s.keyword() == "ring") {
        i = 1;
        parse_ring_stmt(&sts[0])?
    } else {
        GroupRing::parse_header("Z[t]")?
    };
    let head = sts.get(i).ok_or_else(|| Error::parse(text.len(), "missing `rows cols` line"))?;
    let dims = parse_usizes(head.text, head.offset)?;
    if dims.len() != 2 {
        return Err(Error::parse(head.offset, "expected `rows cols`"));
    }
    matrix_from_rows(&ring, dims[0], dims[1], &sts[i + 1..], head.offset)
}

/// One element of `M ⊗ Λ` per statement, entries are fractions separated
/// by commas.
pub fn parse_elements(m: &LocModule, text: &str) -> Result<Vec<LocModuleElem>> {
    let d: &DenomSet = &m.dset;
    statements(text)
        .iter()
        .map(|st| {
            let entries = split_top(st.text, st.offset)
                .iter()
                .map(|(o, s)| d.from_raw(parse_frac(d.ring(), s, *o)?))
                .collect::<Result<Vec<_>>>()?;
            m.elem(entries).map_err(|e| Error::parse(st.offset, e.to_string()))
        })
        .collect()
}

fn parse_complex_body(ring: &GroupRing, sts: &[Stmt], at: usize) -> Result<ChainComplex> {
    let mut degrees: Option<usize> = None;
    let mut ranks: Option<Vec<usize>> = None;
    let mut blocks: Vec<(usize, usize, Vec<Stmt>)> = Vec::new();
    for st in sts {
        let kw = st.keyword();
        if kw == "degrees" {
            let (o, r) = st.rest();
            degrees = Some(*parse_usizes(r, o)?.first().ok_or_else(|| Error::parse(o, "expected N"))?);
        } else if kw == "ranks" {
            let (o, r) = st.rest();
            ranks = Some(parse_usizes(r, o)?);
        } else if let Some(n) = kw.strip_prefix('d').and_then(|n| n.parse::<usize>().ok()) {
            blocks.push((st.offset, n, vec![]));
        } else if let Some(b) = blocks.last_mut() {
            b.2.push(*st);
        } else {
            return Err(Error::parse(st.offset, format!("unexpected `{}`", st.text)));
        }
    }
    let ranks = ranks.ok_or_else(|| Error::parse(at, "missing `ranks` line"))?;
    if let Some(n) = degrees {
        if ranks.len() != n + 1 {
            return Err(Error::parse(at, format!("`degrees {n}` needs {} ranks", n + 1)));
        }
    }
    let mut d: Vec<MatrixA> = (1..ranks.len()).map(|n| MatrixA::zero(ring, ranks[n - 1], ranks[n])).collect();
    for (off, n, data) in blocks {
        if n == 0 || n >= ranks.len() {
            return Err(Error::parse(off, format!("no boundary d{n} in a complex of length {}", ranks.len())));
        }
        d[n - 1] = matrix_from_rows(ring, ranks[n - 1], ranks[n], &data, off)?;
    }
    ChainComplex::new(ring.clone(), ranks, d)
}

/// ```text
/// ring Z[t]
/// degrees 1
/// ranks 1 1
/// d1
/// t - 1
/// ```
pub fn parse_complex_file(text: &str) -> Result<ChainComplex> {
    let sts = statements(text);
    let (ring, rest) = match sts.first() {
        Some(s) if s.keyword() == "ring" => (parse_ring_stmt(s)?, &sts[1..]),
        _ => (GroupRing::parse_header("Z[t]")?, &sts[..]),
    };
    parse_complex_body(&ring, rest, 0)
}

/// ```text
/// ring Z[t]
/// source
/// ranks 0
/// target
/// ranks 1 1
/// d1
/// 2t - 1
/// map
/// f0
/// ...
/// ```
/// Omitted components are zero.
pub fn parse_chain_map_file(text: &str) -> Result<ChainMap> {
    let sts = statements(text);
    let (ring, rest) = match sts.first() {
        Some(s) if s.keyword() == "ring" => (parse_ring_stmt(s)?, &sts[1..]),
        _ => (GroupRing::parse_header("Z[t]")?, &sts[..]),
    };
    let mut sections: Vec<(&str, usize, Vec<Stmt>)> = Vec::new();
    for st in rest {
        match st.text {
            "source" | "target" | "map" => sections.push((st.text, st.offset, vec![])),
            _ => match sections.last_mut() {
                Some(s) => s.2.push(*st),
                None => return Err(Error::parse(st.offset, "expected `source`")),
            },
        }
    }
    let find = |name: &str| sections.iter().find(|s| s.0 == name);
    let (_, so, ss) = find("source").ok_or_else(|| Error::parse(0, "missing `source` section"))?;
    let (_, to, ts) = find("target").ok_or_else(|| Error::parse(0, "missing `target` section"))?;
    let source = parse_complex_body(&ring, ss, *so)?;
    let target = parse_complex_body(&ring, ts, *to)?;
    let len = source.len().max(target.len());
    let mut comps: Vec<MatrixA> = (0..len).map(|n| MatrixA::zero(&ring, target.rank(n), source.rank(n))).collect();
    if let Some((_, _, ms)) = find("map") {
        let mut blocks: Vec<(usize, usize, Vec<Stmt>)> = Vec::new();
        for st in ms {
            if let Some(n) = st.keyword().strip_prefix('f').and_then(|n| n.parse::<usize>().ok()) {
                blocks.push((st.offset, n, vec![]));
            } else if let Some(b) = blocks.last_mut() {
                b.2.push(*st);
            } else {
                return Err(Error::parse(st.offset, "expected a component `f<n>`"));
            }
        }
        for (off, n, data) in blocks {
            if n >= len {
                return Err(Error::parse(off, format!("no degree {n}")));
            }
            comps[n] = matrix_from_rows(&ring, target.rank(n), source.rank(n), &data, off)?;
        }
    }
    ChainMap::new(source, target, comps)
}

fn parse_header_stmt(st: &Stmt) -> Result<GroupDesc> {
    let (off, rest) = st.rest();
    GroupDesc::parse_header(rest).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(off, message),
        other => Error::parse(off, other.to_string()),
    })
}

fn symbol_list(text: &str, base: usize) -> Result<Vec<String>> {
    split_top(text, base)
        .into_iter()
        .map(|(o, s)| {
            let ok = s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if ok { Ok(s.to_string()) } else { Err(Error::parse(o, format!("bad symbol `{s}`"))) }
        })
        .collect()
}

/// ```text
/// group t
/// gens s, v
/// rels (s,t)(s,1)^-2; (v,1)(s,1)^-1
/// ```
/// Statements after `rels` that start with no keyword are further relators.
pub fn parse_ggroup_file(text: &str) -> Result<FPGGroup> {
    let sts = statements(text);
    let mut base: Option<GroupDesc> = None;
    let mut gens: Option<Vec<String>> = None;
    let mut rels_src: Vec<(usize, &str)> = Vec::new();
    let mut in_rels = false;
    for st in &sts {
        match st.keyword() {
            "group" => {
                base = Some(parse_header_stmt(st)?);
                in_rels = false;
            }
            "gens" => {
                let (o, r) = st.rest();
                gens = Some(symbol_list(r, o)?);
                in_rels = false;
            }
            "rels" => {
                let (o, r) = st.rest();
                if !r.is_empty() {
                    rels_src.push((o, r));
                }
                in_rels = true;
            }
            _ if in_rels => rels_src.push((st.offset, st.text)),
            _ => return Err(Error::parse(st.offset, format!("unexpected `{}`", st.text))),
        }
    }
    let base = base.unwrap_or_else(GroupDesc::trivial);
    let gens = gens.ok_or_else(|| Error::parse(text.len(), "missing `gens` line"))?;
    let rels = rels_src.iter().map(|(o, s)| parse_word(&base, &gens, s, *o)).collect::<Result<Vec<_>>>()?;
    FPGGroup::new(base, gens, rels)
}

#[derive(Debug, Clone)]
struct RawEntry<'a> {
    offset: usize,
    kind: &'a str,
    source: Vec<String>,
    target: Vec<String>,
    /// `(key, symbol, word, offset)` for `alpha u = ...` lines.
    maps: Vec<(&'a str, String, &'a str, usize)>,
}

fn images(entry: &RawEntry, key: &str, syms: &[String], group: &GroupDesc, alphabet: &[String]) -> Result<Vec<Word>> {
    syms.iter()
        .map(|s| {
            let (_, _, w, o) = entry
                .maps
                .iter()
                .find(|(k, sym, _, _)| *k == key && sym == s)
                .ok_or_else(|| Error::parse(entry.offset, format!("missing `{key} {s} = ...`")))?;
            parse_word(group, alphabet, w, *o)
        })
        .collect()
}

/// ```text
/// stage phi
/// diagram
/// source u
/// target v
/// alpha u = (v,t)(v,1)^-2
/// beta u = (s,1)
/// stage psi
/// triple
/// source u
/// target v
/// alpha u = (v,1)
/// gamma v = (a,1)
/// gamma2 v = (b,1)
/// ```
/// β and γ words refer to the generators of the group reached so far, so
/// stages are resolved in order against Γ.
pub fn parse_schedule_file(text: &str, gamma: &FPGGroup, map: &RingMap) -> Result<StageSchedule> {
    let sts = statements(text);
    let mut stages: Vec<(usize, &str, Vec<RawEntry>)> = Vec::new();
    for st in &sts {
        let kw = st.keyword();
        match kw {
            "stage" => {
                let (o, r) = st.rest();
                if r != "phi" && r != "psi" {
                    return Err(Error::parse(o, "expected `phi` or `psi`"));
                }
                stages.push((st.offset, r, vec![]));
            }
            "diagram" | "triple" => {
                let (off, kind, entries) = stages.last_mut().ok_or_else(|| Error::parse(st.offset, "entry before any `stage`"))?;
                let want = if *kind == "phi" { "diagram" } else { "triple" };
                if kw != want {
                    return Err(Error::parse(st.offset, format!("stage at offset {off} takes `{want}` entries")));
                }
                entries.push(RawEntry { offset: st.offset, kind: kw, source: vec![], target: vec![], maps: vec![] });
            }
            _ => {
                let entry = stages
                    .last_mut()
                    .and_then(|s| s.2.last_mut())
                    .ok_or_else(|| Error::parse(st.offset, format!("unexpected `{}`", st.text)))?;
                let (o, r) = st.rest();
                match kw {
                    "source" => entry.source = symbol_list(r, o)?,
                    "target" => entry.target = symbol_list(r, o)?,
                    "alpha" | "beta" | "gamma" | "gamma2" => {
                        let (sym, word) = r.split_once('=').ok_or_else(|| Error::parse(o, "expected `name sym = word`"))?;
                        let wo = o + sym.len() + 1 + (word.len() - word.trim_start().len());
                        entry.maps.push((kw, sym.trim().to_string(), word.trim(), wo));
                    }
                    _ => return Err(Error::parse(st.offset, format!("unknown keyword `{kw}`"))),
                }
            }
        }
    }
    let g = &gamma.base;
    let mut cur = gamma.clone();
    let mut out = Vec::new();
    for (i, (_, kind, entries)) in stages.iter().enumerate() {
        let ctx = format!("stage {}", i + 1);
        let mut alphas = Vec::new();
        for e in entries {
            let fu = FPGGroup::new(g.clone(), e.source.clone(), vec![])?;
            let fv = FPGGroup::new(g.clone(), e.target.clone(), vec![])?;
            let a = images(e, "alpha", &e.source, g, &e.target)?;
            alphas.push(GGroupHom::between_free(&fu, &fv, a).map_err(|x| x.context(&ctx))?);
        }
        let stage = if *kind == "phi" {
            let j = entries
                .iter()
                .zip(alphas)
                .map(|(e, alpha)| Ok(PhiDiagram { alpha, beta: images(e, "beta", &e.source, g, &cur.gens)? }))
                .collect::<Result<Vec<_>>>()?;
            cur = phi_stage(&cur, &j).map_err(|x| x.context(&ctx))?.group;
            Stage::Phi(j)
        } else {
            let j = entries
                .iter()
                .zip(alphas)
                .map(|(e, alpha)| {
                    Ok(PsiTriple {
                        alpha,
                        gamma: images(e, "gamma", &e.target, g, &cur.gens)?,
                        gamma2: images(e, "gamma2", &e.target, g, &cur.gens)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            cur = psi_stage(&cur, &j).map_err(|x| x.context(&ctx))?.group;
            Stage::Psi(j)
        };
        debug_assert!(entries.iter().all(|e| e.kind == "diagram" || e.kind == "triple"));
        out.push(stage);
    }
    StageSchedule::new(out, map.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CoeffRing;

    #[test]
    fn matrix_files() {
        let m = parse_matrix_file("ring Z[t]\n2 2\n2t-1, 0\n0, 1\n").unwrap();
        assert_eq!(m.to_string(), "[2*t - 1, 0; 0, 1]");
        let m = parse_matrix_file("1 1; t - 2  # comment").unwrap();
        assert_eq!(m.to_string(), "[t - 2]");
        match parse_matrix_file("ring Z[t]\n1 2\nt, q\n") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 17),
            other => panic!("{other:?}"),
        }
        assert!(parse_matrix_file("2 2\n1, 0\n").is_err());
    }

    #[test]
    fn complex_and_map_files() {
        let c = parse_complex_file("ring Z[t]\ndegrees 1\nranks 1 1\nd1\nt - 1\n").unwrap();
        assert_eq!(c.ranks, vec![1, 1]);
        let f = parse_chain_map_file("source\nranks 0\ntarget\nranks 1 1\nd1\n2t-1\n").unwrap();
        assert_eq!(f.target.d[0].to_string(), "[2*t - 1]");
        let f = parse_chain_map_file("source\nranks 1\ntarget\nranks 1\nmap\nf0\nt\n").unwrap();
        assert_eq!(f.comps[0].to_string(), "[t]");
    }

    #[test]
    fn ggroup_and_schedule_files() {
        let g = parse_ggroup_file("group t\ngens s\nrels (s,t)(s,1)^-2\n").unwrap();
        assert_eq!(g.relator_strings(), vec!["(s,t)(s,1)^-2"]);
        let map = RingMap::augmentation(GroupRing::new(g.base.clone(), CoeffRing::Z), CoeffRing::Z).unwrap();
        let sched = parse_schedule_file(
            "stage phi\ndiagram\nsource u\ntarget v\nalpha u = (v,t)(v,1)^-2\nbeta u = (s,1)\n",
            &g,
            &map,
        )
        .unwrap();
        assert_eq!(sched.stages.len(), 1);
        let bad = parse_schedule_file("stage phi\ndiagram\nsource u\ntarget v\nalpha u = (v,1)(v,t)\nbeta u = s\n", &g, &map);
        assert!(matches!(bad, Err(Error::Precondition(_))));
        assert!(parse_schedule_file("stage phi\ndiagram\nsource u\ntarget v\nbeta u = s\n", &g, &map).is_err());
    }
}
