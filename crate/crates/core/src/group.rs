//! Base groups G: trivial, free abelian of finite rank, or finite with an
//! explicit multiplication table.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A group element. Free-abelian elements are exponent vectors; finite-group
/// elements are a single table index; the trivial group uses the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GElt(pub Vec<i64>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTable {
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    gen_elems: Vec<usize>,
    /// Shortest word in the generators for every element, used for printing.
    names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Trivial,
    FreeAbelian { rank: usize },
    Finite(FiniteTable),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDesc {
    kind: GroupKind,
    gens: Vec<String>,
}

fn check_labels(labels: &[String]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        let mut chars = l.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::InvalidGroup(format!("bad generator label `{l}`")));
        }
        if labels[..i].contains(l) {
            return Err(Error::InvalidGroup(format!("duplicate generator label `{l}`")));
        }
    }
    Ok(())
}

impl GroupDesc {
    pub fn trivial() -> Self {
        GroupDesc { kind: GroupKind::Trivial, gens: vec![] }
    }

    pub fn free_abelian(labels: &[&str]) -> Result<Self> {
        let gens: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        if gens.is_empty() {
            return Err(Error::InvalidGroup("free abelian group needs rank >= 1".into()));
        }
        check_labels(&gens)?;
        Ok(GroupDesc { kind: GroupKind::FreeAbelian { rank: gens.len() }, gens })
    }

    /// Laurent ring variable `t` in rank one.
    pub fn infinite_cyclic(label: &str) -> Result<Self> {
        Self::free_abelian(&[label])
    }

    /// Builds a finite group from its table, checking associativity,
    /// identity and inverses exhaustively and that the listed generators
    /// generate.
    pub fn finite(
        mul: Vec<Vec<usize>>,
        identity: usize,
        inverse: Vec<usize>,
        generators: &[(&str, usize)],
    ) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not n x n with entries below n".into()));
        }
        if identity >= n || inverse.len() != n || inverse.iter().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("identity or inverse table out of range".into()));
        }
        for a in 0..n {
            if mul[identity][a] != a || mul[a][identity] != a {
                return Err(Error::InvalidGroup(format!("element {identity} is not a two-sided identity")));
            }
            if mul[a][inverse[a]] != identity || mul[inverse[a]][a] != identity {
                return Err(Error::InvalidGroup(format!("inverse table wrong at {a}")));
            }
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let gens: Vec<String> = generators.iter().map(|(l, _)| l.to_string()).collect();
        check_labels(&gens)?;
        let gen_elems: Vec<usize> = generators.iter().map(|&(_, e)| e).collect();
        if gen_elems.iter().any(|&e| e >= n) {
            return Err(Error::InvalidGroup("generator index out of range".into()));
        }
        // shortest words by BFS, generators tried in declaration order
        let mut names: Vec<Option<String>> = vec![None; n];
        let mut words: Vec<Vec<usize>> = vec![vec![]; n];
        names[identity] = Some("1".into());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in gen_elems.iter().enumerate() {
                let y = mul[x][g];
                if names[y].is_none() {
                    let mut w = words[x].clone();
                    w.push(gi);
                    names[y] = Some(format_gen_word(&w, &gens));
                    words[y] = w;
                    queue.push_back(y);
                }
            }
        }
        let names = names
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidGroup("generators do not generate the table".into()))?;
        Ok(GroupDesc {
            kind: GroupKind::Finite(FiniteTable { mul, identity, inverse, gen_elems, names }),
            gens,
        })
    }

    /// ℤ/n with generator `label`, elements `0..n` meaning `label^i`.
    pub fn cyclic(n: usize, label: &str) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let inverse = (0..n).map(|a| (n - a) % n).collect();
        let gen = if n == 1 { 0 } else { 1 };
        Self::finite(mul, 0, inverse, &[(label, gen)])
    }

    /// Dihedral group of order 2n with rotation `r` and reflection `s`;
    /// element `k + n*e` is `r^k s^e`.
    pub fn dihedral(n: usize, r: &str, s: &str) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGroup("dihedral group needs n >= 2".into()));
        }
        let decode = |x: usize| (x % n, x / n);
        let encode = |k: usize, e: usize| k % n + n * e;
        let mut mul = vec![vec![0; 2 * n]; 2 * n];
        for (a, row) in mul.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                let (k1, e1) = decode(a);
                let (k2, e2) = decode(b);
                // r^k1 s^e1 r^k2 s^e2 = r^(k1 ± k2) s^(e1+e2)
                let k = if e1 == 0 { k1 + k2 } else { k1 + n - k2 };
                *slot = encode(k, (e1 + e2) % 2);
            }
        }
        let inverse = (0..2 * n)
            .map(|x| {
                let (k, e) = decode(x);
                if e == 0 { encode(n - k, 0) } else { x }
            })
            .collect();
        Self::finite(mul, 0, inverse, &[(r, 1), (s, n)])
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn generators(&self) -> &[String] {
        &self.gens
    }

    pub fn gen_index(&self, label: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == label)
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.kind, GroupKind::Trivial)
            || matches!(&self.kind, GroupKind::Finite(t) if t.mul.len() == 1)
    }

    pub fn rank(&self) -> Option<usize> {
        match self.kind {
            GroupKind::FreeAbelian { rank } => Some(rank),
            GroupKind::Trivial => Some(0),
            GroupKind::Finite(_) => None,
        }
    }

    pub fn order(&self) -> Option<usize> {
        match &self.kind {
            GroupKind::Trivial => Some(1),
            GroupKind::FreeAbelian { .. } => None,
            GroupKind::Finite(t) => Some(t.mul.len()),
        }
    }

    pub fn is_abelian(&self) -> bool {
        match &self.kind {
            GroupKind::Finite(t) => {
                let n = t.mul.len();
                (0..n).all(|a| (0..n).all(|b| t.mul[a][b] == t.mul[b][a]))
            }
            _ => true,
        }
    }

    pub fn identity(&self) -> GElt {
        match &self.kind {
            GroupKind::Trivial => GElt(vec![]),
            GroupKind::FreeAbelian { rank } => GElt(vec![0; *rank]),
            GroupKind::Finite(t) => GElt(vec![t.identity as i64]),
        }
    }

    pub fn is_identity(&self, g: &GElt) -> bool {
        *g == self.identity()
    }

    pub fn generator(&self, i: usize) -> GElt {
        match &self.kind {
            GroupKind::Trivial => GElt(vec![]),
            GroupKind::FreeAbelian { rank } => {
                let mut v = vec![0; *rank];
                v[i] = 1;
                GElt(v)
            }
            GroupKind::Finite(t) => GElt(vec![t.gen_elems[i] as i64]),
        }
    }

    pub fn contains(&self, g: &GElt) -> bool {
        match &self.kind {
            GroupKind::Trivial => g.0.is_empty(),
            GroupKind::FreeAbelian { rank } => g.0.len() == *rank,
            GroupKind::Finite(t) => g.0.len() == 1 && g.0[0] >= 0 && (g.0[0] as usize) < t.mul.len(),
        }
    }

    pub fn mul(&self, a: &GElt, b: &GElt) -> GElt {
        match &self.kind {
            GroupKind::Trivial => GElt(vec![]),
            GroupKind::FreeAbelian { .. } => GElt(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()),
            GroupKind::Finite(t) => GElt(vec![t.mul[a.0[0] as usize][b.0[0] as usize] as i64]),
        }
    }

    pub fn inv(&self, a: &GElt) -> GElt {
        match &self.kind {
            GroupKind::Trivial => GElt(vec![]),
            GroupKind::FreeAbelian { .. } => GElt(a.0.iter().map(|x| -x).collect()),
            GroupKind::Finite(t) => GElt(vec![t.inverse[a.0[0] as usize] as i64]),
        }
    }

    pub fn pow(&self, a: &GElt, e: i64) -> GElt {
        let base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// All elements, for finite groups.
    pub fn elements(&self) -> Option<Vec<GElt>> {
        match &self.kind {
            GroupKind::Trivial => Some(vec![GElt(vec![])]),
            GroupKind::FreeAbelian { .. } => None,
            GroupKind::Finite(t) => Some((0..t.mul.len()).map(|i| GElt(vec![i as i64])).collect()),
        }
    }

    /// Writes `g` as a monomial in the generator labels (`1` for identity).
    pub fn format_elt(&self, g: &GElt) -> String {
        match &self.kind {
            GroupKind::Trivial => "1".into(),
            GroupKind::FreeAbelian { .. } => {
                let parts: Vec<String> = g
                    .0
                    .iter()
                    .zip(&self.gens)
                    .filter(|(e, _)| **e != 0)
                    .map(|(&e, l)| if e == 1 { l.clone() } else { format!("{l}^{e}") })
                    .collect();
                if parts.is_empty() { "1".into() } else { parts.join("*") }
            }
            GroupKind::Finite(t) => t.names[g.0[0] as usize].clone(),
        }
    }

    /// Total degree of a free-abelian monomial (used for term ordering).
    pub fn degree(&self, g: &GElt) -> i64 {
        match self.kind {
            GroupKind::FreeAbelian { .. } => g.0.iter().sum(),
            _ => 0,
        }
    }

    /// Short textual name of the group, e.g. `t`, `t,u`, `C2:g`, `1`.
    pub fn header(&self) -> String {
        match &self.kind {
            GroupKind::Trivial => "1".into(),
            GroupKind::FreeAbelian { .. } => self.gens.join(","),
            GroupKind::Finite(t) => {
                let n = t.mul.len();
                if self.gens.len() == 1 {
                    format!("C{n}:{}", self.gens[0])
                } else if self.gens.len() == 2 && !self.is_abelian() {
                    format!("D{}:{}", n / 2, self.gens.join(","))
                } else {
                    format!("finite{n}:{}", self.gens.join(","))
                }
            }
        }
    }

    /// Parses a group header: `1`, `t`, `t1,t2`, `C<n>:g`, `D<n>:r,s`.
    pub fn parse_header(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "1" || t == "trivial" {
            return Ok(Self::trivial());
        }
        if let Some((head, labels)) = t.split_once(':') {
            let labels: Vec<&str> = labels.split(',').map(str::trim).collect();
            if let Some(n) = head.strip_prefix('C') {
                let n: usize = n.parse().map_err(|_| Error::parse(0, format!("bad order in `{t}`")))?;
                if labels.len() != 1 {
                    return Err(Error::parse(0, "cyclic group takes one generator label"));
                }
                return Self::cyclic(n, labels[0]);
            }
            if let Some(n) = head.strip_prefix('D') {
                let n: usize = n.parse().map_err(|_| Error::parse(0, format!("bad order in `{t}`")))?;
                if labels.len() != 2 {
                    return Err(Error::parse(0, "dihedral group takes two generator labels"));
                }
                return Self::dihedral(n, labels[0], labels[1]);
            }
            return Err(Error::parse(0, format!("unknown group `{t}`")));
        }
        let labels: Vec<&str> = t.split(',').map(str::trim).collect();
        Self::free_abelian(&labels)
    }
}

impl fmt::Display for GroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.header())
    }
}

fn format_gen_word(w: &[usize], gens: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let e = j - i;
        let l = &gens[w[i]];
        parts.push(if e == 1 { l.clone() } else { format!("{l}^{e}") });
        i = j;
    }
    parts.join("*")
}

/// A homomorphism G → G′ given by the images of the generators of G.
#[derive(Debug, Clone)]
pub struct GroupHom {
    pub source: GroupDesc,
    pub target: GroupDesc,
    images: Vec<GElt>,
    /// Value on every source element, for finite sources.
    table: Option<Vec<GElt>>,
}

impl GroupHom {
    pub fn new(source: GroupDesc, target: GroupDesc, images: Vec<GElt>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::InvalidMap("one image per source generator required".into()));
        }
        if images.iter().any(|g| !target.contains(g)) {
            return Err(Error::InvalidMap("image is not an element of the target".into()));
        }
        let mut table = None;
        match source.kind() {
            GroupKind::Trivial => {}
            GroupKind::FreeAbelian { .. } => {
                for a in &images {
                    for b in &images {
                        if target.mul(a, b) != target.mul(b, a) {
                            return Err(Error::InvalidMap("images of free abelian generators must commute".into()));
                        }
                    }
                }
            }
            GroupKind::Finite(t) => {
                let n = t.mul.len();
                let mut vals: Vec<Option<GElt>> = vec![None; n];
                vals[t.identity] = Some(target.identity());
                let mut queue = VecDeque::from([t.identity]);
                while let Some(x) = queue.pop_front() {
                    for (gi, &g) in t.gen_elems.iter().enumerate() {
                        let y = t.mul[x][g];
                        if vals[y].is_none() {
                            vals[y] = Some(target.mul(vals[x].as_ref().unwrap(), &images[gi]));
                            queue.push_back(y);
                        }
                    }
                }
                let vals: Vec<GElt> = vals.into_iter().map(Option::unwrap).collect();
                for a in 0..n {
                    for b in 0..n {
                        if vals[t.mul[a][b]] != target.mul(&vals[a], &vals[b]) {
                            return Err(Error::InvalidMap("generator images do not define a homomorphism".into()));
                        }
                    }
                }
                table = Some(vals);
            }
        }
        Ok(GroupHom { source, target, images, table })
    }

    pub fn identity(g: &GroupDesc) -> Self {
        let images = (0..g.generators().len()).map(|i| g.generator(i)).collect();
        GroupHom::new(g.clone(), g.clone(), images).expect("identity is a homomorphism")
    }

    pub fn images(&self) -> &[GElt] {
        &self.images
    }

    pub fn apply(&self, g: &GElt) -> GElt {
        match (self.source.kind(), &self.table) {
            (GroupKind::Finite(_), Some(tab)) => tab[g.0[0] as usize].clone(),
            (GroupKind::FreeAbelian { .. }, _) => {
                let mut acc = self.target.identity();
                for (e, img) in g.0.iter().zip(&self.images) {
                    acc = self.target.mul(&acc, &self.target.pow(img, *e));
                }
                acc
            }
            _ => self.target.identity(),
        }
    }

    /// Chosen preimages: for each target element reached, the first source
    /// element found by breadth-first search over generators and their
    /// inverses. Only available when the target is finite.
    pub fn section(&self) -> Result<BTreeMap<GElt, GElt>> {
        let elems = self
            .target
            .elements()
            .ok_or_else(|| Error::Unsupported("sections need a finite target group".into()))?;
        let mut found: BTreeMap<GElt, GElt> = BTreeMap::new();
        let start = self.source.identity();
        found.insert(self.apply(&start), start.clone());
        let mut queue = VecDeque::from([start]);
        let ngen = self.source.generators().len();
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(self.source.identity());
        while let Some(x) = queue.pop_front() {
            if found.len() == elems.len() {
                break;
            }
            for i in 0..ngen {
                for e in [1, -1] {
                    let y = self.source.mul(&x, &self.source.pow(&self.source.generator(i), e));
                    if seen.insert(y.clone()) {
                        found.entry(self.apply(&y)).or_insert_with(|| y.clone());
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(found)
    }

    pub fn is_onto(&self) -> Result<bool> {
        let n = self
            .target
            .order()
            .ok_or_else(|| Error::Unsupported("surjectivity check needs a finite target".into()))?;
        Ok(self.section()?.len() == n)
    }

    /// Generators of the kernel (Schreier generators for free-abelian
    /// sources, every nontrivial kernel element for finite sources).
    pub fn kernel_generators(&self) -> Result<Vec<GElt>> {
        match self.source.kind() {
            GroupKind::Trivial => Ok(vec![]),
            GroupKind::Finite(_) => Ok(self
                .source
                .elements()
                .unwrap()
                .into_iter()
                .filter(|g| !self.source.is_identity(g) && self.target.is_identity(&self.apply(g)))
                .collect()),
            GroupKind::FreeAbelian { .. } => {
                let reps = self.section()?;
                let mut out = Vec::new();
                for rep in reps.values() {
                    for i in 0..self.source.generators().len() {
                        let y = self.source.mul(rep, &self.source.generator(i));
                        let back = &reps[&self.apply(&y)];
                        let k = self.source.mul(&y, &self.source.inv(back));
                        if !self.source.is_identity(&k) && !out.contains(&k) {
                            out.push(k);
                        }
                    }
                }
                out.sort();
                Ok(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_associative_table() {
        // a loop that is not a group: x*y = (x - y) mod 3
        let mul = (0..3).map(|a| (0..3).map(|b| (a + 3 - b) % 3).collect()).collect();
        assert!(GroupDesc::finite(mul, 0, vec![0, 1, 2], &[("g", 1)]).is_err());
    }

    #[test]
    fn dihedral_is_nonabelian() {
        let d3 = GroupDesc::dihedral(3, "r", "s").unwrap();
        assert_eq!(d3.order(), Some(6));
        assert!(!d3.is_abelian());
        let r = d3.generator(0);
        let s = d3.generator(1);
        // s r s = r^-1
        assert_eq!(d3.mul(&d3.mul(&s, &r), &s), d3.inv(&r));
    }

    #[test]
    fn cyclic_names() {
        let c3 = GroupDesc::cyclic(3, "g").unwrap();
        let names: Vec<String> = c3.elements().unwrap().iter().map(|g| c3.format_elt(g)).collect();
        assert_eq!(names, ["1", "g", "g^2"]);
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(GroupDesc::free_abelian(&["t", "t"]).is_err());
    }

    #[test]
    fn kernel_of_z_onto_c2() {
        let z = GroupDesc::infinite_cyclic("t").unwrap();
        let c2 = GroupDesc::cyclic(2, "g").unwrap();
        let f = GroupHom::new(z.clone(), c2.clone(), vec![c2.generator(0)]).unwrap();
        assert!(f.is_onto().unwrap());
        assert_eq!(f.kernel_generators().unwrap(), vec![GElt(vec![2])]);
    }
}
