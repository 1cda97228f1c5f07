//! Finite G-groups as test targets and brute-force hom counting.

use super::{FPGGroup, Word};
use crate::error::{Error, Result};
use crate::group::{GElt, GroupDesc, GroupKind};

/// A finite group H with a right action of G by automorphisms.
#[derive(Debug, Clone)]
pub struct FiniteGGroup {
    pub h: GroupDesc,
    pub base: GroupDesc,
    /// For each generator of G, the permutation `x ↦ x·g` of H's indices.
    gen_perms: Vec<Vec<usize>>,
    /// Permutation for every element of a finite G.
    table: Vec<Vec<usize>>,
}

fn idx(g: &GElt) -> usize {
    g.0.first().copied().unwrap_or(0) as usize
}

fn elt(h: &GroupDesc, i: usize) -> GElt {
    if h.is_trivial() { h.identity() } else { GElt(vec![i as i64]) }
}

fn hmul(h: &GroupDesc, a: usize, b: usize) -> usize {
    idx(&h.mul(&elt(h, a), &elt(h, b)))
}

fn is_automorphism(h: &GroupDesc, p: &[usize]) -> bool {
    let n = p.len();
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    (0..n).all(|a| (0..n).all(|b| p[hmul(h, a, b)] == hmul(h, p[a], p[b])))
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // x ↦ q(p(x))
    p.iter().map(|&x| q[x]).collect()
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x] = i;
    }
    out
}

impl FiniteGGroup {
    /// Validates that every permutation is an automorphism of H and that
    /// the assignment extends to an action of G.
    pub fn new(h: GroupDesc, base: GroupDesc, gen_perms: Vec<Vec<usize>>) -> Result<Self> {
        let n = h.order().ok_or_else(|| Error::InvalidGroup("target group must be finite".into()))?;
        if gen_perms.len() != base.generators().len() {
            return Err(Error::InvalidMap("one permutation per generator of G required".into()));
        }
        if gen_perms.iter().any(|p| p.len() != n || !is_automorphism(&h, p)) {
            return Err(Error::InvalidMap("action must be by automorphisms".into()));
        }
        let mut out = FiniteGGroup { h, base, gen_perms, table: vec![] };
        match out.base.kind() {
            GroupKind::Trivial => {}
            GroupKind::FreeAbelian { .. } => {
                for p in &out.gen_perms {
                    for q in &out.gen_perms {
                        if compose(p, q) != compose(q, p) {
                            return Err(Error::InvalidMap("generators of a free abelian group must act commutingly".into()));
                        }
                    }
                }
            }
            GroupKind::Finite(_) => {
                let elems = out.base.elements().unwrap();
                let mut table: Vec<Option<Vec<usize>>> = vec![None; elems.len()];
                let e = out.base.identity();
                table[idx(&e)] = Some((0..n).collect());
                let mut queue = std::collections::VecDeque::from([e]);
                while let Some(x) = queue.pop_front() {
                    for (i, p) in out.gen_perms.iter().enumerate() {
                        let y = out.base.mul(&x, &out.base.generator(i));
                        if table[idx(&y)].is_none() {
                            table[idx(&y)] = Some(compose(table[idx(&x)].as_ref().unwrap(), p));
                            queue.push_back(y);
                        }
                    }
                }
                out.table = table.into_iter().map(Option::unwrap).collect();
                for a in &elems {
                    for b in &elems {
                        let ab = out.base.mul(a, b);
                        if (0..n).any(|x| out.act(x, &ab) != out.act(out.act(x, a), b)) {
                            return Err(Error::InvalidMap("permutations do not define a G-action".into()));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn trivial_action(h: GroupDesc, base: GroupDesc) -> Result<Self> {
        let n = h.order().unwrap_or(0);
        let perms = vec![(0..n).collect(); base.generators().len()];
        Self::new(h, base, perms)
    }

    pub fn order(&self) -> usize {
        self.h.order().unwrap()
    }

    /// `x·g` for an element index `x` of H.
    pub fn act(&self, x: usize, g: &GElt) -> usize {
        match self.base.kind() {
            GroupKind::Trivial => x,
            GroupKind::FreeAbelian { .. } => {
                let mut y = x;
                for (e, p) in g.0.iter().zip(&self.gen_perms) {
                    let q = if *e < 0 { invert(p) } else { p.clone() };
                    for _ in 0..e.unsigned_abs() {
                        y = q[y];
                    }
                }
                y
            }
            GroupKind::Finite(_) => self.table[idx(g)][x],
        }
    }

    /// Value of a word under the assignment `(s, 1) ↦ values[s]`.
    pub fn eval(&self, gens: &[String], values: &[usize], w: &Word) -> usize {
        let mut acc = idx(&self.h.identity());
        for l in &w.0 {
            let s = gens.iter().position(|x| *x == l.sym).expect("generator");
            let mut v = self.act(values[s], &l.g);
            if l.inv {
                v = idx(&self.h.inv(&elt(&self.h, v)));
            }
            acc = hmul(&self.h, acc, v);
        }
        acc
    }

    pub fn is_identity(&self, x: usize) -> bool {
        x == idx(&self.h.identity())
    }

    pub fn describe(&self) -> String {
        format!("{} with action {:?}", self.h.header(), self.gen_perms)
    }
}

/// Every assignment of the generators of Γ to H killing all relators,
/// in lexicographic order.
pub fn hom_assignments(gamma: &FPGGroup, target: &FiniteGGroup) -> Result<Vec<Vec<usize>>> {
    if gamma.base != target.base {
        return Err(Error::InvalidMap("G-group and target have different base groups".into()));
    }
    let n = target.order();
    let k = gamma.gens.len();
    let mut out = Vec::new();
    let mut vals = vec![0usize; k];
    loop {
        if gamma.rels.iter().all(|r| target.is_identity(target.eval(&gamma.gens, &vals, r))) {
            out.push(vals.clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            vals[i] += 1;
            if vals[i] < n {
                break;
            }
            vals[i] = 0;
        }
    }
}

pub fn count_homs(gamma: &FPGGroup, target: &FiniteGGroup) -> Result<usize> {
    Ok(hom_assignments(gamma, target)?.len())
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// All automorphisms of a finite group, by brute force over bijections
/// fixing the identity.
pub fn automorphisms(h: &GroupDesc) -> Vec<Vec<usize>> {
    let n = h.order().unwrap_or(1);
    let e = idx(&h.identity());
    let rest: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    permutations(&rest)
        .into_iter()
        .map(|p| {
            let mut full = Vec::with_capacity(n);
            let mut it = p.into_iter();
            for x in 0..n {
                full.push(if x == e { e } else { it.next().unwrap() });
            }
            full
        })
        .filter(|p| is_automorphism(h, p))
        .collect()
}

/// The groups of order at most 6, up to isomorphism.
pub fn small_groups() -> Vec<GroupDesc> {
    let klein = {
        let mul = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        GroupDesc::finite(mul, 0, vec![0, 1, 2, 3], &[("a", 1), ("b", 2)]).unwrap()
    };
    vec![
        GroupDesc::cyclic(1, "e").unwrap(),
        GroupDesc::cyclic(2, "x").unwrap(),
        GroupDesc::cyclic(3, "x").unwrap(),
        GroupDesc::cyclic(4, "x").unwrap(),
        klein,
        GroupDesc::cyclic(5, "x").unwrap(),
        GroupDesc::cyclic(6, "x").unwrap(),
        GroupDesc::dihedral(3, "r", "s").unwrap(),
    ]
}

/// Every G-action by automorphisms on every group of order at most 6.
/// G must be trivial, finite or free abelian.
pub fn small_ggroups(base: &GroupDesc) -> Vec<FiniteGGroup> {
    let mut out = Vec::new();
    for h in small_groups() {
        let autos = automorphisms(&h);
        let k = base.generators().len();
        let mut choice = vec![0usize; k];
        loop {
            let perms: Vec<Vec<usize>> = choice.iter().map(|&i| autos[i].clone()).collect();
            if let Ok(t) = FiniteGGroup::new(h.clone(), base.clone(), perms) {
                out.push(t);
            }
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < autos.len() {
                    break;
                }
                choice[i] = 0;
            }
            if choice.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automorphism_counts() {
        let counts: Vec<usize> = small_groups().iter().map(|h| automorphisms(h).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 2, 6, 4, 2, 6]);
    }

    #[test]
    fn involutive_actions() {
        let c2 = GroupDesc::cyclic(2, "g").unwrap();
        // actions of C2 = automorphisms of order dividing 2
        let n: usize = small_ggroups(&c2).len();
        assert_eq!(n, 1 + 1 + 2 + 2 + 4 + 2 + 2 + 4);
        assert_eq!(small_ggroups(&GroupDesc::trivial()).len(), 8);
    }

    #[test]
    fn counts_free_and_relators() {
        let triv = GroupDesc::trivial();
        let c3 = FiniteGGroup::trivial_action(GroupDesc::cyclic(3, "x").unwrap(), triv.clone()).unwrap();
        let f2 = FPGGroup::free(&["a", "b"], &triv).unwrap();
        assert_eq!(count_homs(&f2, &c3).unwrap(), 9);
        let g = FPGGroup::new(triv, f2.gens.clone(), vec![f2.parse_word("a b^-1").unwrap()]).unwrap();
        assert_eq!(count_homs(&g, &c3).unwrap(), 3);
    }

    #[test]
    fn translated_letters_use_the_action() {
        let c2 = GroupDesc::cyclic(2, "g").unwrap();
        // C3 with inversion action: (s,1)(s,g) = x·x⁻¹ = 1 always
        let h = GroupDesc::cyclic(3, "x").unwrap();
        let t = FiniteGGroup::new(h, c2.clone(), vec![vec![0, 2, 1]]).unwrap();
        let f = FPGGroup::free(&["s"], &c2).unwrap();
        let g = FPGGroup::new(c2, f.gens.clone(), vec![f.parse_word("(s,1)(s,g)").unwrap()]).unwrap();
        assert_eq!(count_homs(&g, &t).unwrap(), 3);
    }
}
