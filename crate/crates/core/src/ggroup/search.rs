//! Bounded search for word equality in a presented G-group. Answers `Yes`
//! with a derivation length or `Unknown`; never `No`.

use std::collections::{BTreeSet, VecDeque};

use super::{FPGGroup, Word};
use crate::cancel::{check, CancelToken};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult {
    /// Equal; the payload is the number of relator applications used.
    Yes(usize),
    Unknown,
}

/// Cyclic rotations of every relator and its inverse.
fn rotations(gamma: &FPGGroup) -> Vec<Word> {
    let mut out = Vec::new();
    for r in &gamma.rels {
        for w in [r.cyclic_reduce(), r.cyclic_reduce().inverse()] {
            let n = w.len();
            for i in 0..n {
                let mut v = w.0[i..].to_vec();
                v.extend_from_slice(&w.0[..i]);
                out.push(Word(v));
            }
        }
    }
    out
}

/// Breadth-first search from `w1·w2⁻¹` towards the empty word. A move
/// replaces a prefix of a translated relator rotation `ab` occurring in the
/// word by `b⁻¹`. At most `budget` words are expanded, and words longer than
/// the start plus the longest relator are discarded.
pub fn words_equal(
    gamma: &FPGGroup,
    w1: &Word,
    w2: &Word,
    budget: usize,
    cancel: Option<&CancelToken>,
) -> Result<SearchResult> {
    let start = w1.mul(&w2.inverse()).cyclic_reduce();
    if start.is_empty() {
        return Ok(SearchResult::Yes(0));
    }
    let rots = rotations(gamma);
    let max_len = start.len() + rots.iter().map(Word::len).max().unwrap_or(0);
    let base = &gamma.base;
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    let mut expanded = 0;
    while let Some((w, depth)) = queue.pop_front() {
        check(cancel)?;
        if expanded >= budget {
            break;
        }
        expanded += 1;
        for i in 0..w.len() {
            let l = &w.0[i];
            for rot in &rots {
                let head = &rot.0[0];
                if head.sym != l.sym || head.inv != l.inv {
                    continue;
                }
                // translate so that the rotation starts with the letter at i
                let g = base.mul(&base.inv(&head.g), &l.g);
                let r = rot.translate(base, &g);
                let mut k = 0;
                while k < r.len() && i + k < w.len() && r.0[k] == w.0[i + k] {
                    k += 1;
                }
                for m in 1..=k {
                    let tail = Word(r.0[m..].to_vec()).inverse();
                    let mut v = w.0[..i].to_vec();
                    v.extend(tail.0);
                    v.extend_from_slice(&w.0[i + m..]);
                    let v = Word::reduce(v).cyclic_reduce();
                    if v.is_empty() {
                        return Ok(SearchResult::Yes(depth + 1));
                    }
                    if v.len() <= max_len && seen.insert(v.clone()) {
                        queue.push_back((v, depth + 1));
                    }
                }
            }
        }
    }
    Ok(SearchResult::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupDesc;

    #[test]
    fn finds_short_derivations() {
        let triv = GroupDesc::trivial();
        let f = FPGGroup::free(&["a", "b"], &triv).unwrap();
        // commuting generators: a b = b a
        let g = FPGGroup::new(triv, f.gens.clone(), vec![f.parse_word("a b a^-1 b^-1").unwrap()]).unwrap();
        let w1 = g.parse_word("a a b").unwrap();
        let w2 = g.parse_word("b a a").unwrap();
        assert!(matches!(words_equal(&g, &w1, &w2, 10_000, None).unwrap(), SearchResult::Yes(_)));
        // a ≠ b in ℤ²; the search can only say unknown
        let a = g.parse_word("a").unwrap();
        let b = g.parse_word("b").unwrap();
        assert_eq!(words_equal(&g, &a, &b, 200, None).unwrap(), SearchResult::Unknown);
    }

    #[test]
    fn uses_translated_relators() {
        let z = GroupDesc::infinite_cyclic("t").unwrap();
        let f = FPGGroup::free(&["s"], &z).unwrap();
        let g = FPGGroup::new(z, f.gens.clone(), vec![f.parse_word("(s,t)(s,1)^-1").unwrap()]).unwrap();
        let w1 = g.parse_word("(s,t^3)").unwrap();
        let w2 = g.parse_word("(s,1)").unwrap();
        assert_eq!(words_equal(&g, &w1, &w2, 1000, None).unwrap(), SearchResult::Yes(3));
    }

    #[test]
    fn honours_cancellation() {
        let triv = GroupDesc::trivial();
        let f = FPGGroup::free(&["a"], &triv).unwrap();
        let tok = CancelToken::new();
        tok.cancel();
        let a = f.parse_word("a").unwrap();
        assert!(words_equal(&f, &a, &Word::empty(), 10, Some(&tok)).is_err());
    }
}
