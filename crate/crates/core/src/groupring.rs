//! Group rings k[G] and the evaluation maps k[G] → R.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{GElt, GroupDesc, GroupKind};
use crate::ring::Ring;
use crate::scalar::{fmt_scalar, int, CoeffRing, Scalar};

/// The ring k[G].
#[derive(Debug, Clone)]
pub struct GroupRing {
    group: Arc<GroupDesc>,
    coeff: CoeffRing,
}

impl PartialEq for GroupRing {
    fn eq(&self, other: &Self) -> bool {
        self.coeff == other.coeff && (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
    }
}

impl Eq for GroupRing {}

/// An element of k[G] with canonical sparse support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElem {
    ring: GroupRing,
    terms: BTreeMap<GElt, Scalar>,
}

impl GroupRing {
    pub fn new(group: GroupDesc, coeff: CoeffRing) -> Self {
        GroupRing { group: Arc::new(group), coeff }
    }

    /// ℤ[t, t⁻¹].
    pub fn laurent(coeff: CoeffRing, var: &str) -> Result<Self> {
        Ok(Self::new(GroupDesc::infinite_cyclic(var)?, coeff))
    }

    pub fn group(&self) -> &GroupDesc {
        &self.group
    }

    pub fn coeff(&self) -> CoeffRing {
        self.coeff
    }

    /// Same group, different coefficients.
    pub fn with_coeff(&self, coeff: CoeffRing) -> Self {
        GroupRing { group: self.group.clone(), coeff }
    }

    pub fn is_commutative(&self) -> bool {
        self.group.is_abelian()
    }

    /// k[G] is a domain for the trivial and free-abelian groups.
    pub fn is_domain(&self) -> bool {
        matches!(self.group.kind(), GroupKind::Trivial | GroupKind::FreeAbelian { .. })
            || self.group.is_trivial()
    }

    /// Single-variable Laurent ring over a field: the Euclidean case.
    pub fn is_laurent_over_field(&self) -> bool {
        self.coeff.is_field() && self.group.rank() == Some(1)
    }

    pub fn scalar(&self, c: Scalar) -> GroupRingElem {
        self.monomial(self.group.identity(), c)
    }

    pub fn int(&self, n: i64) -> GroupRingElem {
        self.scalar(int(n))
    }

    pub fn monomial(&self, g: GElt, c: Scalar) -> GroupRingElem {
        let c = self.coeff.coerce(&c).expect("coefficient lies in the coefficient ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(g, c);
        }
        GroupRingElem { ring: self.clone(), terms }
    }

    pub fn group_elem(&self, g: GElt) -> GroupRingElem {
        self.monomial(g, int(1))
    }

    /// The i-th generator raised to `e`.
    pub fn gen_pow(&self, i: usize, e: i64) -> GroupRingElem {
        self.group_elem(self.group.pow(&self.group.generator(i), e))
    }

    /// Builds `Σ c_k t^k` for a single-variable Laurent ring from `(exponent, coefficient)` pairs.
    pub fn laurent_elem(&self, terms: &[(i64, i64)]) -> GroupRingElem {
        let mut acc = self.zero();
        for &(e, c) in terms {
            acc = self.add(&acc, &self.mul(&self.int(c), &self.gen_pow(0, e)));
        }
        acc
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (GElt, Scalar)>) -> Result<GroupRingElem> {
        let mut map: BTreeMap<GElt, Scalar> = BTreeMap::new();
        for (g, c) in terms {
            if !self.group.contains(&g) {
                return Err(Error::RingMismatch(format!("{g:?} is not an element of {}", self.group)));
            }
            let c = self.coeff.coerce(&c)?;
            let slot = map.entry(g).or_insert_with(Scalar::zero);
            *slot = self.coeff.add(slot, &c);
        }
        map.retain(|_, c| !c.is_zero());
        Ok(GroupRingElem { ring: self.clone(), terms: map })
    }

    /// Header as written in files: `Z[t]`, `Q[t,u]`, `F5[C2:g]`, `Z`.
    pub fn header(&self) -> String {
        if matches!(self.group.kind(), GroupKind::Trivial) {
            self.coeff.name()
        } else {
            format!("{}[{}]", self.coeff.name(), self.group.header())
        }
    }

    pub fn parse_header(text: &str) -> Result<Self> {
        let t = text.trim();
        match t.find('[') {
            None => Ok(GroupRing::new(GroupDesc::trivial(), CoeffRing::parse(t)?)),
            Some(i) => {
                let inner = t[i + 1..]
                    .strip_suffix(']')
                    .ok_or_else(|| Error::parse(i, "missing `]` in ring header"))?;
                let coeff = CoeffRing::parse(&t[..i])?;
                Ok(GroupRing::new(GroupDesc::parse_header(inner)?, coeff))
            }
        }
    }

    fn check(&self, a: &GroupRingElem) -> Result<()> {
        if &a.ring != self {
            return Err(Error::RingMismatch(format!("element of {} used in {}", a.ring.header(), self.header())));
        }
        Ok(())
    }
}

impl fmt::Display for GroupRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.header())
    }
}

impl Ring for GroupRing {
    type Elem = GroupRingElem;

    fn zero(&self) -> GroupRingElem {
        GroupRingElem { ring: self.clone(), terms: BTreeMap::new() }
    }

    fn one(&self) -> GroupRingElem {
        self.int(1)
    }

    fn add(&self, a: &GroupRingElem, b: &GroupRingElem) -> GroupRingElem {
        debug_assert!(a.ring == b.ring);
        let mut terms = a.terms.clone();
        for (g, c) in &b.terms {
            match terms.get_mut(g) {
                Some(slot) => {
                    *slot = self.coeff.add(slot, c);
                    if slot.is_zero() {
                        terms.remove(g);
                    }
                }
                None => {
                    terms.insert(g.clone(), c.clone());
                }
            }
        }
        GroupRingElem { ring: self.clone(), terms }
    }

    fn mul(&self, a: &GroupRingElem, b: &GroupRingElem) -> GroupRingElem {
        debug_assert!(a.ring == b.ring);
        let mut terms: BTreeMap<GElt, Scalar> = BTreeMap::new();
        for (ga, ca) in &a.terms {
            for (gb, cb) in &b.terms {
                let g = self.group.mul(ga, gb);
                let c = self.coeff.mul(ca, cb);
                let slot = terms.entry(g).or_insert_with(Scalar::zero);
                *slot = self.coeff.add(slot, &c);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        GroupRingElem { ring: self.clone(), terms }
    }

    fn neg(&self, a: &GroupRingElem) -> GroupRingElem {
        GroupRingElem {
            ring: self.clone(),
            terms: a.terms.iter().map(|(g, c)| (g.clone(), self.coeff.neg(c))).collect(),
        }
    }

    fn is_zero(&self, a: &GroupRingElem) -> bool {
        a.terms.is_empty()
    }

    fn embed_int(&self, n: i64) -> GroupRingElem {
        self.int(n)
    }

    fn eq_elem(&self, a: &GroupRingElem, b: &GroupRingElem) -> bool {
        a.terms == b.terms
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// Checked group-ring arithmetic; `b` is ignored for negation.
pub fn gr_arith(op: ArithOp, a: &GroupRingElem, b: &GroupRingElem) -> Result<GroupRingElem> {
    let r = a.ring.clone();
    if op != ArithOp::Neg {
        r.check(b)?;
    }
    Ok(match op {
        ArithOp::Add => r.add(a, b),
        ArithOp::Sub => r.sub(a, b),
        ArithOp::Mul => r.mul(a, b),
        ArithOp::Neg => r.neg(a),
    })
}

impl GroupRingElem {
    pub fn ring(&self) -> &GroupRing {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<GElt, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, g: &GElt) -> Scalar {
        self.terms.get(g).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `Some(c)` when the element is the constant `c`.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (g, c) = self.terms.iter().next().unwrap();
                self.ring.group.is_identity(g).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Multiplicative inverse when the element is a trivial unit `c·g`.
    pub fn monomial_inverse(&self) -> Option<GroupRingElem> {
        if self.terms.len() != 1 {
            return None;
        }
        let (g, c) = self.terms.iter().next().unwrap();
        let ci = self.ring.coeff.inv(c)?;
        Some(self.ring.monomial(self.ring.group.inv(g), ci))
    }

    /// Exponent range `(min, max)` of a single-variable Laurent element.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        if self.ring.group.rank() != Some(1) || self.terms.is_empty() {
            return None;
        }
        let lo = self.terms.keys().next().unwrap().0[0];
        let hi = self.terms.keys().next_back().unwrap().0[0];
        Some((lo, hi))
    }

    /// Applies `f` to every coefficient, keeping the group part.
    pub fn map_coeffs(&self, target: &GroupRing, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<GroupRingElem> {
        target.from_terms(self.terms.iter().map(|(g, c)| Ok((g.clone(), f(c)?))).collect::<Result<Vec<_>>>()?)
    }

    /// Reinterprets the element over a larger coefficient ring (ℤ → ℚ, ℤ → 𝔽_p).
    pub fn change_coeff(&self, coeff: CoeffRing) -> Result<GroupRingElem> {
        if !self.ring.coeff.maps_into(coeff) {
            return Err(Error::RingMismatch(format!("no coefficient map {} -> {}", self.ring.coeff, coeff)));
        }
        self.map_coeffs(&self.ring.with_coeff(coeff), |c| coeff.coerce(c))
    }

    /// Terms in display order: free-abelian monomials by descending total
    /// degree then descending exponents, finite-group elements by index.
    fn display_terms(&self) -> Vec<(&GElt, &Scalar)> {
        let mut v: Vec<(&GElt, &Scalar)> = self.terms.iter().collect();
        if let GroupKind::FreeAbelian { .. } = self.ring.group.kind() {
            v.sort_by(|a, b| {
                let ka = (self.ring.group.degree(a.0), a.0);
                let kb = (self.ring.group.degree(b.0), b.0);
                kb.cmp(&ka)
            });
        }
        v
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let group = &self.ring.group;
        let signed = !matches!(self.ring.coeff, CoeffRing::Fp(_));
        let mut out = String::new();
        for (k, (g, c)) in self.display_terms().into_iter().enumerate() {
            let neg = signed && c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = group.format_elt(g);
            if group.is_identity(g) {
                out.push_str(&fmt_scalar(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", fmt_scalar(&mag), mono));
            }
        }
        f.write_str(&out)
    }
}

/// An evaluation homomorphism k[G] → R determined by generator ↦ unit.
#[derive(Debug, Clone)]
pub struct RingMap {
    source: GroupRing,
    target: CoeffRing,
    values: Vec<Scalar>,
    /// Character values on every element, for finite groups.
    character: Option<Vec<Scalar>>,
}

impl PartialEq for RingMap {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.values == other.values
    }
}

impl RingMap {
    pub fn new(source: GroupRing, target: CoeffRing, values: Vec<Scalar>) -> Result<Self> {
        if !source.coeff.maps_into(target) {
            return Err(Error::InvalidMap(format!(
                "coefficients {} do not map into {}",
                source.coeff, target
            )));
        }
        let ngen = source.group.generators().len();
        if values.len() != ngen {
            return Err(Error::InvalidMap(format!("expected {ngen} generator values, got {}", values.len())));
        }
        let values = values.iter().map(|v| target.coerce(v)).collect::<Result<Vec<_>>>()?;
        for (v, l) in values.iter().zip(source.group.generators()) {
            if !target.is_unit(v) {
                return Err(Error::InvalidMap(format!("{l} = {} is not a unit of {target}", fmt_scalar(v))));
            }
        }
        let mut character = None;
        if let Some(elems) = source.group.elements() {
            if !matches!(source.group.kind(), GroupKind::Trivial) {
                let g = &source.group;
                // values on all elements by breadth-first search, then an
                // exhaustive multiplicativity check
                let mut chi: BTreeMap<GElt, Scalar> = BTreeMap::new();
                chi.insert(g.identity(), target.embed_int(1));
                let mut queue = std::collections::VecDeque::from([g.identity()]);
                while let Some(x) = queue.pop_front() {
                    for (i, v) in values.iter().enumerate() {
                        let y = g.mul(&x, &g.generator(i));
                        if !chi.contains_key(&y) {
                            chi.insert(y.clone(), target.mul(&chi[&x], v));
                            queue.push_back(y);
                        }
                    }
                }
                for a in &elems {
                    for b in &elems {
                        if chi[&g.mul(a, b)] != target.mul(&chi[a], &chi[b]) {
                            return Err(Error::InvalidMap(format!(
                                "assignment does not respect the relations of {}",
                                g
                            )));
                        }
                    }
                }
                character = Some(elems.iter().map(|e| chi[e].clone()).collect());
            }
        }
        Ok(RingMap { source, target, values, character })
    }

    /// Augmentation: every generator ↦ 1.
    pub fn augmentation(source: GroupRing, target: CoeffRing) -> Result<Self> {
        let n = source.group.generators().len();
        Self::new(source, target, vec![int(1); n])
    }

    /// Builds a map from `label = value` pairs; unlisted generators go to 1.
    pub fn from_assignments(source: GroupRing, target: CoeffRing, pairs: &[(String, Scalar)]) -> Result<Self> {
        let mut values = vec![int(1); source.group.generators().len()];
        for (label, v) in pairs {
            let i = source
                .group
                .gen_index(label)
                .ok_or_else(|| Error::InvalidMap(format!("unknown generator `{label}` in map")))?;
            values[i] = v.clone();
        }
        Self::new(source, target, values)
    }

    /// Parses `t=1,u=-1` (empty string: augmentation).
    pub fn parse_spec(source: GroupRing, target: CoeffRing, spec: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (l, v) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidMap(format!("expected label=value, got `{part}`")))?;
            let v = parse_rational(v.trim())
                .ok_or_else(|| Error::InvalidMap(format!("bad value `{}` in map", v.trim())))?;
            pairs.push((l.trim().to_string(), v));
        }
        Self::from_assignments(source, target, &pairs)
    }

    pub fn source(&self) -> &GroupRing {
        &self.source
    }

    pub fn target(&self) -> CoeffRing {
        self.target
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// The same assignment on a different coefficient ring over the same group.
    pub fn with_source_coeff(&self, coeff: CoeffRing) -> Result<Self> {
        RingMap::new(self.source.with_coeff(coeff), self.target, self.values.clone())
    }

    /// Whether k[G] → R is onto; recorded, not enforced.
    pub fn is_epimorphism(&self) -> bool {
        !matches!((self.source.coeff, self.target), (CoeffRing::Z, CoeffRing::Q))
    }

    pub fn apply_group(&self, g: &GElt) -> Scalar {
        match (self.source.group.kind(), &self.character) {
            (GroupKind::Finite(_), Some(chi)) => chi[g.0[0] as usize].clone(),
            (GroupKind::FreeAbelian { .. }, _) => {
                let mut acc = self.target.embed_int(1);
                for (e, v) in g.0.iter().zip(&self.values) {
                    acc = self.target.mul(&acc, &self.target.pow(v, *e).expect("generator values are units"));
                }
                acc
            }
            _ => self.target.embed_int(1),
        }
    }

    pub fn apply(&self, a: &GroupRingElem) -> Result<Scalar> {
        self.source.check(a)?;
        let mut acc = Scalar::zero();
        for (g, c) in &a.terms {
            let c = self.target.coerce(c)?;
            acc = self.target.add(&acc, &self.target.mul(&c, &self.apply_group(g)));
        }
        Ok(acc)
    }

    /// `t=1 -> Z` style description.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .source
            .group
            .generators()
            .iter()
            .zip(&self.values)
            .map(|(l, v)| format!("{l}={}", fmt_scalar(v)))
            .collect();
        if parts.is_empty() {
            format!("{} -> {}", self.source.header(), self.target)
        } else {
            format!("{} -> {}", parts.join(","), self.target)
        }
    }
}

/// Unit test in R.
pub fn unit_check(r: &Scalar, target: CoeffRing) -> bool {
    target.is_unit(r)
}

pub fn gr_apply_map(a: &GroupRingElem, m: &RingMap) -> Result<Scalar> {
    m.apply(a)
}

fn parse_rational(s: &str) -> Option<Scalar> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = n.parse().ok()?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Scalar::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zt() -> GroupRing {
        GroupRing::laurent(CoeffRing::Z, "t").unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = zt();
        let a = r.laurent_elem(&[(1, 1), (0, 1)]);
        let b = r.laurent_elem(&[(1, 1), (0, -1)]);
        assert_eq!(r.mul(&a, &b), r.laurent_elem(&[(2, 1), (0, -1)]));
        assert_eq!(r.mul(&a, &b).to_string(), "t^2 - 1");
    }

    #[test]
    fn c2_zero_divisor() {
        let r = GroupRing::new(GroupDesc::cyclic(2, "g").unwrap(), CoeffRing::Z);
        let g = r.gen_pow(0, 1);
        let a = r.add(&r.one(), &g);
        let b = r.sub(&r.one(), &g);
        assert!(r.mul(&a, &b).is_zero());
        assert_eq!(a.to_string(), "1 + g");
    }

    #[test]
    fn evaluation() {
        let r = zt();
        let m = RingMap::augmentation(r.clone(), CoeffRing::Z).unwrap();
        assert_eq!(m.apply(&r.laurent_elem(&[(1, 2), (0, -1)])).unwrap(), int(1));
        assert_eq!(m.apply(&r.laurent_elem(&[(0, 1), (1, -1)])).unwrap(), int(0));
        let c3 = GroupRing::new(GroupDesc::cyclic(3, "g").unwrap(), CoeffRing::Z);
        let m = RingMap::augmentation(c3.clone(), CoeffRing::Fp(5)).unwrap();
        let s = c3.add(&c3.add(&c3.one(), &c3.gen_pow(0, 1)), &c3.gen_pow(0, 2));
        assert_eq!(m.apply(&s).unwrap(), int(3));
    }

    #[test]
    fn map_respects_finite_relations() {
        let c2 = GroupRing::new(GroupDesc::cyclic(2, "g").unwrap(), CoeffRing::Z);
        assert!(RingMap::new(c2.clone(), CoeffRing::Z, vec![int(-1)]).is_ok());
        let c3 = GroupRing::new(GroupDesc::cyclic(3, "g").unwrap(), CoeffRing::Z);
        assert!(RingMap::new(c3, CoeffRing::Z, vec![int(-1)]).is_err());
        assert!(RingMap::new(c2.with_coeff(CoeffRing::Q), CoeffRing::Fp(3), vec![int(1)]).is_err());
        assert!(RingMap::new(zt(), CoeffRing::Z, vec![int(2)]).is_err());
    }

    #[test]
    fn mismatched_rings_error() {
        let a = zt().one();
        let b = GroupRing::laurent(CoeffRing::Q, "t").unwrap().one();
        assert!(gr_arith(ArithOp::Add, &a, &b).is_err());
    }

    #[test]
    fn header_roundtrip() {
        for h in ["Z[t]", "Q[t,u]", "F5[C2:g]", "Z", "Z[D3:r,s]"] {
            assert_eq!(GroupRing::parse_header(h).unwrap().header(), h);
        }
    }

    #[test]
    fn map_spec() {
        let r = GroupRing::parse_header("Z[t,u]").unwrap();
        let m = RingMap::parse_spec(r.clone(), CoeffRing::Z, "u=-1").unwrap();
        assert_eq!(m.values(), &[int(1), int(-1)]);
        assert_eq!(m.describe(), "t=1,u=-1 -> Z");
        assert!(RingMap::parse_spec(r, CoeffRing::Z, "x=1").is_err());
    }
}
