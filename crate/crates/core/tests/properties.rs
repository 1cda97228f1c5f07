use finloc::chainloc::{homology_eq, homology_over_r, wstar_membership, ChainComplex, ChainMap};
use finloc::cohn::{mat_invert_over_lambda, DenomSet, MatrixFrac};
use finloc::formats::{parse_complex_file, parse_ggroup_file, parse_matrix_file};
use finloc::groupring::{GroupRing, GroupRingElem, RingMap};
use finloc::knot::parse_presentation;
use finloc::modloc::smith_normal_form;
use finloc::parse::parse_elem;
use finloc::ring::Ring;
use finloc::scalar::{int, CoeffRing};
use finloc::wclass::{w_membership, MatrixA};
use finloc::ErrorKind;
use proptest::prelude::*;

fn ring(h: &str) -> GroupRing {
    GroupRing::parse_header(h).unwrap()
}

/// Random elements as coefficient vectors over the listed group elements.
fn elem_in(header: &'static str) -> impl Strategy<Value = GroupRingElem> {
    let r = ring(header);
    let n = r.group().elements().map(|e| e.len()).unwrap_or(5);
    prop::collection::vec((0..n, -3i64..=3), 0..4).prop_map(move |terms| {
        let r = ring(header);
        match r.group().elements() {
            Some(els) => r.from_terms(terms.into_iter().map(|(i, c)| (els[i].clone(), int(c)))).unwrap(),
            None => r.laurent_elem(&terms.into_iter().map(|(i, c)| (i as i64 - 2, c)).collect::<Vec<_>>()),
        }
    })
}

fn laurent() -> impl Strategy<Value = GroupRingElem> {
    elem_in("Z[t]")
}

fn square(n: usize) -> impl Strategy<Value = MatrixA> {
    prop::collection::vec(laurent(), n * n).prop_map(move |v| {
        let r = ring("Z[t]");
        MatrixA::from_rows(&r, v.chunks(n).map(|c| c.to_vec()).collect(), n).unwrap()
    })
}

fn at_one(target: CoeffRing) -> RingMap {
    RingMap::new(ring("Z[t]"), target, vec![int(1)]).unwrap()
}

fn check_axioms(a: &GroupRingElem, b: &GroupRingElem, c: &GroupRingElem) -> Result<(), TestCaseError> {
    let r = a.ring();
    prop_assert_eq!(r.mul(&r.mul(a, b), c), r.mul(a, &r.mul(b, c)));
    prop_assert_eq!(r.mul(a, &r.add(b, c)), r.add(&r.mul(a, b), &r.mul(a, c)));
    prop_assert_eq!(r.mul(&r.add(a, b), c), r.add(&r.mul(a, c), &r.mul(b, c)));
    prop_assert_eq!(r.add(a, &r.neg(a)), r.zero());
    prop_assert_eq!(&r.mul(a, &r.one()), a);
    if r.is_commutative() {
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        check_axioms(&a, &b, &c)?;
        let q = |x: &GroupRingElem| x.change_coeff(CoeffRing::Q).unwrap();
        check_axioms(&q(&a), &q(&b), &q(&c))?;
    }

    #[test]
    fn dihedral_ring_axioms(a in elem_in("Z[D3:r,s]"), b in elem_in("Z[D3:r,s]"), c in elem_in("Z[D3:r,s]")) {
        check_axioms(&a, &b, &c)?;
    }

    #[test]
    fn cyclic_ring_axioms(a in elem_in("F5[C2:g]"), b in elem_in("F5[C2:g]"), c in elem_in("F5[C2:g]")) {
        check_axioms(&a, &b, &c)?;
    }

    #[test]
    fn display_parses_back(a in elem_in("Z[t]"), b in elem_in("Z[D3:r,s]"), c in elem_in("F5[C2:g]")) {
        for e in [a, b, c] {
            let back = parse_elem(e.ring(), &e.to_string(), 0).unwrap();
            prop_assert_eq!(back, e);
        }
    }

    #[test]
    fn ring_maps_are_homomorphisms(a in laurent(), b in laurent(), sign in prop::bool::ANY, v in 1i64..=4) {
        let r = ring("Z[t]");
        for (target, v) in [(CoeffRing::Z, if sign { 1 } else { -1 }), (CoeffRing::Fp(5), v)] {
            let m = RingMap::new(r.clone(), target, vec![int(v)]).unwrap();
            let (fa, fb) = (m.apply(&a).unwrap(), m.apply(&b).unwrap());
            prop_assert_eq!(m.apply(&r.mul(&a, &b)).unwrap(), target.mul(&fa, &fb));
            prop_assert_eq!(m.apply(&r.add(&a, &b)).unwrap(), target.add(&fa, &fb));
        }
    }

    #[test]
    fn smith_transforms_diagonalize(m in square(2), extra in square(1)) {
        let q = m.block_diag(&extra).unwrap().change_coeff(CoeffRing::Q).unwrap();
        let (u, d, v) = smith_normal_form(&q, None).unwrap();
        prop_assert_eq!(u.mul(&q).unwrap().mul(&v).unwrap(), d.clone());
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!(i == j || d.get(i, j).is_zero());
            }
        }
        for x in [u, v] {
            prop_assert!(x.det().unwrap().monomial_inverse().is_some());
        }
    }

    #[test]
    fn w_membership_is_multiplicative(a in square(2), b in square(2)) {
        for map in [at_one(CoeffRing::Z), at_one(CoeffRing::Fp(3))] {
            let (wa, wb) = (w_membership(&a, &map).unwrap(), w_membership(&b, &map).unwrap());
            let wab = w_membership(&a.mul(&b).unwrap(), &map).unwrap();
            prop_assert_eq!(wab.verdict, wa.verdict && wb.verdict);
        }
    }

    #[test]
    fn inverse_over_localization_is_two_sided(a in square(2)) {
        let map = at_one(CoeffRing::Z);
        let d = DenomSet::new(map.clone()).unwrap();
        match mat_invert_over_lambda(&a, &d) {
            Ok(inv) => {
                prop_assert!(w_membership(&a, &map).unwrap().verdict);
                let af = MatrixFrac::from_a(&a, &d);
                prop_assert!(af.mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mul(&af).unwrap().is_identity());
            }
            Err(e) => {
                prop_assert!(!w_membership(&a, &map).unwrap().verdict);
                prop_assert_eq!(e.kind(), ErrorKind::Precondition);
            }
        }
    }

    #[test]
    fn homology_ignores_change_of_basis(x in laurent(), y in laurent(), c in laurent(), k in 0usize..2) {
        let r = ring("Z[t]");
        // A^2 --diag(x, y)--> A^2 conjugated by an elementary matrix
        let d = MatrixA::from_rows(&r, vec![vec![x, r.zero()], vec![r.zero(), y]], 2).unwrap();
        let mut e = MatrixA::identity(&r, 2);
        let mut ei = MatrixA::identity(&r, 2);
        e.mat.set(k, 1 - k, c.clone());
        ei.mat.set(k, 1 - k, r.neg(&c));
        let base = ChainComplex::new(r.clone(), vec![2, 2], vec![d.clone()]).unwrap();
        let moved = ChainComplex::new(r.clone(), vec![2, 2], vec![e.mul(&d).unwrap().mul(&ei).unwrap()]).unwrap();
        let f = ChainMap::new(base.clone(), moved.clone(), vec![e.clone(), e]).unwrap();
        for map in [at_one(CoeffRing::Z), at_one(CoeffRing::Q), at_one(CoeffRing::Fp(2))] {
            prop_assert!(homology_eq(&homology_over_r(&base, &map).unwrap(), &homology_over_r(&moved, &map).unwrap()));
            prop_assert!(wstar_membership(&f, &map).unwrap().acyclic);
        }
    }

    #[test]
    fn parsers_reject_without_panicking(s in "[ -~\n;]{0,40}") {
        let _ = parse_matrix_file(&s);
        let _ = parse_complex_file(&s);
        let _ = parse_ggroup_file(&s);
        let _ = parse_presentation(&s);
        let _ = parse_elem(&ring("Z[t]"), &s, 0);
    }
}
