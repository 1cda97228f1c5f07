use finloc::selftest;

fn check(id: usize) {
    let r = selftest::run(id).unwrap();
    assert!(r.passed, "{}: {}", r.name, r.detail);
}

#[test]
fn w_decision() {
    check(1);
}

#[test]
fn cramer_inverse() {
    check(2);
}

#[test]
fn finite_subset_factorization() {
    check(3);
}

#[test]
fn localization_is_local() {
    check(4);
}

#[test]
fn block_closure() {
    check(5);
}

#[test]
fn pushout_coequalizer_counts() {
    check(6);
}

#[test]
fn tower_stability() {
    check(7);
}

#[test]
fn acyclic_localization() {
    check(8);
}

#[test]
fn restriction_locality() {
    check(9);
}

#[test]
fn wstar_equivalence() {
    check(10);
}

#[test]
fn estep_invariance() {
    check(11);
}

#[test]
fn knot_pipeline() {
    check(12);
}

#[test]
fn out_of_range_ids() {
    assert!(selftest::run(0).is_none());
    assert!(selftest::run(selftest::COUNT + 1).is_none());
}
