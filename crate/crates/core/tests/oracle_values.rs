//! Values computed independently with sympy and frozen here.

use finloc::commands::{self, MapSpec};
use finloc::formats::parse_matrix_file;
use finloc::knot::{alexander_pipeline, parse_presentation};
use finloc::modloc::smith_normal_form;
use finloc::selftest::oracle::{alexander_oracle, format_poly};

fn diag(text: &str) -> Vec<String> {
    let p = parse_matrix_file(text).unwrap();
    let (u, d, v) = smith_normal_form(&p, None).unwrap();
    assert_eq!(u.mul(&p).unwrap().mul(&v).unwrap(), d);
    (0..d.rows().min(d.cols())).map(|i| d.get(i, i).to_string()).collect()
}

#[test]
fn two_bridge_alexander_polynomials() {
    let cases = [
        ("y x y x y x x X Y X Y X Y Y", "t^4 - t^3 + t^2 - t + 1"),
        ("y X y X Y x Y x x X y X y x Y x Y Y", "2*t^2 - 3*t + 2"),
        ("y x Y X y x Y X y x x X Y x y X Y x y X Y Y", "2*t^2 - 5*t + 2"),
        ("y x y X Y X Y x y x x X Y X y x y x Y X Y Y", "t^4 - 2*t^3 + 3*t^2 - 2*t + 1"),
        ("y x y x Y X Y X y x y x x X Y X Y x y x y X Y X Y Y", "t^4 - 3*t^3 + 3*t^2 - 3*t + 1"),
        ("y X Y x y X Y x y X Y x x X y x Y X y x Y X y x Y Y", "3*t^2 - 5*t + 3"),
    ];
    for (rel, want) in cases {
        let p = parse_presentation(&format!("gens x, y; rels {rel}")).unwrap();
        let a = alexander_pipeline(&p).unwrap();
        assert_eq!(a.delta.unwrap().to_string(), want, "{rel}");
        assert_eq!(format_poly(&alexander_oracle(&p).unwrap()), want, "{rel}");
        assert!(a.localized.is_zero, "{rel}");
    }
}

#[test]
fn laurent_determinant() {
    let m = parse_matrix_file("ring Z[t]\n3 3\nt, 1, 0\n2t - 1, t^-1, 1\n1, t + 1, -t").unwrap();
    assert_eq!(m.det().unwrap().to_string(), "t^2 - 3*t + 1");
}

#[test]
fn smith_forms_over_z() {
    assert_eq!(diag("ring Z\n3 3\n2, 4, 4\n-6, 6, 12\n10, -4, -16"), ["2", "6", "12"]);
    assert_eq!(diag("ring Z\n2 2\n6, 0\n0, 10"), ["2", "30"]);
    assert_eq!(diag("ring Z\n3 3\n1, 2, 3\n4, 5, 6\n7, 8, 9"), ["1", "3", "0"]);
}

#[test]
fn smith_forms_over_laurent_q() {
    // t is a unit, so t^2 - t normalizes to t - 1
    assert_eq!(diag("ring Q[t]\n2 2\nt - 1, t^2 - 1\n0, t^2 - t"), ["t - 1", "t - 1"]);
    assert_eq!(diag("ring Q[t]\n2 2\nt^2 - 3t + 2, 0\nt - 1, t - 2"), ["1", "t^3 - 5*t^2 + 8*t - 4"]);
}

#[test]
fn localized_cyclic_modules() {
    let at_one = |target| MapSpec::new("t=1", target);
    let cases = [
        ("ring Q[t]\n1 1\nt^2 - 3t + 2", "Q", "L(M) = L/(t - 1)"),
        ("ring Z[t]\n1 1\nt - 2", "Z", "L(M) = 0"),
        ("ring Q[t]\n1 1\nt - 3", "Q", "L(M) = 0"),
        ("ring Q[t]\n1 2\nt - 1, 0", "Q", "L(M) = L + L/(t - 1)"),
    ];
    for (module, target, want) in cases {
        let r = commands::localize_module(module, &at_one(target)).unwrap();
        assert_eq!(r.summary[0], want, "{module}");
    }
}
