use std::path::PathBuf;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_finloc");

fn sample(f: &str) -> String {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../samples")).join(f).display().to_string()
}

fn finloc(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("run finloc")
}

fn temp(name: &str, text: &str) -> String {
    let p = std::env::temp_dir().join(format!("finloc-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn wcheck_unit_determinant() {
    let o = finloc(&["wcheck", &sample("unit_det.mat"), "--map", "t=1", "--target", "Z"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("in W(A,R): true; det image = 1\n"));
}

#[test]
fn wcheck_negative_verdict_is_not_an_error() {
    let m = temp("plus.mat", "1 1\nt + 1\n");
    let o = finloc(&["wcheck", &m, "--map", "t=1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("in W(A,R): false; det image = 2\n"));
}

#[test]
fn knot_reports_delta() {
    let o = finloc(&["knot", &sample("trefoil.pres")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Delta = t^2 - t + 1\n"));
}

#[test]
fn exit_codes() {
    let o = finloc(&["wcheck", &sample("unit_det.mat"), "--bogus"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(finloc(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(finloc(&["knot", "/nonexistent/finloc.pres"]).status.code(), Some(1));
    let bad = temp("bad.mat", "1 1\nt +\n");
    assert_eq!(finloc(&["wcheck", &bad, "--map", "t=1"]).status.code(), Some(2));
    assert_eq!(finloc(&["wcheck", &sample("unit_det.mat"), "--map", "t=2"]).status.code(), Some(2));
    let d3 = temp("d3.mat", "ring Z[D3:r,s]\n1 1\nr + s\n");
    assert_eq!(finloc(&["wcheck", &d3]).status.code(), Some(3));
    let singular = temp("singular.mat", "1 1\nt + 1\n");
    let o = finloc(&["invert", &singular, "--map", "t=1"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: precondition failed"));
    assert_eq!(finloc(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_mode_carries_the_text_data() {
    let runs: [&[&str]; 5] = [
        &["wcheck", &sample("square.mat"), "--map", "t=1"],
        &["localize-module", &sample("module.mat"), "--map", "t=1", "--target", "Q"],
        &["chain-homology", &sample("complex.cx"), "--map", "t=1", "--localized"],
        &["wstar", &sample("acyclic.cmap"), "--map", "t=1"],
        &["knot", &sample("figure_eight.pres")],
    ];
    for args in runs {
        let text = stdout(&finloc(args));
        let json: serde_json::Value = serde_json::from_str(&stdout(&finloc(&[args, &["--json"]].concat()))).unwrap();
        let obj = json.as_object().unwrap();
        let summary: Vec<&str> = obj["summary"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
        assert!(text.starts_with(&(summary.join("\n") + "\n")), "{args:?}");
        for (k, v) in obj.iter().filter(|(k, _)| *k != "summary") {
            let line = text.lines().find(|l| l.starts_with(&format!("{k}:"))).unwrap_or_else(|| panic!("{k} missing"));
            if let Some(s) = v.as_str() {
                assert_eq!(line, format!("{k}: {s}"));
            }
            if let Some(b) = v.as_bool() {
                assert_eq!(line, format!("{k}: {b}"));
            }
        }
    }
}

#[test]
fn tower_and_factor_samples() {
    let o = finloc(&["ggroup-tower", &sample("pair.ggp"), &sample("pair.sched"), "--map", "t=1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("stages: 2; R-homology stable: true\n"));
    let o = finloc(&["factor", &sample("module.mat"), "--elems", &sample("module.elems"), "--map", "t=1", "--target", "Q"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("factorization verified: true\n"));
}

#[test]
fn selftest_single_criterion() {
    let o = finloc(&["selftest", "--criterion", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("passed 1/1\n[PASS] 12 "));
    assert_eq!(finloc(&["selftest", "--criterion", "99"]).status.code(), Some(1));
}
