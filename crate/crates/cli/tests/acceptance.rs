//! One pass/fail line per acceptance criterion. Criteria 1-12 run in
//! process; 13 runs every subcommand of the built binary twice under
//! different thread settings and compares the bytes.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use finloc::selftest;

const BIN: &str = env!("CARGO_BIN_EXE_finloc");

fn samples() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../samples"))
}

fn invocations() -> Vec<Vec<String>> {
    let s = |f: &str| samples().join(f).display().to_string();
    let at_one = ["--map", "t=1"];
    let mut runs: Vec<Vec<String>> = vec![
        [vec!["wcheck".into(), s("unit_det.mat")], at_one.map(String::from).to_vec()].concat(),
        [vec!["wcheck".into(), s("square.mat")], at_one.map(String::from).to_vec()].concat(),
        [vec!["invert".into(), s("unit_det.mat")], at_one.map(String::from).to_vec()].concat(),
        vec!["localize-module".into(), s("module.mat"), "--map".into(), "t=1".into(), "--target".into(), "Q".into()],
        vec![
            "factor".into(),
            s("module.mat"),
            "--elems".into(),
            s("module.elems"),
            "--map".into(),
            "t=1".into(),
            "--target".into(),
            "Q".into(),
        ],
        [vec!["ggroup-tower".into(), s("pair.ggp"), s("pair.sched")], at_one.map(String::from).to_vec()].concat(),
        [vec!["chain-homology".into(), s("complex.cx"), "--localized".into()], at_one.map(String::from).to_vec()].concat(),
        [vec!["wstar".into(), s("acyclic.cmap")], at_one.map(String::from).to_vec()].concat(),
        vec!["knot".into(), s("trefoil.pres")],
        vec!["knot".into(), s("figure_eight.pres")],
        vec!["selftest".into()],
    ];
    let json: Vec<Vec<String>> = runs.iter().map(|r| [r.clone(), vec!["--json".into()]].concat()).collect();
    runs.extend(json);
    runs
}

fn run(args: &[String], threads: &str) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(BIN)
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .env("OMP_NUM_THREADS", threads)
        .output()
        .expect("run finloc");
    (out.status.code(), out.stdout)
}

fn determinism() -> (bool, String) {
    let runs = invocations();
    for args in &runs {
        let a = run(args, "1");
        let b = run(args, "8");
        if a != b || a.0 != Some(0) || a.1.is_empty() {
            return (false, format!("`finloc {}` differs between runs or failed", args.join(" ")));
        }
    }
    (true, format!("{} invocations byte-identical with 1 and 8 threads", runs.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut failed = 0;
    for id in 1..=selftest::COUNT + 1 {
        let t = Instant::now();
        let (name, passed, detail) = if id == selftest::COUNT + 1 {
            let (ok, d) = determinism();
            ("CLI output is deterministic", ok, d)
        } else {
            let r = selftest::run(id).expect("criterion");
            (r.name, r.passed, r.detail)
        };
        failed += usize::from(!passed);
        let mark = if passed { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} [{mark}] {name}: {detail} ({:.2?})", t.elapsed());
    }
    let total = start.elapsed();
    let in_budget = total.as_secs() < 60;
    println!("acceptance: {} of {} passed in {total:.2?}", selftest::COUNT + 1 - failed, selftest::COUNT + 1);
    if failed == 0 && in_budget { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
