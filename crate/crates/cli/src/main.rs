use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use finloc::commands::{self, MapSpec};
use finloc::report::Report;
use finloc::selftest;
use finloc::{Error, ErrorKind};

#[derive(Parser, Debug)]
#[command(name = "finloc", version, about = "Exact finite localization at ring maps Z[G] -> R")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct MapArgs {
    /// Generator values, e.g. `t=1` or `t=1,u=-1`
    #[arg(long, default_value = "")]
    map: String,
    /// Target ring: Z, Q or Fp:p
    #[arg(long, default_value = "Z")]
    target: String,
}

impl MapArgs {
    fn spec(&self) -> MapSpec {
        MapSpec::new(&self.map, &self.target)
    }
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Decide W(A,R) membership of a square matrix
    Wcheck {
        file: PathBuf,
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Invert a W-matrix over the localization
    Invert {
        file: PathBuf,
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Localize a finitely presented module
    LocalizeModule {
        file: PathBuf,
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Factor finitely many elements of a localized module through a W-matrix
    Factor {
        file: PathBuf,
        #[arg(long)]
        elems: PathBuf,
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Run a schedule of pushout and coequalizer stages on a G-group
    GgroupTower {
        presentation: PathBuf,
        schedule: PathBuf,
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Homology of a chain complex with coefficients in R
    ChainHomology {
        file: PathBuf,
        /// Also report homology over the localization
        #[arg(long)]
        localized: bool,
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether a chain map induces an isomorphism on homology over R
    Wstar {
        file: PathBuf,
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Alexander polynomial and localized Alexander module of a knot group
    Knot {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Run the acceptance checks
    Selftest {
        /// Run a single criterion
        #[arg(long)]
        criterion: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
}

fn read(p: &PathBuf) -> finloc::Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
}

fn execute(cmd: &Command) -> finloc::Result<(Report, bool)> {
    Ok(match cmd {
        Command::Wcheck { file, map, out } => (commands::wcheck(&read(file)?, &map.spec())?, out.json),
        Command::Invert { file, map, out } => (commands::invert(&read(file)?, &map.spec())?, out.json),
        Command::LocalizeModule { file, map, out } => (commands::localize_module(&read(file)?, &map.spec())?, out.json),
        Command::Factor { file, elems, map, out } => {
            (commands::factor(&read(file)?, &read(elems)?, &map.spec())?, out.json)
        }
        Command::GgroupTower { presentation, schedule, map, out } => {
            (commands::ggroup_tower(&read(presentation)?, &read(schedule)?, &map.spec())?, out.json)
        }
        Command::ChainHomology { file, localized, map, out } => {
            (commands::chain_homology(&read(file)?, &map.spec(), *localized)?, out.json)
        }
        Command::Wstar { file, map, out } => (commands::wstar(&read(file)?, &map.spec())?, out.json),
        Command::Knot { file, out } => (commands::knot(&read(file)?)?, out.json),
        Command::Selftest { criterion, out } => (selftest_report(*criterion)?, out.json),
    })
}

/// Bundled inputs for the determinism check, one per subcommand.
const SAMPLES: [(&str, &str); 11] = [
    ("unit_det.mat", include_str!("../../../samples/unit_det.mat")),
    ("square.mat", include_str!("../../../samples/square.mat")),
    ("module.mat", include_str!("../../../samples/module.mat")),
    ("module.elems", include_str!("../../../samples/module.elems")),
    ("acyclic.ggp", include_str!("../../../samples/acyclic.ggp")),
    ("pair.ggp", include_str!("../../../samples/pair.ggp")),
    ("pair.sched", include_str!("../../../samples/pair.sched")),
    ("complex.cx", include_str!("../../../samples/complex.cx")),
    ("acyclic.cmap", include_str!("../../../samples/acyclic.cmap")),
    ("trefoil.pres", include_str!("../../../samples/trefoil.pres")),
    ("figure_eight.pres", include_str!("../../../samples/figure_eight.pres")),
];

fn sample(name: &str) -> &'static str {
    SAMPLES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).expect("bundled sample")
}

/// Every report-producing subcommand on the bundled samples, in both modes.
fn sample_outputs() -> Vec<String> {
    let at_one = MapSpec::new("t=1", "Z");
    let runs: Vec<finloc::Result<Report>> = vec![
        commands::wcheck(sample("unit_det.mat"), &at_one),
        commands::wcheck(sample("square.mat"), &at_one),
        commands::invert(sample("unit_det.mat"), &at_one),
        commands::localize_module(sample("module.mat"), &MapSpec::new("t=1", "Q")),
        commands::factor(sample("module.mat"), sample("module.elems"), &MapSpec::new("t=1", "Q")),
        commands::ggroup_tower(sample("pair.ggp"), sample("pair.sched"), &at_one),
        commands::chain_homology(sample("complex.cx"), &at_one, true),
        commands::wstar(sample("acyclic.cmap"), &at_one),
        commands::knot(sample("trefoil.pres")),
        commands::knot(sample("figure_eight.pres")),
    ];
    runs.into_iter()
        .flat_map(|r| match r {
            Ok(r) => vec![r.to_text(), r.to_json()],
            Err(e) => vec![e.to_string()],
        })
        .collect()
}

fn determinism_check() -> (bool, String) {
    let first = sample_outputs();
    let second = sample_outputs();
    let threads: Vec<_> = (0..4).map(|_| std::thread::spawn(sample_outputs)).collect();
    let parallel: Vec<Vec<String>> = threads.into_iter().map(|h| h.join().expect("worker")).collect();
    let ok = first == second && parallel.iter().all(|p| *p == first);
    (ok, format!("{} outputs byte-identical across 2 sequential runs and 4 concurrent threads", first.len()))
}

fn selftest_report(only: Option<usize>) -> finloc::Result<Report> {
    let total = selftest::COUNT + 1;
    let ids: Vec<usize> = match only {
        Some(id) if (1..=total).contains(&id) => vec![id],
        Some(id) => return Err(Error::Io(format!("criterion {id} out of range 1..={total}"))),
        None => (1..=total).collect(),
    };
    let mut rows = Vec::new();
    for id in ids {
        let (name, passed, detail) = if id == total {
            let (ok, d) = determinism_check();
            ("reports are deterministic", ok, d)
        } else {
            let r = selftest::run(id).expect("criterion id");
            (r.name, r.passed, r.detail)
        };
        rows.push(Report::new().with("id", id).with("name", name).with("passed", passed).with("detail", detail));
    }
    let passed = rows.iter().filter(|r| r.get("passed") == Some(&true.into())).count();
    let mut r = Report::new().line(format!("passed {passed}/{}", rows.len()));
    for row in &rows {
        let mark = if row.get("passed") == Some(&true.into()) { "PASS" } else { "FAIL" };
        let field = |k| match row.get(k) {
            Some(finloc::report::Value::Str(s)) => s.clone(),
            Some(finloc::report::Value::Int(n)) => n.to_string(),
            _ => String::new(),
        };
        r = r.line(format!("[{mark}] {:>2} {}: {}", field("id"), field("name"), field("detail")));
    }
    Ok(r.with("passed", passed).with("total", rows.len()).with("criteria", rows))
}

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Usage => 1,
        ErrorKind::Parse => 2,
        ErrorKind::Unsupported => 3,
        ErrorKind::Precondition => 4,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli.command) {
        Ok((report, json)) => {
            print!("{}", if json { report.to_json() } else { report.to_text() });
            let failed_selftest = matches!(cli.command, Command::Selftest { .. })
                && report.get("passed") != report.get("total");
            ExitCode::from(u8::from(failed_selftest) * 4)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
