//! Report builders behind each command-line subcommand. Inputs are file
//! contents; outputs are ordered [`Report`]s.

use crate::chainloc::{homology_over_r, localized_homology, wstar_membership, ChainComplex};
use crate::cohn::{mat_invert_over_lambda, DenomSet, MatrixFrac};
use crate::error::{Error, Result};
use crate::formats::{
    parse_chain_map_file, parse_complex_file, parse_elements, parse_ggroup_file, parse_matrix_file, parse_schedule_file,
};
use crate::ggroup::stages::tower_run;
use crate::groupring::{GroupRing, RingMap};
use crate::knot::{alexander_pipeline, parse_presentation};
use crate::modloc::{factor_finite_subset, module_localize, presentation_over_r, FPModule, LocStructure};
use crate::report::{Report, Value};
use crate::scalar::{fmt_scalar, CoeffRing};
use crate::wclass::{mat_image, w_membership, MatrixA};

/// `--map` assignments and `--target` ring, as typed by the user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSpec {
    pub assignments: String,
    pub target: String,
}

impl MapSpec {
    pub fn new(assignments: &str, target: &str) -> Self {
        MapSpec { assignments: assignments.to_string(), target: target.to_string() }
    }

    pub fn resolve(&self, ring: &GroupRing) -> Result<RingMap> {
        let target = CoeffRing::parse(&self.target).map_err(|e| Error::InvalidMap(e.to_string()))?;
        RingMap::parse_spec(ring.clone(), target, &self.assignments)
    }
}

impl Default for MapSpec {
    fn default() -> Self {
        MapSpec::new("", "Z")
    }
}

pub fn describe_structure(s: &LocStructure) -> String {
    let mut parts = Vec::new();
    if s.rank == 1 {
        parts.push("L".to_string());
    } else if s.rank > 1 {
        parts.push(format!("L^{}", s.rank));
    }
    match &s.torsion {
        Some(t) => parts.extend(t.iter().map(|e| format!("L/({e})"))),
        None if !s.is_zero => parts.push("torsion unknown".into()),
        None => {}
    }
    if parts.is_empty() { "0".into() } else { parts.join(" + ") }
}

fn structure_report(s: &LocStructure) -> Report {
    let mut r = Report::new().with("module", describe_structure(s)).with("rank", s.rank);
    let torsion: Value = match &s.torsion {
        Some(t) => t.iter().map(|e| e.to_string()).collect::<Vec<_>>().into(),
        None if s.is_zero => Vec::<String>::new().into(),
        None => "unknown".into(),
    };
    r.push("torsion", torsion);
    r.push("is_zero", s.is_zero);
    if let Some(c) = &s.zero_certificate {
        r.push("zero_certificate", c.to_string());
    }
    r
}

fn matrix_value(m: &MatrixA) -> Vec<String> {
    m.row_strings()
}

pub fn wcheck(matrix: &str, spec: &MapSpec) -> Result<Report> {
    let m = parse_matrix_file(matrix)?;
    let map = spec.resolve(&m.ring)?;
    let w = w_membership(&m, &map)?;
    let summary = match (&w.det_image, &w.reason) {
        (Some(d), _) => format!("in W(A,R): {}; det image = {}", w.verdict, fmt_scalar(d)),
        (None, Some(r)) => format!("in W(A,R): false; {r}"),
        (None, None) => format!("in W(A,R): {}", w.verdict),
    };
    let mut r = Report::new()
        .line(summary)
        .with("ring", m.ring.header())
        .with("map", map.describe())
        .with("matrix", matrix_value(&m))
        .with("image", mat_image(&m, &map)?.row_strings())
        .with("in_w", w.verdict);
    if m.is_square() {
        r.push("det", m.det()?.to_string());
    }
    if let Some(d) = &w.det_image {
        r.push("det_image", fmt_scalar(d));
    }
    if let Some(d) = &w.det_inverse {
        r.push("det_inverse", fmt_scalar(d));
    }
    if let Some(reason) = &w.reason {
        r.push("reason", reason.to_string());
    }
    Ok(r)
}

pub fn invert(matrix: &str, spec: &MapSpec) -> Result<Report> {
    let m = parse_matrix_file(matrix)?;
    let map = spec.resolve(&m.ring)?;
    let d = DenomSet::new(map.clone())?;
    let inv = mat_invert_over_lambda(&m, &d)?;
    let a = MatrixFrac::from_a(&m, &d);
    let checked = a.mul(&inv)?.is_identity() && inv.mul(&a)?.is_identity();
    Ok(Report::new()
        .line(format!("inverse over Lambda: {0}x{0}, two-sided check {1}", inv.mat.rows, checked))
        .with("ring", m.ring.header())
        .with("map", map.describe())
        .with("matrix", matrix_value(&m))
        .with("det", m.det()?.to_string())
        .with("inverse", inv.row_strings())
        .with("two_sided_check", checked))
}

pub fn localize_module(module: &str, spec: &MapSpec) -> Result<Report> {
    let p = parse_matrix_file(module)?;
    let map = spec.resolve(&p.ring)?;
    let m = FPModule::new(p.clone());
    let (image, inv, free) = presentation_over_r(&m, &map)?;
    let loc = module_localize(&m, &DenomSet::new(map.clone())?)?;
    let s = loc.structure(None)?;
    Ok(Report::new()
        .line(format!("L(M) = {}", describe_structure(&s)))
        .with("ring", p.ring.header())
        .with("map", map.describe())
        .with("generators", m.gens())
        .with("relations", m.relations())
        .with("presentation", matrix_value(&p))
        .with(
            "over_r",
            Report::new()
                .with("image", image.row_strings())
                .with("free_rank", free)
                .with("invariant_factors", inv.iter().map(fmt_scalar).collect::<Vec<_>>()),
        )
        .with("localized", structure_report(&s)))
}

pub fn factor(module: &str, elems: &str, spec: &MapSpec) -> Result<Report> {
    let p = parse_matrix_file(module)?;
    let map = spec.resolve(&p.ring)?;
    let loc = module_localize(&FPModule::new(p.clone()), &DenomSet::new(map.clone())?)?;
    let xs = parse_elements(&loc, elems)?;
    let diag = factor_finite_subset(&loc, &xs)?;
    let ok = diag.verify(&loc, &xs)?;
    let pre: Vec<String> = diag
        .preimages
        .iter()
        .map(|v| format!("[{}]", v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    Ok(Report::new()
        .line(format!("factorization verified: {ok}"))
        .with("ring", p.ring.header())
        .with("map", map.describe())
        .with("elements", xs.len())
        .with("alpha", matrix_value(&diag.alpha))
        .with("beta", matrix_value(&diag.beta))
        .with("gamma", diag.gamma.row_strings())
        .with("denominator", diag.denominator.to_string())
        .with("preimages", pre)
        .with("verified", ok))
}

pub fn ggroup_tower(presentation: &str, schedule: &str, spec: &MapSpec) -> Result<Report> {
    let gamma = parse_ggroup_file(presentation)?;
    let ring = GroupRing::new(gamma.base.clone(), CoeffRing::Z);
    let target = CoeffRing::parse(&spec.target).map_err(|e| Error::InvalidMap(e.to_string()))?;
    let ring = if target == CoeffRing::Q { ring.with_coeff(target) } else { ring };
    let map = spec.resolve(&ring)?;
    let sched = parse_schedule_file(schedule, &gamma, &map)?;
    let (_, traces) = tower_run(&gamma, &sched)?;
    let stable = traces
        .iter()
        .all(|t| t.r_invariants == traces[0].r_invariants && t.r_free_rank == traces[0].r_free_rank);
    let stages: Vec<Report> = traces
        .iter()
        .map(|t| {
            let mut r = Report::new()
                .with("index", t.index)
                .with("kind", t.kind)
                .with("generators", t.group.gens.clone())
                .with("relators", t.group.relator_strings())
                .with("abelianized", matrix_value(&t.abelianized))
                .with("image", t.image.row_strings())
                .with("r_free_rank", t.r_free_rank)
                .with("r_invariants", t.r_invariants.iter().map(fmt_scalar).collect::<Vec<_>>());
            if let Some(s) = &t.localized {
                r.push("localized", structure_report(s));
            }
            r.push("caveats", t.caveats.clone());
            r
        })
        .collect();
    Ok(Report::new()
        .line(format!("stages: {}; R-homology stable: {stable}", traces.len() - 1))
        .with("base", gamma.base.header())
        .with("map", map.describe())
        .with("stable", stable)
        .with("stages", stages))
}

fn homology_lines(c: &ChainComplex, map: &RingMap) -> Result<Vec<String>> {
    Ok(homology_over_r(c, map)?
        .iter()
        .enumerate()
        .map(|(n, h)| format!("H{n} = {}", h.format(map.target())))
        .collect())
}

pub fn chain_homology(complex: &str, spec: &MapSpec, localized: bool) -> Result<Report> {
    let c = parse_complex_file(complex)?;
    let map = spec.resolve(&c.ring)?;
    let lines = homology_lines(&c, &map)?;
    let mut r = Report::new()
        .line(lines.join("; "))
        .with("ring", c.ring.header())
        .with("map", map.describe())
        .with("ranks", c.ranks.clone())
        .with("homology", lines);
    if localized {
        let h = localized_homology(&c, &DenomSet::new(map)?)?;
        r.push("localized", h.iter().enumerate().map(|(n, d)| format!("H{n} = {d}")).collect::<Vec<_>>());
    }
    Ok(r)
}

pub fn wstar(chain_map: &str, spec: &MapSpec) -> Result<Report> {
    let f = parse_chain_map_file(chain_map)?;
    let map = spec.resolve(&f.source.ring)?;
    let cone = wstar_membership(&f, &map)?;
    let lines: Vec<String> = cone
        .homology
        .iter()
        .enumerate()
        .map(|(n, h)| format!("H{n}(cone) = {}", h.format(map.target())))
        .collect();
    Ok(Report::new()
        .line(format!("in W*(A,R): {}", cone.acyclic))
        .with("ring", f.source.ring.header())
        .with("map", map.describe())
        .with("source_homology", homology_lines(&f.source, &map)?)
        .with("target_homology", homology_lines(&f.target, &map)?)
        .with("cone_homology", lines)
        .with("acyclic", cone.acyclic))
}

pub fn knot(presentation: &str) -> Result<Report> {
    let p = parse_presentation(presentation.trim())?;
    let a = alexander_pipeline(&p)?;
    let mut r = Report::new();
    if let Some(d) = &a.delta {
        r = r.line(format!("Delta = {d}"));
    }
    if let Some(v) = &a.delta_at_one {
        r = r.line(format!("Delta(1) = {}", fmt_scalar(v)));
    }
    r = r.line(format!("localized Alexander module = {}", describe_structure(&a.localized)));
    r.push("presentation", p.to_text());
    r.push("jacobian", matrix_value(&a.jacobian));
    r.push("deleted_generator", p.gens[a.deleted].clone());
    r.push("reduced", matrix_value(&a.reduced));
    if let Some(d) = &a.delta {
        r.push("delta", d.to_string());
    }
    if let Some(v) = &a.delta_at_one {
        r.push("delta_at_one", fmt_scalar(v));
    }
    if let Some(s) = a.symmetric {
        r.push("symmetric", s);
    }
    if let Some(w) = a.in_w {
        r.push("in_w", w);
    }
    r.push("localized", structure_report(&a.localized));
    r.push("warnings", a.warnings.clone());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wcheck_summary() {
        let r = wcheck("ring Z[t]\n1 1\n2t - 1\n", &MapSpec::new("t=1", "Z")).unwrap();
        assert_eq!(r.summary, vec!["in W(A,R): true; det image = 1"]);
        let r = wcheck("1 1\nt + 1\n", &MapSpec::new("t=1", "Z")).unwrap();
        assert_eq!(r.summary, vec!["in W(A,R): false; det image = 2"]);
        let r = wcheck("2 1\n1\nt\n", &MapSpec::new("t=1", "Z")).unwrap();
        assert_eq!(r.summary, vec!["in W(A,R): false; matrix is 2x1, not square"]);
    }

    #[test]
    fn other_reports() {
        let spec = MapSpec::new("t=1", "Z");
        let r = invert("1 1\n2t - 1\n", &spec).unwrap();
        assert_eq!(r.get("two_sided_check"), Some(&true.into()));
        assert!(matches!(invert("1 1\nt + 1\n", &spec), Err(Error::Precondition(_))));
        let r = localize_module("ring Q[t]\n1 1\nt - 1\n", &MapSpec::new("t=1", "Q")).unwrap();
        assert_eq!(r.summary, vec!["L(M) = L/(t - 1)"]);
        let r = chain_homology("ranks 1 1\nd1\n2t - 1\n", &spec, false).unwrap();
        assert_eq!(r.summary, vec!["H0 = 0; H1 = 0"]);
        let r = knot("gens x,y; rels x y x Y X Y").unwrap();
        assert_eq!(r.summary[0], "Delta = t^2 - t + 1");
        let r = wstar("source\nranks 0\ntarget\nranks 1 1\nd1\n2t - 1\n", &spec).unwrap();
        assert_eq!(r.summary, vec!["in W*(A,R): true"]);
    }
}
