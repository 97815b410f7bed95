//! Query execution and report rendering.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::eqcoh::{
    bott_pushforward, character_in_ec, concentration_check, euler_class, fixed_components, fixed_locus_unit,
    presentation_pushforward, PointRing, PointRingOptions, ProjectiveModelRing,
};
use crate::error::{Error, ErrorKind, Result};
use crate::fixedloc::{
    admissible_field_sizes, concentration_section_with, fixed_locus_ideal, fixed_points_oracle, vanishing_set,
    zero_locus, SectionChoice,
};
use crate::lattice::{restrict, Character, SubgroupPresentation};
use crate::polyalg::{ideal_equal, GroebnerConfig};
use crate::scalar::Field;
use crate::smith::{power_on_inverse, series_inverse_oracle, smith_fixed_cohomology, SteenrodModule, Window};

use super::problem::{ProblemFile, Query};

pub const REPORT_SCHEMA: &str = "equiloc.report/1";

/// Largest field size tried by the fixed-point oracle.
const ORACLE_FIELD_LIMIT: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    pub groebner_budget: usize,
    /// Order to which Steenrod series are checked in `smith` queries.
    pub truncation: usize,
    /// Overrides the window of every `smith` query.
    pub window: Option<Window>,
    /// Selects which admissible field sizes the oracles use.
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            groebner_budget: GroebnerConfig::default().budget,
            truncation: 10,
            window: None,
            seed: 0,
        }
    }
}

impl RunOptions {
    fn groebner(&self) -> GroebnerConfig {
        GroebnerConfig {
            budget: self.groebner_budget,
            ..GroebnerConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleStatus {
    Passed,
    Failed,
    Skipped,
}

impl OracleStatus {
    fn as_str(self) -> &'static str {
        match self {
            OracleStatus::Passed => "passed",
            OracleStatus::Failed => "failed",
            OracleStatus::Skipped => "skipped",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            OracleStatus::Passed
        } else {
            OracleStatus::Failed
        }
    }
}

/// A verification that ran alongside a query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    pub name: String,
    pub status: OracleStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryOutput {
    pub lines: Vec<String>,
    pub data: Value,
    pub oracles: Vec<OracleOutcome>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub index: usize,
    pub query: String,
    pub result: std::result::Result<QueryOutput, Error>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub header: Vec<(String, String)>,
    pub sections: Vec<Section>,
}

/// Runs every query in file order.
pub fn run(problem: &ProblemFile, options: &RunOptions) -> Report {
    let subgroup = match &problem.subgroup {
        None => "whole group".to_string(),
        Some(rels) => {
            let chars: Vec<String> = rels.iter().map(|r| problem.character(r).to_string()).collect();
            format!("trivial on {}", chars.join(" "))
        }
    };
    let names = problem.names();
    let vars: Vec<String> = problem
        .variables
        .iter()
        .map(|v| format!("{}:{}", v.name, problem.character(&v.weight)))
        .collect();
    let ideal: Vec<String> = problem.ideal.iter().map(|g| g.display(&names).to_string()).collect();
    let header = vec![
        ("field".to_string(), problem.field.to_string()),
        ("group".to_string(), problem.lattice().to_string()),
        ("subgroup".to_string(), subgroup),
        ("variables".to_string(), if vars.is_empty() { "none".into() } else { vars.join(" ") }),
        ("ideal".to_string(), format!("<{}>", ideal.join(", "))),
    ];
    let sections = problem
        .queries
        .iter()
        .enumerate()
        .map(|(i, q)| Section {
            index: i + 1,
            query: q.to_string(),
            result: run_query(problem, q, options),
        })
        .collect();
    Report { header, sections }
}

/// Exit status: 0 when every query succeeded and no oracle failed, otherwise
/// the code of the first failing query.
pub fn exit_code(report: &Report) -> i32 {
    for s in &report.sections {
        match &s.result {
            Err(e) => return kind_code(e.kind()),
            Ok(out) if out.oracles.iter().any(|o| o.status == OracleStatus::Failed) => return 3,
            Ok(_) => {}
        }
    }
    0
}

pub fn kind_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Input => 1,
        ErrorKind::Resource => 2,
        ErrorKind::Internal => 3,
    }
}

pub fn kind_name(kind: ErrorKind) -> &'static str {
    match kind {
        ErrorKind::Input => "input",
        ErrorKind::Resource => "resource",
        ErrorKind::Internal => "internal",
    }
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::from("equiloc report\n");
        for (k, v) in &self.header {
            let _ = writeln!(out, "{k}: {v}");
        }
        for s in &self.sections {
            let _ = writeln!(out, "\n[{}] {}", s.index, s.query);
            match &s.result {
                Ok(q) => {
                    for l in &q.lines {
                        let _ = writeln!(out, "  {l}");
                    }
                    for o in &q.oracles {
                        let _ = writeln!(out, "  oracle {}: {} ({})", o.name, o.status.as_str(), o.detail);
                    }
                }
                Err(e) => {
                    let _ = writeln!(out, "  error ({}): {e}", kind_name(e.kind()));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let header: serde_json::Map<String, Value> =
            self.header.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let sections: Vec<Value> = self
            .sections
            .iter()
            .map(|s| match &s.result {
                Ok(q) => json!({
                    "index": s.index,
                    "query": s.query,
                    "status": "ok",
                    "result": q.data,
                    "oracles": q.oracles.iter().map(|o| json!({
                        "name": o.name,
                        "status": o.status.as_str(),
                        "detail": o.detail,
                    })).collect::<Vec<_>>(),
                }),
                Err(e) => json!({
                    "index": s.index,
                    "query": s.query,
                    "status": "error",
                    "error": {
                        "kind": kind_name(e.kind()),
                        "exit_code": kind_code(e.kind()),
                        "message": e.to_string(),
                    },
                }),
            })
            .collect();
        json!({
            "schema": REPORT_SCHEMA,
            "problem": header,
            "sections": sections,
            "exit_code": exit_code(self),
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable report");
        s.push('\n');
        s
    }
}

/// Runs one query.
pub fn run_query(problem: &ProblemFile, query: &Query, options: &RunOptions) -> Result<QueryOutput> {
    match query {
        Query::FixedLocus => fixed_locus(problem, options),
        Query::Section { minimal } => section(problem, *minimal, options),
        Query::Euler { characters } => euler(problem, characters),
        Query::Bott { characters, power } => bott(problem, characters, *power),
        Query::Concentration { characters } => concentration(problem, characters),
        Query::Smith { characters, window } => smith(problem, characters, options.window.or(*window), options),
    }
}

fn characters(problem: &ProblemFile, coords: &[Vec<i64>]) -> Vec<Character> {
    coords.iter().map(|c| problem.character(c)).collect()
}

fn chars_text(chars: &[Character]) -> String {
    let parts: Vec<String> = chars.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn chars_json(chars: &[Character]) -> Value {
    Value::Array(chars.iter().map(|c| Value::String(c.to_string())).collect())
}

/// The point ring for the problem's group; torsion forces `𝔽_p` coefficients.
fn point_ring(problem: &ProblemFile) -> Result<PointRing> {
    let lattice = problem.lattice();
    let field = if lattice.torsion_orders().is_empty() {
        Some(problem.field)
    } else {
        match problem.field {
            Field::Prime(_) => Some(problem.field),
            Field::Rational => None,
        }
    };
    PointRing::new(&lattice, PointRingOptions { field, ..Default::default() })
}

fn pick_sizes(sizes: &[u64], seed: u64, count: usize) -> Vec<u64> {
    if sizes.is_empty() {
        return Vec::new();
    }
    let start = (seed % sizes.len() as u64) as usize;
    let mut out: Vec<u64> = (0..count.min(sizes.len())).map(|k| sizes[(start + k) % sizes.len()]).collect();
    out.sort_unstable();
    out
}

fn fixed_locus(problem: &ProblemFile, options: &RunOptions) -> Result<QueryOutput> {
    let cfg = options.groebner();
    let x = problem.scheme(&cfg)?;
    let sub = problem.subgroup();
    let ideal = fixed_locus_ideal(&x, &sub)?;
    let gb = ideal.groebner(&cfg)?;
    let names = problem.names();
    let gens: Vec<String> = gb.polys().iter().map(|g| g.display(&names).to_string()).collect();
    let mut lines = Vec::new();
    if gb.is_unit_ideal() {
        lines.push("empty fixed locus (unit ideal)".to_string());
    } else {
        lines.push(format!("fixed locus ideal: <{}>", gens.join(", ")));
    }
    let mut oracles = Vec::new();
    let sizes = pick_sizes(&admissible_field_sizes(&x, &sub, ORACLE_FIELD_LIMIT), options.seed, 2);
    if sizes.is_empty() {
        oracles.push(OracleOutcome {
            name: "fixed-points".into(),
            status: OracleStatus::Skipped,
            detail: format!("no admissible field size up to {ORACLE_FIELD_LIMIT}"),
        });
    }
    for q in sizes {
        let ours = vanishing_set(&ideal, q)?;
        let brute = fixed_points_oracle(&x, &sub, q)?;
        oracles.push(OracleOutcome {
            name: format!("fixed-points q={q}"),
            status: OracleStatus::from_bool(ours == brute),
            detail: format!("ideal: {} points, enumeration: {} points", ours.len(), brute.len()),
        });
    }
    Ok(QueryOutput {
        lines,
        data: json!({ "unit_ideal": gb.is_unit_ideal(), "groebner_basis": gens }),
        oracles,
    })
}

fn section(problem: &ProblemFile, minimal: bool, options: &RunOptions) -> Result<QueryOutput> {
    let cfg = options.groebner();
    let x = problem.scheme(&cfg)?;
    let sub = problem.subgroup();
    let choice = if minimal { SectionChoice::Minimal } else { SectionChoice::Coordinates };
    let (rep, s) = concentration_section_with(&x, &sub, choice, &cfg)?;
    let names = problem.names();
    let comps: Vec<String> = s.components().iter().map(|c| c.display(&names).to_string()).collect();
    let zero_locus_ok = ideal_equal(&zero_locus(&s, &x)?, &fixed_locus_ideal(&x, &sub)?, &cfg)?;
    let no_fixed = rep.has_no_fixed_vectors(&sub)?;
    let verified = zero_locus_ok && no_fixed;
    Ok(QueryOutput {
        lines: vec![
            format!("V = {}", chars_text(rep.characters())),
            format!("s = ({})", comps.join(", ")),
            format!("verified: {verified}"),
        ],
        data: json!({
            "representation": chars_json(rep.characters()),
            "section": comps,
            "verified": verified,
        }),
        oracles: vec![
            OracleOutcome {
                name: "zero-locus".into(),
                status: OracleStatus::from_bool(zero_locus_ok),
                detail: "Z(s) equals the fixed-locus ideal".into(),
            },
            OracleOutcome {
                name: "no-fixed-vectors".into(),
                status: OracleStatus::from_bool(no_fixed),
                detail: "every character of V is nontrivial on C".into(),
            },
        ],
    })
}

fn euler(problem: &ProblemFile, coords: &[Vec<i64>]) -> Result<QueryOutput> {
    let point = point_ring(problem)?;
    let sub = problem.subgroup();
    let chars = characters(problem, coords);
    let e = euler_class(&chars, &point)?;
    let mut in_ec = true;
    for chi in &chars {
        in_ec &= character_in_ec(point.ring(), chi, &sub)?;
    }
    let bidegree = e.bidegree();
    let mut lines = vec![
        format!("e = {e}"),
        match bidegree {
            Some((a, b)) => format!("bidegree: ({a}, {b})"),
            None => "bidegree: none (zero class)".into(),
        },
        format!("in E_C: {in_ec}"),
    ];
    lines.extend(point.notes().iter().map(|n| format!("note: {n}")));
    Ok(QueryOutput {
        lines,
        data: json!({
            "class": e.to_string(),
            "bidegree": bidegree.map(|(a, b)| vec![a, b]),
            "in_ec": in_ec,
            "notes": point.notes(),
        }),
        oracles: Vec::new(),
    })
}

fn model(problem: &ProblemFile, coords: &[Vec<i64>]) -> Result<ProjectiveModelRing> {
    let point = point_ring(problem)?;
    ProjectiveModelRing::new(&point, characters(problem, coords))
}

fn bott(problem: &ProblemFile, coords: &[Vec<i64>], power: Option<u32>) -> Result<QueryOutput> {
    let model = model(problem, coords)?;
    let n = model.dim() as u32;
    let top = power.unwrap_or(n + 3);
    let mut lines = Vec::new();
    let mut values = Vec::new();
    let mut agree = true;
    for k in 0..=top {
        let x = model.zeta().pow(k);
        let b = bott_pushforward(&x, &model)?;
        let direct = presentation_pushforward(&x, &model)?;
        let ok = b.to_class().is_some_and(|c| c == direct);
        agree &= ok;
        lines.push(format!("pi_*(z^{k}) = {direct}"));
        values.push(json!({ "k": k, "pushforward": direct.to_string(), "bott": b.to_string() }));
    }
    let sub = problem.subgroup();
    let unit = fixed_locus_unit(&model, &sub)?;
    let unit_ok = unit.to_class().is_some_and(|c| c == model.one());
    Ok(QueryOutput {
        lines,
        data: json!({ "weights": chars_json(model.weights()), "values": values, "unit": unit.to_string() }),
        oracles: vec![
            OracleOutcome {
                name: "bott-vs-presentation".into(),
                status: OracleStatus::from_bool(agree),
                detail: format!("fixed-point sum equals the coefficient of z^{} for k <= {top}", n - 1),
            },
            OracleOutcome {
                name: "fixed-locus-unit".into(),
                status: OracleStatus::from_bool(unit_ok),
                detail: "sum of pushforwards of 1/e(N) over C-fixed components is 1".into(),
            },
        ],
    })
}

fn concentration(problem: &ProblemFile, coords: &[Vec<i64>]) -> Result<QueryOutput> {
    let model = model(problem, coords)?;
    let sub = problem.subgroup();
    let report = concentration_check(&model, &sub)?;
    let comps: Vec<String> = report.components.iter().map(|c| chars_text(&c.weights)).collect();
    let factors: Vec<String> = report
        .factors
        .iter()
        .map(|(c, k)| if *k == 1 { format!("e{c}") } else { format!("e{c}^{k}") })
        .collect();
    let mut factors_ok = true;
    for (c, _) in &report.factors {
        factors_ok &= !restrict(c, &sub)?.is_zero();
    }
    let unit = fixed_locus_unit(&model, &sub)?;
    let unit_ok = unit.to_class().is_some_and(|c| c == model.one());
    Ok(QueryOutput {
        lines: vec![
            format!("components: {}", comps.join(" ")),
            format!("determinant: {}", report.determinant),
            format!("factors: {} * {}", report.unit, if factors.is_empty() { "1".into() } else { factors.join(" ") }),
            format!("invertible after localization: {}", report.invertible),
        ],
        data: json!({
            "components": report.components.iter().map(|c| chars_json(&c.weights)).collect::<Vec<_>>(),
            "determinant": report.determinant.to_string(),
            "unit": report.unit.to_string(),
            "factors": report.factors.iter().map(|(c, k)| json!([c.to_string(), k])).collect::<Vec<_>>(),
            "invertible": report.invertible,
        }),
        oracles: vec![
            OracleOutcome {
                name: "factors-in-E_C".into(),
                status: OracleStatus::from_bool(report.invertible && factors_ok),
                detail: "determinant is a unit times Euler classes nontrivial on C".into(),
            },
            OracleOutcome {
                name: "fixed-locus-unit".into(),
                status: OracleStatus::from_bool(unit_ok),
                detail: "sum of pushforwards of 1/e(N) over C-fixed components is 1".into(),
            },
        ],
    })
}

fn smith(problem: &ProblemFile, coords: &[Vec<i64>], window: Option<Window>, options: &RunOptions) -> Result<QueryOutput> {
    let point = point_ring(problem)?;
    let (module, expected) = if coords.is_empty() {
        (SteenrodModule::point(&point)?, vec![((0, 0), 1)])
    } else {
        let model = ProjectiveModelRing::new(&point, characters(problem, coords))?;
        let whole = SubgroupPresentation::whole(point.lattice());
        let mut expected: Vec<((i64, i64), usize)> = Vec::new();
        for comp in fixed_components(&model, &whole)? {
            for i in 0..comp.dim() as i64 {
                match expected.iter_mut().find(|(d, _)| *d == (2 * i, i)) {
                    Some((_, r)) => *r += 1,
                    None => expected.push(((2 * i, i), 1)),
                }
            }
        }
        (SteenrodModule::model(&model)?, expected)
    };
    module.validate()?;
    let m = coords.len().max(1) as i64;
    let window = match window {
        Some(w) => w,
        None => Window::new(0, 2 * m, 0, m)?,
    };
    let fixed = smith_fixed_cohomology(&module, &window)?;
    let p = module.prime();
    let mut lines = vec![format!("H(X^G; F_{p}) in window {window}: total rank {}", fixed.total_rank())];
    for ((a, b), r) in &fixed.ranks {
        lines.push(format!("rank ({a}, {b}): {r}"));
    }
    let gens: Vec<String> = fixed
        .generators
        .iter()
        .enumerate()
        .map(|(i, ((a, b), g))| format!("g{i} in ({a}, {b}): {g}"))
        .collect();
    lines.extend(gens.iter().cloned());
    let mut products = Vec::new();
    for e in &fixed.products {
        let terms: Vec<String> = e.result.iter().map(|(k, c)| format!("{c}*g{k}")).collect();
        let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        lines.push(format!("g{} * g{} = {rhs}", e.left, e.right));
        products.push(json!({ "left": e.left, "right": e.right, "result": rhs }));
    }
    lines.extend(point.notes().iter().map(|n| format!("note: {n}")));

    let expected_in: Vec<((i64, i64), usize)> = expected.into_iter().filter(|(d, _)| window.contains(*d)).collect();
    let found: Vec<((i64, i64), usize)> = fixed.ranks.iter().map(|(d, r)| (*d, *r)).collect();
    let mut oracles = vec![OracleOutcome {
        name: "fixed-components".into(),
        status: OracleStatus::from_bool(expected_in == found),
        detail: "ranks match the cohomology of the G-fixed projective spaces".into(),
    }];
    let n = options.truncation;
    let series = series_inverse_oracle(p, n)?;
    let mut inverse_ok = true;
    for (i, s) in series.iter().enumerate() {
        inverse_ok &= power_on_inverse(i as u32, p)? == *s;
    }
    oracles.push(OracleOutcome {
        name: "steenrod-inverse".into(),
        status: OracleStatus::from_bool(inverse_ok),
        detail: format!("P^i(v^-1) closed form agrees with series inversion for i <= {n}"),
    });
    let ranks: Vec<Value> = fixed.ranks.iter().map(|((a, b), r)| json!([a, b, r])).collect();
    Ok(QueryOutput {
        lines,
        data: json!({
            "prime": p,
            "window": window.to_string(),
            "total_rank": fixed.total_rank(),
            "ranks": ranks,
            "denominator": fixed.denominator.iter().map(|(c, k)| json!([c.to_string(), k])).collect::<Vec<_>>(),
            "generators": fixed.generators.iter().map(|((a, b), g)| json!({ "bidegree": [a, b], "class": g.to_string() })).collect::<Vec<_>>(),
            "products": products,
            "notes": point.notes(),
        }),
        oracles,
    })
}
