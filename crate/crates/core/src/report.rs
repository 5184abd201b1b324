//! Verification runs over families and suites, JSON reports, and golden comparison.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chains::binomial;
use crate::curvature::{verify_lemma47, CurvatureSpaceReport, RICCI_CONVENTIONS};
use crate::error::{Error, Result};
use crate::kostant::{cohomology_table, csp_subspace, maximality_check};
use crate::lie::{certify_contact, Family, FamilySpec, GradedLieAlgebra};
use crate::linalg::float::{Mode, DEFAULT_THRESHOLD};
use crate::linalg::scalar::to_string;
use crate::spencer::pacs_prolongation;
use crate::torsion::{harmonic_type_check, theorem43_report, TorsionContext, CODIFFERENTIAL_CONVENTION};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Field names excluded from golden comparison.
pub const TIMING_FIELDS: [&str; 1] = ["elapsed_ms"];

/// Verification suites in dependency order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Certify,
    Cohomology,
    Prolongation,
    Theorem43,
    Types,
    Curvature,
    Maximality,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Certify,
        Suite::Cohomology,
        Suite::Prolongation,
        Suite::Theorem43,
        Suite::Types,
        Suite::Curvature,
        Suite::Maximality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Certify => "certify",
            Suite::Cohomology => "cohomology",
            Suite::Prolongation => "prolongation",
            Suite::Theorem43 => "theorem43",
            Suite::Types => "types",
            Suite::Curvature => "curvature",
            Suite::Maximality => "maximality",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite '{s}'")))
    }
}

/// Families run by `verify --all`.
pub const DEFAULT_FAMILIES: [&str; 6] = ["SL:2", "SU:1,1", "SO:3,0", "SO_STAR:2", "G2", "F4"];
pub const LARGE_FAMILIES: [&str; 3] = ["E6", "E7", "E8"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Family labels such as `SL:2` or `G2`.
    pub families: Vec<String>,
    pub suites: Vec<Suite>,
    #[serde(default)]
    pub mode: Mode,
    pub seed: Option<u64>,
    #[serde(default = "default_trials")]
    pub trials: usize,
}

fn default_trials() -> usize {
    50
}

impl RunConfig {
    pub fn new(families: Vec<String>, suites: Vec<Suite>, mode: Mode, seed: Option<u64>) -> Self {
        Self { families, suites, mode, seed, trials: default_trials() }
    }

    /// Parsed families and suites in canonical order; usage errors otherwise.
    pub fn validate(&self) -> Result<(Vec<FamilySpec>, Vec<Suite>)> {
        if self.families.is_empty() {
            return Err(Error::Usage("no families selected".into()));
        }
        if self.suites.is_empty() {
            return Err(Error::Usage("no suites selected".into()));
        }
        let specs = self
            .families
            .iter()
            .map(|f| f.parse::<FamilySpec>().map_err(|e| Error::Usage(format!("family '{f}': {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let mut suites = self.suites.clone();
        suites.sort();
        suites.dedup();
        if suites.contains(&Suite::Maximality) {
            if self.seed.is_none() {
                return Err(Error::Usage("maximality needs a seed".into()));
            }
            if self.trials == 0 {
                return Err(Error::Usage("maximality needs at least one trial".into()));
            }
        }
        Ok((specs, suites))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Passed,
    /// A claimed property was checked and does not hold.
    Failed,
    /// The computation itself could not be completed.
    Error,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub status: Status,
    /// Verdict rests on random sampling rather than proof.
    pub probabilistic: bool,
    /// Some numbers come from floating point ranks.
    pub approximate: bool,
    pub elapsed_ms: u64,
    pub message: Option<String>,
    pub result: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: String,
    pub component_dims: Option<[usize; 5]>,
    pub suites: Vec<SuiteOutcome>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    pub codifferential: String,
    pub ricci: Vec<String>,
    pub psi_choice: String,
    pub inner_product: String,
    pub curvature_formula: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Self {
            codifferential: CODIFFERENTIAL_CONVENTION.to_string(),
            ricci: RICCI_CONVENTIONS.iter().map(|s| s.to_string()).collect(),
            psi_choice: "fixed basis vector of g_2".into(),
            inner_product: "-B(X, θY) with B the Killing form and θ the Cartan involution".into(),
            curvature_formula: "R_A(X,Y) = [X,[ψ,[A,Y]]] - [Y,[ψ,[A,X]]] - β(X,Y) A with [[X,Y],ψ] = β(X,Y) E".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub config: RunConfig,
    pub conventions: Conventions,
    pub families: Vec<FamilyReport>,
}

impl Report {
    /// No suite failed or errored.
    pub fn passed(&self) -> bool {
        self.outcomes().all(|o| matches!(o.status, Status::Passed | Status::Skipped))
    }

    pub fn outcomes(&self) -> impl Iterator<Item = &SuiteOutcome> {
        self.families.iter().flat_map(|f| f.suites.iter())
    }

    pub fn outcome(&self, family: &str, suite: Suite) -> Option<&SuiteOutcome> {
        self.families.iter().find(|f| f.family == family)?.suites.iter().find(|o| o.suite == suite)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// What a suite produced before timing and status are attached.
struct Finding {
    verdict: bool,
    probabilistic: bool,
    approximate: bool,
    message: Option<String>,
    result: Value,
}

impl Finding {
    fn exact(verdict: bool, result: Value) -> Self {
        Self { verdict, probabilistic: false, approximate: false, message: None, result }
    }

    fn with_message(mut self, m: impl Into<String>) -> Self {
        self.message = Some(m.into());
        self
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn certify(g: &GradedLieAlgebra) -> Result<Finding> {
    let c = certify_contact(g)?;
    let verdict = c.csp_check && c.faithful && c.cartan_involution;
    Ok(Finding::exact(
        verdict,
        json!({
            "component_dims": c.component_dims,
            "bracket_form_det": to_string(&c.bracket_form_det),
            "lambdas": c.lambdas.iter().map(to_string).collect::<Vec<_>>(),
            "csp_check": c.csp_check,
            "faithful": c.faithful,
            "integral": c.integral,
            "cartan_involution": c.cartan_involution,
        }),
    ))
}

fn cohomology(g: &GradedLieAlgebra, mode: Mode) -> Result<Finding> {
    let rows = cohomology_table(g, 1, mode)?;
    let csp_dim = csp_subspace(g)?.dim();
    let g0_dim = g.range(0).len();
    let approximate = rows.iter().any(|r| r.approximate);
    let h1: Vec<_> = rows.iter().filter(|r| r.k == 1).collect();
    let result = json!({ "csp_dim": csp_dim, "g0_dim": g0_dim, "rows": rows });
    let mut f = if g.family().is_type_a() {
        Finding::exact(true, result).with_message("no H^1 claim for type A")
    } else {
        let ok = h1.iter().all(|r| r.dim_harmonic == if r.h == 0 { csp_dim - g0_dim } else { 0 });
        Finding::exact(ok, result)
    };
    f.approximate = approximate;
    Ok(f)
}

fn theorem43(g: &GradedLieAlgebra) -> Result<Finding> {
    let r = theorem43_report(g, &TorsionContext::new(g)?)?;
    Ok(Finding::exact(r.holds(), to_value(&r)))
}

fn types(g: &GradedLieAlgebra) -> Result<Finding> {
    let r = harmonic_type_check(g)?;
    Ok(Finding::exact(r.verdict, to_value(&r)))
}

/// Inclusion and complement claims on the curvature spaces.
pub fn curvature_verdict(family: Family, r: &CurvatureSpaceReport) -> bool {
    let common = r.r_in_k && r.dim_r == r.dim_g00 && r.ricci_ok() && r.dim_k_oracle == r.dim_k && r.r_invariant;
    if family.is_type_a() {
        common && r.dim_w > 0 && r.w_invariant == Some(true) && r.w_complements_r
    } else {
        common && r.k_equals_r
    }
}

fn curvature(g: &GradedLieAlgebra) -> Result<Finding> {
    let r = verify_lemma47(g)?;
    Ok(Finding::exact(curvature_verdict(g.family(), &r), to_value(&r)))
}

fn maximality(g: &GradedLieAlgebra, trials: usize, seed: u64) -> Result<Finding> {
    let r = maximality_check(g, trials, seed)?;
    // para-Kähler gradings sit inside the subalgebra preserving one summand
    let expected = g.family() != Family::Sl;
    let message = if r.maximal {
        "no intermediate invariant subspace found".to_string()
    } else {
        let w = r.probes.iter().find(|p| !p.reaches_csp).expect("non-maximal has a witness");
        format!("non-maximal, intermediate subspace found ({}, dim {})", w.source, w.closure_dim)
    };
    let mut f = Finding::exact(r.maximal == expected, to_value(&r)).with_message(message);
    f.probabilistic = r.probabilistic;
    Ok(f)
}

/// The largest exact operator a suite assembles, used to gate float-fallback runs.
fn exact_size(g: &GradedLieAlgebra, suite: Suite) -> usize {
    let n = g.range(-1).len();
    match suite {
        Suite::Prolongation | Suite::Theorem43 | Suite::Types => binomial(n, 2) * n,
        Suite::Curvature => binomial(n, 2) * n * n,
        Suite::Maximality => n * n * n * n,
        Suite::Certify | Suite::Cohomology => 0,
    }
}

fn status_of(e: &Error) -> Status {
    match e {
        Error::Violation { .. } | Error::Lie(crate::lie::LieError::Certification { .. }) => Status::Failed,
        Error::Unsupported(_) => Status::Skipped,
        _ => Status::Error,
    }
}

fn outcome(suite: Suite, status: Status, message: impl Into<String>) -> SuiteOutcome {
    SuiteOutcome {
        suite,
        status,
        probabilistic: false,
        approximate: false,
        elapsed_ms: 0,
        message: Some(message.into()),
        result: Value::Null,
    }
}

fn run_family(spec: &FamilySpec, suites: &[Suite], cfg: &RunConfig) -> FamilyReport {
    let label = spec.to_string();
    let g = match spec.build() {
        Ok(g) => g,
        Err(e) => {
            let suites = suites.iter().map(|&s| outcome(s, Status::Error, format!("construction failed: {e}"))).collect();
            return FamilyReport { family: label, component_dims: None, suites };
        }
    };
    let mut out: Vec<SuiteOutcome> = Vec::new();
    for &suite in suites {
        let prior = |s: Suite| out.iter().find(|o| o.suite == s).map(|o| o.status);
        if suite != Suite::Certify && prior(Suite::Certify).is_some_and(|s| s != Status::Passed) {
            out.push(outcome(suite, Status::Skipped, "certification did not pass"));
            continue;
        }
        if suite == Suite::Types && prior(Suite::Theorem43).is_some_and(|s| s != Status::Passed) {
            out.push(outcome(suite, Status::Skipped, "theorem43 did not pass"));
            continue;
        }
        if let Mode::FloatFallback { threshold } = cfg.mode {
            let size = exact_size(&g, suite);
            if size > threshold {
                out.push(outcome(suite, Status::Skipped, format!("exact-only suite, operator size {size} exceeds {threshold}")));
                continue;
            }
        }
        let start = Instant::now();
        let found = match suite {
            Suite::Certify => certify(&g),
            Suite::Cohomology => cohomology(&g, cfg.mode),
            Suite::Prolongation => pacs_prolongation(&g).map(|r| Finding::exact(r.dim_kernel == 0, to_value(&r))),
            Suite::Theorem43 => theorem43(&g),
            Suite::Types => types(&g),
            Suite::Curvature => curvature(&g),
            Suite::Maximality => maximality(&g, cfg.trials, cfg.seed.unwrap_or_default()),
        };
        let elapsed_ms = start.elapsed().as_millis() as u64;
        out.push(match found {
            Ok(f) => SuiteOutcome {
                suite,
                status: if f.verdict { Status::Passed } else { Status::Failed },
                probabilistic: f.probabilistic,
                approximate: f.approximate,
                elapsed_ms,
                message: f.message,
                result: f.result,
            },
            Err(e) => SuiteOutcome { elapsed_ms, ..outcome(suite, status_of(&e), e.to_string()) },
        });
    }
    FamilyReport { family: label, component_dims: Some(g.component_dims()), suites: out }
}

/// Runs every selected suite on every family. Families run in parallel; the
/// report keeps the configured family order and canonical suite order.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    let (specs, suites) = cfg.validate()?;
    let families = specs.par_iter().map(|s| run_family(s, &suites, cfg)).collect();
    Ok(Report { tool_version: TOOL_VERSION.to_string(), config: cfg.clone(), conventions: Conventions::default(), families })
}

/// Float-fallback mode with the default size threshold.
pub fn float_mode() -> Mode {
    Mode::FloatFallback { threshold: DEFAULT_THRESHOLD }
}

/// Paths where `report` and `golden` differ, ignoring timing fields.
/// Paths look like `families[2].suites[0].result.dim_kernel`.
pub fn compare_values(report: &Value, golden: &Value) -> Vec<String> {
    let mut diffs = Vec::new();
    diff_at("", report, golden, &mut diffs);
    diffs
}

fn diff_at(path: &str, a: &Value, b: &Value, out: &mut Vec<String>) {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let mut keys: Vec<&String> = x.keys().chain(y.keys()).collect();
            keys.sort();
            keys.dedup();
            for k in keys {
                if TIMING_FIELDS.contains(&k.as_str()) {
                    continue;
                }
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                match (x.get(k), y.get(k)) {
                    (Some(u), Some(v)) => diff_at(&p, u, v, out),
                    (Some(_), None) => out.push(format!("{p}: only in report")),
                    (None, Some(_)) => out.push(format!("{p}: only in golden")),
                    (None, None) => unreachable!(),
                }
            }
        }
        (Value::Array(x), Value::Array(y)) => {
            if x.len() != y.len() {
                out.push(format!("{path}: length {} vs {}", x.len(), y.len()));
            }
            for (i, (u, v)) in x.iter().zip(y).enumerate() {
                diff_at(&format!("{path}[{i}]"), u, v, out);
            }
        }
        _ if a != b => out.push(format!("{path}: {a} vs {b}")),
        _ => {}
    }
}

/// Reads both files and compares them structurally.
pub fn compare_golden(report_path: &std::path::Path, golden_path: &std::path::Path) -> Result<Vec<String>> {
    let read = |p: &std::path::Path| -> Result<Value> { Ok(serde_json::from_str(&std::fs::read_to_string(p)?)?) };
    Ok(compare_values(&read(report_path)?, &read(golden_path)?))
}

/// Flattened projection `family,suite,path,value` of every scalar integer or boolean field.
pub fn to_csv(report: &Report) -> String {
    let mut lines = vec!["family,suite,path,value".to_string()];
    for f in &report.families {
        for o in &f.suites {
            let mut leaves = Vec::new();
            scalar_leaves("", &o.result, &mut leaves);
            for (p, v) in leaves {
                lines.push(format!("{},{},{},{}", f.family, o.suite, p, v));
            }
        }
    }
    lines.join("\n") + "\n"
}

fn scalar_leaves(path: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                scalar_leaves(&p, x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                scalar_leaves(&format!("{path}[{i}]"), x, out);
            }
        }
        Value::Number(_) | Value::Bool(_) => out.push((path.to_string(), v.to_string())),
        _ => {}
    }
}
