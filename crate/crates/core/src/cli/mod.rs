//! Command-line front end.
//!
//! Exit codes: 0 when the analysis ran, 1 for input errors, 2 when a
//! `--require`d condition fails or a net is invalid, 3 for internal
//! consistency failures.

pub mod input;
mod render;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use indexmap::IndexMap;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::Partition;
use crate::contexts::{map_to_dot, poset_to_dot, ContextPoset, Poset, DEFAULT_MAX_BELL};
use crate::descent::{covering_stability, sheaf_report, Descent, DescentReport, StabilityViolation};
use crate::error::{Error, Result};
use crate::independence::{hierarchy_report, Condition, HierarchyReport, Limits, Verdict};
use crate::net::{analyze_net, validate_net, NetReport, NetValidation};
use crate::valuations::{
    product_extension, valuation_independence_test, ProductExtension, Sampling, Valuation, ValuationTestReport,
};
use input::{InputDocument, Workspace};

pub const TOOL: &str = "locality";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_REQUIREMENT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = TOOL, version = VERSION, about = "Independence, descent and sheaf checks for pairs and nets of finite algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Independence hierarchy of the input pair, with witnesses.
    CheckPair(CommonArgs),
    /// Descent map, ring components, sheaf decision and stability axiom.
    Descent(CommonArgs),
    /// Validate a net and analyse every spacelike pair.
    CheckNet(CommonArgs),
    /// Product extension of valuations and the valuation independence test.
    Valuations(ValuationArgs),
    /// Enumerate the contexts of one algebra.
    Contexts(ContextArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Input JSON document.
    pub file: PathBuf,
    /// Print the JSON report envelope instead of text.
    #[arg(long)]
    pub json: bool,
    /// Write a Graphviz rendering here.
    #[arg(long, value_name = "PATH")]
    pub dot: Option<PathBuf>,
    /// Exit 2 unless this condition holds (repeatable).
    #[arg(long, value_name = "CONDITION")]
    pub require: Vec<String>,
    #[arg(long, value_name = "N")]
    pub max_bell: Option<u64>,
    #[arg(long, value_name = "N")]
    pub max_dim: Option<usize>,
    /// Seed for valuation sampling.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ValuationArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Weights on the left context's blocks, e.g. `1/2,1/2`.
    #[arg(long, value_name = "WEIGHTS")]
    pub mu1: Option<String>,
    #[arg(long, value_name = "WEIGHTS")]
    pub mu2: Option<String>,
}

#[derive(Debug, Args)]
pub struct ContextArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Algebra to enumerate; defaults to the left side of the pair.
    #[arg(long, value_name = "NAME")]
    pub algebra: Option<String>,
}

/// What a finished invocation printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// The machine-readable output wrapper.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    pub input_sha256: Option<String>,
    pub command: String,
    pub ambient: Vec<String>,
    pub result: serde_json::Value,
    pub exit_status: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentResult {
    pub descent: DescentReport,
    pub stability_violations: Vec<StabilityViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetResult {
    pub validation: NetValidation,
    pub report: Option<NetReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionResult {
    pub extended: bool,
    /// Weights on the blocks of `C ∨ D`.
    pub weights: Option<IndexMap<String, (i64, i64)>>,
    pub left_block: Option<String>,
    pub right_block: Option<String>,
    pub mass: Option<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationsResult {
    pub left_context: Partition,
    pub right_context: Partition,
    pub mu1: IndexMap<String, (i64, i64)>,
    pub mu2: IndexMap<String, (i64, i64)>,
    pub extension: ExtensionResult,
    pub independence: ValuationTestReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextsResult {
    pub algebra: String,
    pub count: usize,
    pub contexts: Vec<Partition>,
    pub hasse_edges: Vec<(usize, usize)>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    run_cli(&cli)
}

struct Rendered {
    text: String,
    json: serde_json::Value,
    code: i32,
    notes: Vec<String>,
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let (name, common) = match &cli.command {
        Command::CheckPair(c) => ("check-pair", c),
        Command::Descent(c) => ("descent", c),
        Command::CheckNet(c) => ("check-net", c),
        Command::Valuations(v) => ("valuations", &v.common),
        Command::Contexts(c) => ("contexts", &c.common),
    };
    let bytes = std::fs::read(&common.file);
    let digest = bytes.as_ref().ok().map(|b| hex::encode(Sha256::digest(b)));
    let mut ambient = Vec::new();
    let result = bytes
        .map_err(|e| Error::input(format!("cannot read {}: {e}", common.file.display())))
        .and_then(|b| String::from_utf8(b).map_err(|_| Error::input("input is not UTF-8")))
        .and_then(|text| InputDocument::parse(&text))
        .and_then(|doc| {
            let limits = limits(common, &doc);
            let ws = Workspace::build(doc, &limits)?;
            ambient = ws.ambient.labels().to_vec();
            dispatch(&cli.command, &ws, &limits)
        });
    let (code, text, json, notes) = match result {
        Ok(r) => (r.code, r.text, r.json, r.notes),
        Err(e) => {
            let code = if e.is_internal() { EXIT_INTERNAL } else { EXIT_INPUT };
            let kind = if e.is_internal() { "internal" } else { "input" };
            let report = ErrorReport { kind: kind.into(), message: e.to_string() };
            (code, String::new(), serde_json::json!({ "error": report }), vec![format!("error: {e}")])
        }
    };
    let stdout = if common.json {
        let env = ReportEnvelope {
            tool: TOOL.into(),
            version: VERSION.into(),
            input_sha256: digest,
            command: name.into(),
            ambient,
            result: json,
            exit_status: code,
        };
        let mut s = serde_json::to_string_pretty(&env).expect("report serialises");
        s.push('\n');
        s
    } else {
        text
    };
    let mut stderr = String::new();
    for n in notes {
        stderr.push_str(&n);
        stderr.push('\n');
    }
    Outcome { code, stdout, stderr }
}

fn limits(common: &CommonArgs, doc: &InputDocument) -> Limits {
    Limits {
        max_bell: common.max_bell.or(doc.options.max_bell).map_or(DEFAULT_MAX_BELL, u128::from),
        max_dim: common.max_dim.or(doc.options.max_dim).unwrap_or(Limits::default().max_dim),
    }
}

fn sampling(common: &CommonArgs, doc: &InputDocument) -> Sampling {
    let d = Sampling::default();
    Sampling {
        seed: common.seed.or(doc.options.seed).unwrap_or(d.seed),
        per_context_pair: doc.options.samples_per_pair.unwrap_or(d.per_context_pair),
    }
}

fn to_json<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("report serialises")
}

fn write_dot(path: &Path, dot: &str) -> Result<()> {
    std::fs::write(path, dot).map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))
}

/// A `--require` target: a hierarchy condition or the sheaf condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Requirement {
    Condition(Condition),
    Sheaf,
}

fn parse_requirements(raw: &[String]) -> Result<Vec<Requirement>> {
    raw.iter()
        .map(|s| {
            if s.trim().eq_ignore_ascii_case("sheaf") {
                Ok(Requirement::Sheaf)
            } else {
                s.parse().map(Requirement::Condition)
            }
        })
        .collect()
}

fn requirement_name(r: Requirement) -> &'static str {
    match r {
        Requirement::Condition(c) => c.name(),
        Requirement::Sheaf => "sheaf",
    }
}

/// Applies `--require`: returns the exit code and a note per failure.
fn check_requirements(
    raw: &[String],
    lookup: impl Fn(Requirement) -> Option<Verdict>,
) -> Result<(i32, Vec<String>)> {
    let mut notes = Vec::new();
    for r in parse_requirements(raw)? {
        let v = lookup(r)
            .ok_or_else(|| Error::input(format!("{} is not reported by this command", requirement_name(r))))?;
        if !v.is_true() {
            notes.push(format!("required condition {} is {v}", requirement_name(r)));
        }
    }
    Ok((if notes.is_empty() { EXIT_OK } else { EXIT_REQUIREMENT }, notes))
}

fn dispatch(cmd: &Command, ws: &Workspace, limits: &Limits) -> Result<Rendered> {
    match cmd {
        Command::CheckPair(c) => check_pair(c, ws, limits),
        Command::Descent(c) => descent(c, ws, limits),
        Command::CheckNet(c) => check_net(c, ws, limits),
        Command::Valuations(v) => valuations(v, ws, limits),
        Command::Contexts(c) => contexts(c, ws, limits),
    }
}

fn hierarchy_lookup(h: &HierarchyReport) -> impl Fn(Requirement) -> Option<Verdict> + '_ {
    move |r| match r {
        Requirement::Condition(c) => Some(h.get(c)),
        Requirement::Sheaf => None,
    }
}

fn check_pair(args: &CommonArgs, ws: &Workspace, limits: &Limits) -> Result<Rendered> {
    if args.dot.is_some() {
        return Err(Error::input("check-pair has no DOT output"));
    }
    let report = hierarchy_report(&ws.pair()?, limits)?;
    let (code, notes) = check_requirements(&args.require, hierarchy_lookup(&report))?;
    Ok(Rendered { text: render::hierarchy(&report, &ws.ambient), json: to_json(&report), code, notes })
}

fn descent(args: &CommonArgs, ws: &Workspace, limits: &Limits) -> Result<Rendered> {
    let pair = ws.partition_pair("descent")?;
    let report = sheaf_report(&pair, limits)?;
    let stability_violations = covering_stability(&pair, limits)?;
    if let Some(path) = &args.dot {
        let d = Descent::new(&pair, limits)?.with_ambient(&ws.ambient)?;
        write_dot(path, &map_to_dot(&d.map()?, "descent"))?;
    }
    let result = DescentResult { descent: report, stability_violations };
    let d = &result.descent;
    let (code, notes) = check_requirements(&args.require, |r| match r {
        Requirement::Sheaf => Some(d.sheaf.into()),
        Requirement::Condition(Condition::StrongLocality) => Some(d.strong_locality.into()),
        Requirement::Condition(Condition::UnitLaw) => Some(d.unit_law.into()),
        Requirement::Condition(Condition::ExtendedLocality) => Some(d.extended_locality.into()),
        Requirement::Condition(Condition::CstarIndependent) => Some(d.cstar_independent.into()),
        Requirement::Condition(_) => None,
    })?;
    Ok(Rendered { text: render::descent(&result, &ws.ambient), json: to_json(&result), code, notes })
}

fn check_net(args: &CommonArgs, ws: &Workspace, limits: &Limits) -> Result<Rendered> {
    let spec = ws.net()?;
    if let Some(path) = &args.dot {
        write_dot(path, &poset_to_dot(spec.spacetime(), "spacetime"))?;
    }
    let validation = validate_net(&spec);
    if !validation.valid {
        let result = NetResult { validation, report: None };
        let notes = vec![format!("net is invalid: {} violation(s)", result.validation.violations.len())];
        return Ok(Rendered {
            text: render::net(&result, &ws.ambient),
            json: to_json(&result),
            code: EXIT_REQUIREMENT,
            notes,
        });
    }
    let report = analyze_net(&spec, limits)?;
    let s = report.summary;
    let (code, notes) = check_requirements(&args.require, |r| match r {
        Requirement::Sheaf => Some(s.sheaf.into()),
        Requirement::Condition(Condition::Microcausality) => Some(s.microcausal.into()),
        Requirement::Condition(Condition::ExtendedLocality) => Some(s.extended_locality.into()),
        Requirement::Condition(Condition::StrongLocality) => Some(s.strongly_local.into()),
        Requirement::Condition(Condition::CstarIndependent) => Some(s.cstar_independent.into()),
        Requirement::Condition(_) => None,
    })?;
    let result = NetResult { validation, report: Some(report) };
    Ok(Rendered { text: render::net(&result, &ws.ambient), json: to_json(&result), code, notes })
}

/// Parses `1/2,1/3,1/6` (or whitespace separated) into exact weights.
pub fn parse_weights(s: &str) -> Result<Vec<BigRational>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let t = t.trim();
            let (n, d) = t.split_once('/').unwrap_or((t, "1"));
            let n: i64 = n.trim().parse().map_err(|_| Error::input(format!("bad weight {t:?}")))?;
            let d: i64 = d.trim().parse().map_err(|_| Error::input(format!("bad weight {t:?}")))?;
            crate::algebra::scalar::ratio(n, d)
        })
        .collect()
}

fn valuations(args: &ValuationArgs, ws: &Workspace, limits: &Limits) -> Result<Rendered> {
    let common = &args.common;
    if common.dot.is_some() {
        return Err(Error::input("valuations has no DOT output"));
    }
    let pair = ws.partition_pair("valuations")?;
    let section = ws.doc.valuations.clone().unwrap_or_default();
    let context = |name: &Option<String>, default: &Partition| -> Result<Partition> {
        match name {
            Some(n) => Ok(ws.partition(n)?.clone()),
            None => Ok(default.clone()),
        }
    };
    let c = context(&section.left_context, pair.left())?;
    let d = context(&section.right_context, pair.right())?;
    let pick = |flag: &Option<String>, file: &Option<IndexMap<String, (i64, i64)>>, ctx: &Partition| match (flag, file) {
        (Some(f), _) => Valuation::new(ctx.clone(), parse_weights(f)?),
        (None, Some(m)) => Valuation::from_labeled(ctx.clone(), &ws.ambient, m),
        (None, None) => Ok(Valuation::uniform(ctx.clone())),
    };
    let mu1 = pick(&args.mu1, &section.mu1, &c)?;
    let mu2 = pick(&args.mu2, &section.mu2, &d)?;
    let amb = &ws.ambient;
    let extension = match product_extension(&mu1, &mu2, &pair)? {
        ProductExtension::Extended(v) => ExtensionResult {
            extended: true,
            weights: Some(v.to_labeled(amb)),
            left_block: None,
            right_block: None,
            mass: None,
        },
        ProductExtension::Obstructed { left_block, right_block, mass } => ExtensionResult {
            extended: false,
            weights: None,
            left_block: Some(amb.block_label(&left_block)),
            right_block: Some(amb.block_label(&right_block)),
            mass: crate::algebra::scalar::ratio_parts(&mass),
        },
    };
    let independence = valuation_independence_test(&pair, limits, sampling(common, &ws.doc))?;
    let result = ValuationsResult {
        left_context: c,
        right_context: d,
        mu1: mu1.to_labeled(amb),
        mu2: mu2.to_labeled(amb),
        extension,
        independence,
    };
    let (code, notes) = check_requirements(&common.require, |r| match r {
        Requirement::Condition(Condition::CstarIndependent) => Some(result.independence.independent.into()),
        _ => None,
    })?;
    Ok(Rendered { text: render::valuations(&result, amb), json: to_json(&result), code, notes })
}

fn contexts(args: &ContextArgs, ws: &Workspace, limits: &Limits) -> Result<Rendered> {
    let common = &args.common;
    if !common.require.is_empty() {
        return Err(Error::input("contexts reports no conditions"));
    }
    let name = match (&args.algebra, &ws.doc.pair) {
        (Some(n), _) => n.clone(),
        (None, Some(p)) => p.left.clone(),
        (None, None) => ws.algebras.keys().next().cloned().ok_or_else(|| Error::input("input defines no algebras"))?,
    };
    let p = ws.partition(&name)?;
    let poset = ContextPoset::enumerate_with_limit(p, limits.max_bell)?.with_ambient(&ws.ambient)?;
    if let Some(path) = &common.dot {
        write_dot(path, &poset_to_dot(&poset, &name))?;
    }
    let result = ContextsResult {
        algebra: name,
        count: poset.len(),
        contexts: poset.elements().to_vec(),
        hasse_edges: poset.hasse_edges(),
    };
    Ok(Rendered { text: render::contexts(&result, &ws.ambient), json: to_json(&result), code: EXIT_OK, notes: Vec::new() })
}
