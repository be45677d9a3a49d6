//! Job runner behind the `vhiggs` binary.
//!
//! Every job reads one JSON document and produces one JSON report plus an exit code:
//! 0 when the analysis ran (negative verdicts included), 1 for invalid input and 2 when
//! an internal limit was hit before a verdict.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use vhiggs::algebra::Valuation;
use vhiggs::higgs::{endomorphism_algebra_dim, euler_identity_check, invariant_line_subbundles, stability_verdict, HiggsPair};
use vhiggs::hitchin::{
    base_membership, cayley_hamilton_check, classify_point_pair, hitchin_map, point_spectral_data, universal_fiber_dim,
    GaussianRational, PointPair, SpectralDatum,
};
use vhiggs::moment::{solve_metric, to_numeric, FlowConfig, FlowStatus};
use vhiggs::spectral::{etale_genus, local_equations, spectral_report, EtaleGenus, LocalEquations};
use vhiggs::Error;

pub const TOOL: &str = "vhiggs";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Degree bounds and the commuting condition of a Higgs pair
    Validate,
    /// Spectral datum b = (b1, b2, b3) of a traceless pair
    Hitchin,
    /// Zero locus, reducibility, smoothness and torsion of a spectral datum
    Spectral,
    /// Invariant line subbundles and the stability verdict
    Stability,
    /// Endomorphism algebra and the Euler characteristic identity
    Deform,
    /// Moment-map flow on a point-model pair
    SolveMetric,
    /// Exact invariants of a point-model pair
    PointModel,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Hitchin => "hitchin",
            Command::Spectral => "spectral",
            Command::Stability => "stability",
            Command::Deform => "deform",
            Command::SolveMetric => "solve-metric",
            Command::PointModel => "point-model",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Options {
    /// Treat validation findings as invalid input.
    pub strict: bool,
    /// Power of the factor used for the local unit expansions.
    pub truncation: Option<u32>,
    /// Genus of the base curve for genus formulas.
    pub genus: u64,
    pub flow: FlowConfig,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

impl Outcome {
    /// Pretty JSON with a trailing newline; identical inputs give identical bytes.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports are plain JSON");
        s.push('\n');
        s
    }
}

#[derive(Debug, thiserror::Error)]
enum JobError {
    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Math(#[from] Error),
    #[error("{0}")]
    Invalid(String),
}

struct Done {
    code: i32,
    result: Value,
}

impl Done {
    fn ok(result: impl Serialize) -> Result<Done, JobError> {
        Ok(Done { code: EXIT_OK, result: serde_json::to_value(result)? })
    }
}

pub fn digest(input: &[u8]) -> String {
    hex::encode(Sha256::digest(input))
}

/// Runs one job on raw input bytes.
pub fn run(command: Command, input: &[u8], opts: &Options) -> Outcome {
    let header = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command.name(),
        "input_sha256": digest(input),
    });
    let mut report = header;
    let code = match dispatch(command, input, opts) {
        Ok(done) => {
            report["result"] = done.result;
            done.code
        }
        Err(e) => {
            report["error"] = Value::String(e.to_string());
            EXIT_INVALID
        }
    };
    Outcome { code, report }
}

fn dispatch(command: Command, input: &[u8], opts: &Options) -> Result<Done, JobError> {
    match command {
        Command::Validate => validate(parse(input)?, opts),
        Command::Hitchin => hitchin(parse(input)?),
        Command::Spectral => spectral(parse(input)?, opts),
        Command::Stability => stability(parse(input)?),
        Command::Deform => deform(parse(input)?, opts),
        Command::SolveMetric => solve(parse(input)?, opts),
        Command::PointModel => point_model(parse(input)?),
    }
}

fn parse<T: DeserializeOwned>(input: &[u8]) -> Result<T, JobError> {
    Ok(serde_json::from_slice(input)?)
}

fn validate(pair: HiggsPair, opts: &Options) -> Result<Done, JobError> {
    let violations = pair.validate();
    if opts.strict {
        if let Some(v) = violations.first() {
            return Err(JobError::Invalid(format!("invalid Higgs pair: {v}")));
        }
    }
    let (t1, t2) = pair.trace();
    Done::ok(json!({
        "valid": violations.is_empty(),
        "violations": violations,
        "trace": [t1, t2],
        "sl2": pair.is_sl2(),
    }))
}

fn hitchin(pair: HiggsPair) -> Result<Done, JobError> {
    let b = hitchin_map(&pair)?;
    Done::ok(json!({
        "b": b,
        "in_base": base_membership(&b),
        "cayley_hamilton": cayley_hamilton_check(&pair, &b),
    }))
}

#[derive(Serialize)]
struct LocalReport {
    zero: String,
    swapped: bool,
    n: Valuation,
    m: Valuation,
    truncation: u32,
    g1: String,
    g3: String,
    generators: [String; 4],
}

impl From<&LocalEquations> for LocalReport {
    fn from(eq: &LocalEquations) -> Self {
        let var = eq.chart.var();
        LocalReport {
            zero: eq.factor.display_in(var),
            swapped: eq.swapped,
            n: eq.n,
            m: eq.m,
            truncation: eq.truncation,
            g1: eq.g1.display_in(var),
            g3: eq.g3.display_in(var),
            generators: eq.display(),
        }
    }
}

fn spectral(b: SpectralDatum, opts: &Options) -> Result<Done, JobError> {
    if !base_membership(&b) {
        return Err(Error::ConeViolated.into());
    }
    let report = spectral_report(&b, opts.genus)?;
    let local = report
        .zeros
        .iter()
        .map(|z| local_equations(&b, z.chart, &z.factor, opts.truncation).map(|eq| LocalReport::from(&eq)))
        .collect::<Result<Vec<_>, _>>()?;
    let no_cover = matches!(etale_genus(opts.genus), EtaleGenus::NoConnectedCover);
    let genus_note = if report.etale && !report.reducible.is_reducible() && no_cover {
        json!("no connected etale double cover of a genus 0 curve")
    } else {
        Value::Null
    };
    Done::ok(json!({
        "datum": b,
        "report": report,
        "local_equations": local,
        "genus_note": genus_note,
    }))
}

fn stability(pair: HiggsPair) -> Result<Done, JobError> {
    let lines = invariant_line_subbundles(&pair)?;
    let verdict = stability_verdict(&pair)?;
    Done::ok(json!({
        "invariant_lines": lines,
        "verdict": verdict.as_str(),
        "endomorphism_dim": endomorphism_algebra_dim(&pair)?,
    }))
}

fn deform(pair: HiggsPair, opts: &Options) -> Result<Done, JobError> {
    let dim = endomorphism_algebra_dim(&pair)?;
    let v = pair.twist();
    let g = i64::try_from(opts.genus).map_err(|_| JobError::Invalid("genus out of range".into()))?;
    let euler = euler_identity_check(pair.e1(), pair.e2(), v.m1.into(), v.m2.into(), g);
    Done::ok(json!({
        "endomorphism_dim": dim,
        "simple": dim == 1,
        "euler": euler,
        "genus": opts.genus,
    }))
}

fn solve(pair: PointPair<GaussianRational>, opts: &Options) -> Result<Done, JobError> {
    let class = classify_point_pair(&pair)?;
    let flow = solve_metric(&to_numeric(&pair), &opts.flow)?;
    let code = if flow.status == FlowStatus::MaxIters { EXIT_LIMIT } else { EXIT_OK };
    let cfg = &opts.flow;
    let mut result = serde_json::to_value(&flow)?;
    result["class"] = json!(class.as_str());
    result["config"] = json!({
        "step": cfg.step,
        "tol": cfg.tol,
        "max_iters": cfg.max_iters,
        "divergence_cond": cfg.divergence_cond,
    });
    Ok(Done { code, result })
}

fn point_model(pair: PointPair<GaussianRational>) -> Result<Done, JobError> {
    let class = classify_point_pair(&pair)?;
    let c = point_spectral_data(&pair);
    Done::ok(json!({
        "pair": pair,
        "spectral_data": c,
        "fiber_dim": universal_fiber_dim(&c)?,
        "class": class.as_str(),
    }))
}

/// Reads a job input: `-` is standard input, text starting with `{` is inline JSON,
/// anything else is a path.
pub fn read_input(arg: &str) -> std::io::Result<Vec<u8>> {
    if arg == "-" {
        let mut buf = Vec::new();
        std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf)?;
        Ok(buf)
    } else if arg.trim_start().starts_with('{') {
        Ok(arg.as_bytes().to_vec())
    } else {
        fs::read(arg)
    }
}

/// `*.json` files of a directory in name order.
pub fn batch_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs the job on every file of a batch in parallel. The combined exit code is the
/// largest per-file code.
pub fn run_batch(command: Command, files: &[PathBuf], opts: &Options) -> Outcome {
    let entries: Vec<(i32, Value)> = files
        .par_iter()
        .map(|path| {
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let out = match fs::read(path) {
                Ok(bytes) => run(command, &bytes, opts),
                Err(e) => Outcome {
                    code: EXIT_INVALID,
                    report: json!({ "error": format!("cannot read {name}: {e}") }),
                },
            };
            (out.code, json!({ "file": name, "exit": out.code, "report": out.report }))
        })
        .collect();
    let code = entries.iter().map(|(c, _)| *c).max().unwrap_or(EXIT_OK);
    let report = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command.name(),
        "batch": entries.into_iter().map(|(_, v)| v).collect::<Vec<_>>(),
    });
    Outcome { code, report }
}
