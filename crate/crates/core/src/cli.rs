//! Operator files, command dispatch and reports.
//!
//! An operator file is line-oriented `key = value` text. `#` starts a comment.
//! Recognized keys are `form` (`raw` or `divergence`), `order`, `family`
//! (`true`/`false`), and coefficient keys `a0, a1, …` (raw form) or
//! `b0, b1, …` (divergence form) whose values use the polynomial grammar of
//! [`crate::poly`]:
//!
//! ```text
//! # x^4 - d x^2 d in divergence form
//! b0 = x^4
//! b1 = x^2
//! ```
//!
//! Reports are JSON objects carrying a schema version, the command, a SHA-256
//! digest of the inputs, the seed, a certification scope and a tolerance.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::conditions::{check_assumption1, ChainMode, MARGIN};
use crate::opalg::{adjoint, is_symmetric, DivOp, RawOp};
use crate::poly::{parse_poly_at, ParseError, Poly, Var};
use crate::pseudiff::{self_adjoint_certificate, DEFAULT_SCHEDULE};
use crate::quantize::{parse_classical_monomial, parse_nc_poly, quantize, quantize_divergence, weyl_lift, NcPoly};
use crate::spectral::{comparison_certificate, positivity_certificate, PSD_TOL};
use crate::structure::{
    divergence_from_raw, k_table_by_inversion, power_div_coeffs, raw_from_divergence, scale_hbar, scaled_power_div,
    structure_constants,
};

/// Version of the report schema.
pub const SCHEMA_VERSION: u32 = 1;

/// Exit status: computed or passed.
pub const EXIT_OK: i32 = 0;
/// Exit status: a check failed.
pub const EXIT_FAILED: i32 = 1;
/// Exit status: inconclusive.
pub const EXIT_INCONCLUSIVE: i32 = 2;
/// Exit status: invalid input.
pub const EXIT_INPUT: i32 = 3;

/// Errors reading operator files.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    /// Malformed line or value.
    #[error("{line}:{column}: {message}")]
    Syntax {
        /// 1-based line.
        line: usize,
        /// 1-based column.
        column: usize,
        /// Description.
        message: String,
    },
    /// Polynomial syntax error.
    #[error(transparent)]
    Poly(#[from] ParseError),
    /// The file holds no coefficients.
    #[error("operator file contains no coefficients")]
    Empty,
    /// The file is well formed but cannot be converted as requested.
    #[error("{0}")]
    Conversion(String),
}

/// Storage form of an operator file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// `Σ a_k ∂^k`.
    Raw,
    /// `Σ (−1)^l ∂^l b_l ∂^l`.
    Divergence,
}

impl Form {
    fn prefix(self) -> char {
        match self {
            Form::Raw => 'a',
            Form::Divergence => 'b',
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Raw => "raw",
            Form::Divergence => "divergence",
        })
    }
}

/// Parsed operator file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorFile {
    /// Storage form.
    pub form: Form,
    /// Coefficients indexed `0..=order`, missing ones zero.
    pub coeffs: Vec<Poly>,
    /// Whether coefficients may use `s`.
    pub family: bool,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

impl FromStr for OperatorFile {
    type Err = CliError;

    fn from_str(src: &str) -> Result<Self, CliError> {
        let mut form: Option<(Form, usize)> = None;
        let mut order: Option<usize> = None;
        let mut family: Option<bool> = None;
        let mut entries: Vec<(usize, Poly, usize)> = Vec::new();
        for (idx, raw_line) in src.lines().enumerate() {
            let line = idx + 1;
            let content = raw_line.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let eq = content
                .find('=')
                .ok_or_else(|| syntax(line, 1, "expected `key = value`"))?;
            let key = content[..eq].trim();
            let value_start = eq + 1 + (content[eq + 1..].len() - content[eq + 1..].trim_start().len());
            let value = content[value_start..].trim_end();
            let value_col = content[..value_start].chars().count() + 1;
            let key_col = content[..content.find(key).unwrap_or(0)].chars().count() + 1;
            match key {
                "form" => {
                    let f = match value {
                        "raw" => Form::Raw,
                        "divergence" => Form::Divergence,
                        _ => return Err(syntax(line, value_col, format!("unknown form `{value}`"))),
                    };
                    form = Some((f, line));
                }
                "order" => {
                    order = Some(
                        value
                            .parse()
                            .map_err(|_| syntax(line, value_col, format!("invalid order `{value}`")))?,
                    );
                }
                "family" => {
                    family = Some(match value {
                        "true" => true,
                        "false" => false,
                        _ => return Err(syntax(line, value_col, format!("invalid family flag `{value}`"))),
                    });
                }
                _ => {
                    let mut chars = key.chars();
                    let f = match chars.next() {
                        Some('a') => Form::Raw,
                        Some('b') => Form::Divergence,
                        _ => return Err(syntax(line, key_col, format!("unknown key `{key}`"))),
                    };
                    let index: usize = chars
                        .as_str()
                        .parse()
                        .map_err(|_| syntax(line, key_col, format!("unknown key `{key}`")))?;
                    match form {
                        Some((g, _)) if g != f => {
                            return Err(syntax(line, key_col, format!("coefficient `{key}` does not match form {g}")))
                        }
                        _ => form = Some((f, line)),
                    }
                    if entries.iter().any(|e| e.0 == index) {
                        return Err(syntax(line, key_col, format!("duplicate coefficient `{key}`")));
                    }
                    let p = parse_poly_at(value, line, value_col)?;
                    if p.contains(Var::Xi) {
                        return Err(syntax(line, value_col, "coefficients may not contain xi"));
                    }
                    entries.push((index, p, line));
                }
            }
        }
        let (form, _) = form.ok_or(CliError::Empty)?;
        let top = entries.iter().map(|e| e.0).max();
        let len = match (order, top) {
            (Some(o), Some(t)) if t > o => {
                let line = entries.iter().find(|e| e.0 == t).map_or(1, |e| e.2);
                return Err(syntax(line, 1, format!("index {t} exceeds order {o}")));
            }
            (Some(o), _) => o + 1,
            (None, Some(t)) => t + 1,
            (None, None) => return Err(CliError::Empty),
        };
        let mut coeffs = vec![Poly::zero(); len];
        for (i, p, _) in entries {
            coeffs[i] = p;
        }
        let uses_s = coeffs.iter().any(|p| p.contains(Var::S));
        if family == Some(false) && uses_s {
            return Err(syntax(1, 1, "family = false but coefficients use s"));
        }
        Ok(OperatorFile {
            form,
            coeffs,
            family: family.unwrap_or(uses_s),
        })
    }
}

impl OperatorFile {
    /// File for a divergence-form operator.
    pub fn from_div(d: &DivOp) -> Self {
        OperatorFile {
            form: Form::Divergence,
            coeffs: d.coeffs().to_vec(),
            family: d.is_family(),
        }
    }

    /// File for a raw operator.
    pub fn from_raw(l: &RawOp) -> Self {
        OperatorFile {
            form: Form::Raw,
            coeffs: l.coeffs().to_vec(),
            family: l.coeffs().iter().any(|p| p.contains(Var::S)),
        }
    }

    /// Text that parses back to an equal file.
    pub fn emit(&self) -> String {
        let mut out = format!("form = {}\norder = {}\n", self.form, self.coeffs.len() - 1);
        if self.family {
            out.push_str("family = true\n");
        }
        for (i, p) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{}{i} = {p}\n", self.form.prefix()));
        }
        out
    }

    /// Divergence-form operator; raw files are converted when symmetric.
    pub fn to_div_op(&self) -> Result<DivOp, CliError> {
        match self.form {
            Form::Divergence => Ok(DivOp::new(self.coeffs.clone())),
            Form::Raw => divergence_from_raw(&RawOp::new(self.coeffs.clone())).map_err(|e| CliError::Conversion(e.to_string())),
        }
    }

    /// Raw operator; divergence files are expanded.
    pub fn to_raw_op(&self) -> RawOp {
        match self.form {
            Form::Raw => RawOp::new(self.coeffs.clone()),
            Form::Divergence => raw_from_divergence(&DivOp::new(self.coeffs.clone())),
        }
    }
}

/// How far a reported result is certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scope {
    /// Exact rational computation.
    #[serde(rename = "exact")]
    Exact,
    /// Verified on a sample grid only.
    #[serde(rename = "grid-certified")]
    GridCertified,
    /// Verified on a finite Hermite truncation only.
    #[serde(rename = "truncation certificate")]
    Truncation,
    /// No conclusion.
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

/// Machine-readable command result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    /// Schema version.
    pub schema_version: u32,
    /// Command name.
    pub command: String,
    /// SHA-256 of the command arguments and input file contents.
    pub inputs_digest: String,
    /// Seed of randomized parts.
    pub seed: u64,
    /// Certification scope.
    pub scope: Scope,
    /// Absolute tolerance attached to numeric results; zero for exact ones.
    pub tolerance: f64,
    /// Command-specific results.
    pub results: Value,
    /// Check verdict, when the command is a check.
    pub pass: Option<bool>,
    /// Error message for failed runs.
    pub error: Option<String>,
}

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// JSON report.
    Json,
    /// Human-readable tables.
    Text,
}

/// Chain mode argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// `deg b_l ≤ deg b_{l−1}`.
    Strict,
    /// `deg b_l ≤ deg b_{l−1} + 2`.
    Relaxed,
}

impl From<ModeArg> for ChainMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Strict => ChainMode::Strict,
            ModeArg::Relaxed => ChainMode::Relaxed,
        }
    }
}

/// Command line of the `symdiv` tool.
#[derive(Debug, Clone, Parser)]
#[command(name = "symdiv", version, about = "Exact operator algebra and truncation certificates for symmetric differential operators")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed of randomized parts.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Command to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Subcommands. `FILE` arguments name operator files; `-` reads stdin.
#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Formal adjoint in raw form.
    Adjoint {
        /// Operator file.
        file: PathBuf,
    },
    /// Checks whether the operator equals its formal adjoint.
    SymmetricCheck {
        /// Operator file.
        file: PathBuf,
    },
    /// Converts a symmetric raw operator to divergence form.
    ToDivergence {
        /// Operator file.
        file: PathBuf,
    },
    /// Expands a divergence-form operator to raw form.
    ToRaw {
        /// Operator file.
        file: PathBuf,
    },
    /// Raw and divergence coefficients of the n-th power.
    Power {
        /// Operator file.
        file: PathBuf,
        /// Exponent.
        #[arg(long)]
        n: u32,
        /// Power of the scaled family, with coefficients in unscaled variables.
        #[arg(long)]
        scaled: bool,
    },
    /// Replaces b_l by s^(2l) b_l(s x, s).
    ScaleHbar {
        /// Operator file.
        file: PathBuf,
    },
    /// Checks the degree and positivity hypotheses of a family on an hbar grid.
    Assumption1 {
        /// Operator file.
        file: PathBuf,
        /// Upper end of the hbar interval.
        #[arg(long, default_value_t = 1.0)]
        eta: f64,
        /// Degree-chain mode.
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
    },
    /// Smallest C1 with C1 (L^n + C2) - Ltilde^n PSD on Hermite truncations.
    Compare {
        /// Operator file of Ltilde.
        tilde: PathBuf,
        /// Operator file of L.
        file: PathBuf,
        /// Exponent.
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// hbar values.
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.5, 1.0])]
        hbar: Vec<f64>,
        /// Truncation dimension.
        #[arg(long, default_value_t = 64)]
        dim: usize,
        /// Shift C2.
        #[arg(long, default_value_t = 1.0)]
        c2: f64,
    },
    /// Smallest eigenvalues of Hermite truncations of L^n.
    Positivity {
        /// Operator file.
        file: PathBuf,
        /// Exponent.
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// hbar values.
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.5, 1.0])]
        hbar: Vec<f64>,
        /// Truncation dimension.
        #[arg(long, default_value_t = 64)]
        dim: usize,
    },
    /// Parametrix remainder norm sweep over mu.
    Cert {
        /// Operator file.
        file: PathBuf,
        /// Exponent.
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Shift c; chosen from the symbol when absent.
        #[arg(long)]
        c: Option<f64>,
        /// mu values.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SCHEDULE.to_vec())]
        mu_schedule: Vec<f64>,
        /// hbar for families.
        #[arg(long)]
        hbar: Option<f64>,
        /// Grid points per axis.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Quantizes a classical monomial (Weyl lift) or a polynomial in theta, theta*.
    Quantize {
        /// Classical monomial such as `x^2 xi^2`.
        #[arg(long, conflicts_with = "nc", required_unless_present = "nc")]
        weyl: Option<String>,
        /// Noncommutative polynomial such as `theta* theta`.
        #[arg(long)]
        nc: Option<String>,
    },
    /// Tables of the combinatorial constants C_n and K_m.
    Constants {
        /// Size m.
        #[arg(long)]
        m: usize,
    },
}

impl Command {
    /// Subcommand name as typed on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Command::Adjoint { .. } => "adjoint",
            Command::SymmetricCheck { .. } => "symmetric-check",
            Command::ToDivergence { .. } => "to-divergence",
            Command::ToRaw { .. } => "to-raw",
            Command::Power { .. } => "power",
            Command::ScaleHbar { .. } => "scale-hbar",
            Command::Assumption1 { .. } => "assumption1",
            Command::Compare { .. } => "compare",
            Command::Positivity { .. } => "positivity",
            Command::Cert { .. } => "cert",
            Command::Quantize { .. } => "quantize",
            Command::Constants { .. } => "constants",
        }
    }

    fn files(&self) -> Vec<&PathBuf> {
        match self {
            Command::Adjoint { file }
            | Command::SymmetricCheck { file }
            | Command::ToDivergence { file }
            | Command::ToRaw { file }
            | Command::Power { file, .. }
            | Command::ScaleHbar { file }
            | Command::Assumption1 { file, .. }
            | Command::Positivity { file, .. }
            | Command::Cert { file, .. } => vec![file],
            Command::Compare { tilde, file, .. } => vec![tilde, file],
            Command::Quantize { .. } | Command::Constants { .. } => vec![],
        }
    }
}

/// Reads input files; `-` denotes stdin.
pub trait InputSource {
    /// Contents of `path`.
    fn read(&self, path: &Path) -> Result<String, String>;
}

/// Reads from the filesystem and stdin.
pub struct FsSource;

impl InputSource for FsSource {
    fn read(&self, path: &Path) -> Result<String, String> {
        if path.as_os_str() == "-" {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| e.to_string())?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
        }
    }
}

fn digest(cmd: &Command, seed: u64, contents: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(format!("{cmd:?}|seed={seed}").as_bytes());
    for c in contents {
        h.update([0u8]);
        h.update(c.as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(Poly::to_string).collect()
}

fn rationals(rs: &[BigRational]) -> Vec<String> {
    rs.iter().map(BigRational::to_string).collect()
}

struct Outcome {
    scope: Scope,
    tolerance: f64,
    results: Value,
    pass: Option<bool>,
    code: i32,
}

impl Outcome {
    fn exact(results: Value) -> Self {
        Outcome {
            scope: Scope::Exact,
            tolerance: 0.0,
            results,
            pass: None,
            code: EXIT_OK,
        }
    }

    fn check(scope: Scope, tolerance: f64, results: Value, pass: bool) -> Self {
        Outcome {
            scope,
            tolerance,
            results,
            pass: Some(pass),
            code: if pass { EXIT_OK } else { EXIT_FAILED },
        }
    }
}

enum Failure {
    Input(String),
    Check(String),
}

fn input<E: fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn check<E: fmt::Display>(e: E) -> Failure {
    Failure::Check(e.to_string())
}

fn dispatch(cmd: &Command, files: &[OperatorFile]) -> Result<Outcome, Failure> {
    let file = || &files[0];
    let div = |f: &OperatorFile| f.to_div_op().map_err(check);
    Ok(match cmd {
        Command::Adjoint { .. } => {
            let l = file().to_raw_op();
            Outcome::exact(json!({ "a": strings(l.coeffs()), "adjoint": strings(adjoint(&l).coeffs()) }))
        }
        Command::SymmetricCheck { .. } => {
            let sym = is_symmetric(&file().to_raw_op());
            Outcome::check(Scope::Exact, 0.0, json!({ "symmetric": sym }), sym)
        }
        Command::ToDivergence { .. } => {
            let d = div(file())?;
            Outcome::exact(json!({ "b": strings(d.coeffs()), "file": OperatorFile::from_div(&d).emit() }))
        }
        Command::ToRaw { .. } => {
            let l = file().to_raw_op();
            Outcome::exact(json!({ "a": strings(l.coeffs()), "file": OperatorFile::from_raw(&l).emit() }))
        }
        Command::Power { n, scaled, .. } => {
            let d = div(file())?;
            let p = if *scaled { scaled_power_div(&d, *n).map_err(check)? } else { power_div_coeffs(&d, *n) };
            Outcome::exact(serde_json::to_value(&p).map_err(input)?)
        }
        Command::ScaleHbar { .. } => {
            let d = scale_hbar(&div(file())?);
            Outcome::exact(json!({ "b": strings(d.coeffs()), "file": OperatorFile::from_div(&d).emit() }))
        }
        Command::Assumption1 { eta, mode, .. } => {
            if !(*eta > 0.0) {
                return Err(Failure::Input(format!("eta must be positive, got {eta}")));
            }
            let r = check_assumption1(&div(file())?, *eta, (*mode).into());
            Outcome::check(Scope::GridCertified, MARGIN, serde_json::to_value(&r).map_err(input)?, r.passed)
        }
        Command::Compare { n, hbar, dim, c2, .. } => {
            let (dt, d) = (div(&files[0])?, div(&files[1])?);
            let cert = comparison_certificate(&dt, &d, *n, hbar, *dim, *c2).map_err(check)?;
            let pass = cert.c1_found.is_some();
            Outcome::check(Scope::Truncation, PSD_TOL.abs(), serde_json::to_value(&cert).map_err(input)?, pass)
        }
        Command::Positivity { n, hbar, dim, .. } => {
            let cert = positivity_certificate(&div(file())?, *n, hbar, *dim).map_err(check)?;
            let mut v = serde_json::to_value(&cert).map_err(input)?;
            v["nonnegative"] = json!(cert.c_found == 0.0);
            Outcome {
                scope: Scope::Truncation,
                tolerance: PSD_TOL.abs(),
                results: v,
                pass: None,
                code: EXIT_OK,
            }
        }
        Command::Cert { n, c, mu_schedule, hbar, grid, .. } => {
            let cert = self_adjoint_certificate(&div(file())?, *n, *c, mu_schedule, *hbar, *grid).map_err(check)?;
            let mut v = serde_json::to_value(&cert).map_err(input)?;
            v["meaning"] = json!("numerical evidence for the parametrix range condition, not a proof of self-adjointness");
            let found = cert.mu_star.is_some();
            Outcome {
                scope: if found { Scope::GridCertified } else { Scope::Inconclusive },
                tolerance: 0.0,
                results: v,
                pass: Some(found),
                code: if found { EXIT_OK } else { EXIT_INCONCLUSIVE },
            }
        }
        Command::Quantize { weyl, nc } => {
            let (h, source): (NcPoly, String) = match (weyl, nc) {
                (Some(w), _) => {
                    let (a, b) = parse_classical_monomial(w).map_err(input)?;
                    (weyl_lift(a, b), w.clone())
                }
                (None, Some(src)) => (parse_nc_poly(src).map_err(input)?, src.clone()),
                (None, None) => return Err(Failure::Input("either --weyl or --nc is required".into())),
            };
            let raw = quantize(&h).map_err(check)?;
            let d = quantize_divergence(&h).map_err(check)?;
            Outcome::exact(json!({
                "input": source,
                "nc": h.to_string(),
                "a": strings(raw.coeffs()),
                "b": strings(d.coeffs()),
            }))
        }
        Command::Constants { m } => {
            let sc = structure_constants(*m);
            let c: Vec<Vec<Vec<String>>> = sc.c.iter().map(|t| t.iter().map(|r| rationals(r)).collect()).collect();
            let k: Vec<Vec<String>> = sc.k.iter().map(|r| rationals(r)).collect();
            let agree = k_table_by_inversion(*m) == sc.k;
            Outcome::check(Scope::Exact, 0.0, json!({ "m": m, "c": c, "k": k, "k_routes_agree": agree }), agree)
        }
    })
}

/// Runs a command against an input source and returns the report and exit
/// status.
pub fn run_with(cli: &Cli, source: &dyn InputSource) -> (Report, i32) {
    let cmd = &cli.command;
    let mut contents = Vec::new();
    let mut failure = None;
    for path in cmd.files() {
        match source.read(path) {
            Ok(s) => contents.push(s),
            Err(e) => {
                failure = Some(e);
                break;
            }
        }
    }
    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        command: cmd.name().to_string(),
        inputs_digest: digest(cmd, cli.seed, &contents),
        seed: cli.seed,
        scope: Scope::Inconclusive,
        tolerance: 0.0,
        results: Value::Null,
        pass: None,
        error: None,
    };
    if let Some(e) = failure {
        report.error = Some(e);
        return (report, EXIT_INPUT);
    }
    let parsed: Result<Vec<OperatorFile>, String> = contents.iter().map(|c| c.parse::<OperatorFile>().map_err(|e| e.to_string())).collect();
    let files = match parsed {
        Ok(f) => f,
        Err(e) => {
            report.error = Some(e);
            return (report, EXIT_INPUT);
        }
    };
    match dispatch(cmd, &files) {
        Ok(o) => {
            report.scope = o.scope;
            report.tolerance = o.tolerance;
            report.results = o.results;
            report.pass = o.pass;
            (report, o.code)
        }
        Err(Failure::Input(e)) => {
            report.error = Some(e);
            (report, EXIT_INPUT)
        }
        Err(Failure::Check(e)) => {
            report.pass = Some(false);
            report.error = Some(e);
            (report, EXIT_FAILED)
        }
    }
}

/// Runs a command reading files from disk.
pub fn run(cli: &Cli) -> (Report, i32) {
    run_with(cli, &FsSource)
}

fn text_value(key: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if key.is_empty() { k.clone() } else { format!("{key}.{k}") };
                text_value(&key, v, out);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            for (i, item) in items.iter().enumerate() {
                out.push_str(&format!("{key}[{i}] = {}\n", plain(item)));
            }
        }
        Value::String(s) if s.contains('\n') => {
            out.push_str(&format!("{key}:\n"));
            for line in s.lines() {
                out.push_str(&format!("  {line}\n"));
            }
        }
        other => out.push_str(&format!("{key} = {}\n", plain(other))),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Renders a report as JSON or text.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).unwrap_or_default(),
        Format::Text => {
            let mut out = format!(
                "command: {}\nscope: {}\ntolerance: {}\nseed: {}\ndigest: {}\n",
                report.command,
                plain(&serde_json::to_value(report.scope).unwrap_or_default()),
                report.tolerance,
                report.seed,
                report.inputs_digest
            );
            if let Some(p) = report.pass {
                out.push_str(&format!("pass: {p}\n"));
            }
            if let Some(e) = &report.error {
                out.push_str(&format!("error: {e}\n"));
            }
            text_value("", &report.results, &mut out);
            out
        }
    }
}

/// Runs the parsed command line, prints the report and returns the exit status.
/// A closed stdout (for example a pipe into `head`) is not an error.
pub fn execute(cli: &Cli) -> i32 {
    let (report, code) = run(cli);
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{}", render(&report, cli.format)).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            eprintln!("symdiv: {e}");
            EXIT_INPUT
        }
        _ => code,
    }
}
