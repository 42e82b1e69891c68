//! Command-line front end.
//!
//! [`run_command`] does everything except touching the process: it parses
//! arguments, reads the scheme file, runs the command on a pool of
//! `--threads` workers and returns the exit code together with the text to
//! print. Exit codes: 0 success, 1 computation error, 2 parse or usage
//! error, 3 when a conjecture-mode check produced a counterexample.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bounds::{self, BoundReport, StatementId, Survey, SurveyTarget};
use crate::codes::{generator_matrix, minimum_distance, minimum_distance_exhaustive};
use crate::fps::{parse_scheme_file, serialize};
use crate::geometry::{ci_grid, scheme_degree, CiConstruction, CiDescription, CompleteIntersection, FatPointScheme};
use crate::ideals::{
    alpha, check_recursion_lemma, generalized_distance, hilbert_function_values, largest_recursion_degree,
    DEFAULT_DEGREE_CAP,
};
use crate::socle::{check_separator_socle, separator_degrees, socle_profile};
use crate::Error;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fatcode", version, about = "Exact invariants of fat point schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON report document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for grids and random linear forms.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Degree cap for searches; for `hilbert`, the last degree printed.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Merge repeated points (keeping the larger multiplicity) instead of
    /// rejecting the file.
    #[arg(long, global = true)]
    merge_duplicates: bool,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the generator matrix A(Z).
    Matrix { file: PathBuf },
    /// Minimum distance d(Z) with a witness hyperplane.
    Distance {
        file: PathBuf,
        /// Also enumerate all codewords (prime fields only).
        #[arg(long)]
        oracle: bool,
    },
    /// Initial degree α(I_Z).
    Alpha { file: PathBuf },
    /// Hilbert function values.
    Hilbert { file: PathBuf },
    /// Socle profile of an Artinian reduction.
    Socle { file: PathBuf },
    /// Minimal separator degree of every point.
    Separators { file: PathBuf },
    /// Veronese distance d(X)_a of a reduced scheme.
    Vdistance {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Run one checker, named by its slug (crude, hombound, boundscor,
    /// main-i, main-ii, fatpointsocle, recursion, cibound, soclevalueci,
    /// ci22, bezout, n2, conjecture, question).
    Check {
        statement: String,
        file: Option<PathBuf>,
        /// Complete-intersection type, e.g. `2,3`.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1)]
        mult: u32,
        /// Top degree b for the recursion ladder (default: largest b with
        /// d(X)_b >= 2).
        #[arg(long)]
        b: Option<usize>,
        /// Certify that some residual curve has no hyperplane component.
        #[arg(long)]
        certified_curve: bool,
    },
    /// Build a grid complete intersection and compare its socle degree with
    /// the closed formula.
    Ci {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        mult: u32,
    },
    /// Every applicable checker.
    Survey {
        file: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1)]
        mult: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Matrix { .. } => "matrix",
            Command::Distance { .. } => "distance",
            Command::Alpha { .. } => "alpha",
            Command::Hilbert { .. } => "hilbert",
            Command::Socle { .. } => "socle",
            Command::Separators { .. } => "separators",
            Command::Vdistance { .. } => "vdistance",
            Command::Check { .. } => "check",
            Command::Ci { .. } => "ci",
            Command::Survey { .. } => "survey",
        }
    }
}

/// Wall-clock timing; excluded from determinism comparisons.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

/// The machine-readable output of one command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema_version: u32,
    pub command: String,
    /// SHA-256 of the input file, or of the canonical arguments for commands
    /// without one.
    pub input_digest: String,
    pub seed: u64,
    pub results: Value,
    pub reports: Vec<BoundReport>,
    pub errors: Vec<String>,
    pub timing: Timing,
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub document: Option<ReportDocument>,
}

enum Failure {
    Parse(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

struct Output {
    results: Value,
    reports: Vec<BoundReport>,
    errors: Vec<String>,
    text: String,
}

impl Output {
    fn new(results: Value, text: String) -> Self {
        Output {
            results,
            reports: Vec::new(),
            errors: Vec::new(),
            text,
        }
    }
}

/// Runs `fatcode` with the given arguments (including the program name).
pub fn run_command<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                    document: None,
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                    document: None,
                }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build() {
        Ok(pool) => pool,
        Err(e) => return failure(EXIT_COMPUTATION, e.to_string()),
    };
    let start = Instant::now();
    let (digest, result) = pool.install(|| execute(&cli));
    let output = match result {
        Ok(o) => o,
        Err(Failure::Parse(msg)) => return failure(EXIT_PARSE, msg),
        Err(Failure::Compute(msg)) => return failure(EXIT_COMPUTATION, msg),
    };
    let code = if output.reports.iter().any(BoundReport::is_counterexample) {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    };
    let document = ReportDocument {
        tool: "fatcode",
        version: env!("CARGO_PKG_VERSION"),
        schema_version: SCHEMA_VERSION,
        command: cli.command.name().to_string(),
        input_digest: digest,
        seed: cli.seed,
        results: output.results,
        reports: output.reports,
        errors: output.errors,
        timing: Timing {
            elapsed_ms: start.elapsed().as_millis(),
        },
    };
    let stdout = if cli.json {
        let mut s = serde_json::to_string_pretty(&document).expect("serializable document");
        s.push('\n');
        s
    } else {
        let mut s = output.text;
        for r in &document.reports {
            s.push_str(&r.to_string());
        }
        for e in &document.errors {
            s.push_str(&format!("error: {e}\n"));
        }
        s
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
        document: Some(document),
    }
}

fn failure(code: i32, msg: String) -> Outcome {
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("fatcode: {msg}\n"),
        document: None,
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn load(path: &PathBuf, merge: bool) -> Result<(String, FatPointScheme), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    let z = parse_scheme_file(&text, merge).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    Ok((sha256_hex(text.as_bytes()), z))
}

fn execute(cli: &Cli) -> (String, Result<Output, Failure>) {
    let cap = cli.max_degree.unwrap_or(DEFAULT_DEGREE_CAP);
    let merge = cli.merge_duplicates;
    let args_digest = || sha256_hex(format!("{:?}", cli.command).as_bytes());
    let file = match &cli.command {
        Command::Matrix { file }
        | Command::Distance { file, .. }
        | Command::Alpha { file }
        | Command::Hilbert { file }
        | Command::Socle { file }
        | Command::Separators { file }
        | Command::Vdistance { file, .. } => Some(file),
        Command::Check { file, .. } | Command::Survey { file, .. } => file.as_ref(),
        Command::Ci { .. } => None,
    };
    let (digest, scheme) = match file {
        Some(path) => match load(path, merge) {
            Ok((d, z)) => (d, Some(z)),
            Err(f) => return (String::new(), Err(f)),
        },
        None => (args_digest(), None),
    };
    let result = dispatch(cli, scheme, cap);
    (digest, result)
}

fn need(z: Option<FatPointScheme>, what: &str) -> Result<FatPointScheme, Failure> {
    z.ok_or_else(|| Failure::Parse(format!("{what} needs a scheme file")))
}

fn dispatch(cli: &Cli, scheme: Option<FatPointScheme>, cap: usize) -> Result<Output, Failure> {
    let seed = cli.seed;
    match &cli.command {
        Command::Matrix { .. } => {
            let z = need(scheme, "matrix")?;
            let g = generator_matrix(&z)?;
            let rows: Vec<Vec<String>> = (0..g.matrix.rows())
                .map(|r| g.matrix.row(r).iter().map(|v| v.to_string()).collect())
                .collect();
            let (len, dim) = g.length_and_dimension();
            Ok(Output::new(
                json!({ "field": z.field(), "length": len, "dimension": dim, "rows": rows,
                        "block_multiplicities": g.block_multiplicities }),
                format!("A(Z) over {}, [{len}, {dim}] code:\n{}", z.field(), g.matrix),
            ))
        }
        Command::Distance { oracle, .. } => {
            let z = need(scheme, "distance")?;
            let d = minimum_distance(&z)?;
            let hyperplane: Vec<String> = d.witness_hyperplane.iter().map(|v| v.to_string()).collect();
            let mut text = format!(
                "d(Z) = {}\nwitness hyperplane ({}) contains points {:?}\n",
                d.d,
                hyperplane.join(", "),
                d.witness_points.iter().map(|i| i + 1).collect::<Vec<_>>()
            );
            let mut results = json!({ "d": d.d, "witness_hyperplane": hyperplane,
                                      "witness_points": d.witness_points });
            if *oracle {
                let e = minimum_distance_exhaustive(&generator_matrix(&z)?)?;
                text.push_str(&format!("exhaustive codeword enumeration: {e}\n"));
                results["oracle_d"] = json!(e);
                results["oracle_agrees"] = json!(e == d.d);
                if e != d.d {
                    return Err(Failure::Compute(format!("oracle disagreement: {} vs {e}", d.d)));
                }
            }
            Ok(Output::new(results, text))
        }
        Command::Alpha { .. } => {
            let z = need(scheme, "alpha")?;
            let a = alpha(&z, cap)?;
            Ok(Output::new(json!({ "alpha": a }), format!("alpha(I_Z) = {a}\n")))
        }
        Command::Hilbert { .. } => {
            let z = need(scheme, "hilbert")?;
            let values = match cli.max_degree {
                Some(d) => hilbert_function_values(&z, d)?,
                None => {
                    let degree = scheme_degree(&z)?;
                    let mut v = Vec::new();
                    for d in 0..=DEFAULT_DEGREE_CAP {
                        v.push(hilbert_function_values(&z, d)?[d]);
                        if *v.last().unwrap() as u128 == degree {
                            break;
                        }
                    }
                    v
                }
            };
            let degree = scheme_degree(&z)?;
            Ok(Output::new(
                json!({ "hilbert_function": values, "scheme_degree": degree as u64 }),
                format!(
                    "HF(R/I_Z, d) for d = 0..{}: {}\ndeg Z = {degree}\n",
                    values.len() - 1,
                    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                ),
            ))
        }
        Command::Socle { .. } => {
            let z = need(scheme, "socle")?;
            let p = socle_profile(&z, seed)?;
            let dims: Vec<String> = p
                .degrees_with_socle_dims
                .iter()
                .map(|(d, k)| format!("{d}:{k}"))
                .collect();
            Ok(Output::new(
                json!({
                    "min_socle_degree": p.min_socle_degree,
                    "socle_dims": p.degrees_with_socle_dims,
                    "piece_dims": p.reduction.piece_dims,
                    "top_degree": p.reduction.top_degree,
                    "linear_form": p.reduction.linear_form,
                }),
                format!(
                    "s_n(Z) = {}\nHF of Artinian reduction: {:?}\nsocle dims (degree:dim): {}\n",
                    p.min_socle_degree,
                    p.reduction.piece_dims,
                    dims.join(" ")
                ),
            ))
        }
        Command::Separators { .. } => {
            let z = need(scheme, "separators")?;
            let degrees = separator_degrees(&z)?;
            let text = degrees
                .iter()
                .enumerate()
                .map(|(i, d)| format!("P{}: separator degree {d}\n", i + 1))
                .collect();
            Ok(Output::new(json!({ "separator_degrees": degrees }), text))
        }
        Command::Vdistance { degree, .. } => {
            let z = need(scheme, "vdistance")?;
            let d = generalized_distance(&z, *degree)?;
            Ok(Output::new(
                json!({ "degree": degree, "d": d }),
                format!("d(X)_{degree} = {d}\n"),
            ))
        }
        Command::Check {
            statement,
            degrees,
            mult,
            b,
            certified_curve,
            ..
        } => {
            let id = StatementId::ALL
                .into_iter()
                .find(|s| s.slug() == statement)
                .ok_or_else(|| Failure::Parse(format!("unknown statement `{statement}`")))?;
            let report = run_check(id, scheme, degrees.as_deref(), *mult, *b, *certified_curve, seed)?;
            let mut out = Output::new(json!({ "statement": id.slug(), "holds": report.holds }), String::new());
            out.reports.push(report);
            Ok(out)
        }
        Command::Ci { degrees, mult } => {
            let ci = ci_grid(degrees, seed)?;
            let report = bounds::check_ci_socle_formula(&ci, *mult, seed)?;
            let mut out = Output::new(
                json!({ "degrees": ci.degrees, "mult": mult, "points": serialize(&ci.scheme),
                        "min_socle_degree": report.values["min_socle_degree"],
                        "formula": report.values["formula"] }),
                format!("grid CI{:?} with seed {seed}:\n{}", ci.degrees, serialize(&ci.scheme)),
            );
            out.reports.push(report);
            Ok(out)
        }
        Command::Survey { degrees, mult, .. } => {
            let target = match (scheme, degrees) {
                (Some(z), None) => SurveyTarget::Scheme(z),
                (z, Some(d)) => SurveyTarget::CompleteIntersection(ci_description(d, z, seed)?, *mult),
                (None, None) => return Err(Failure::Parse("survey needs a scheme file or --degrees".into())),
            };
            let Survey { reports, errors } = bounds::survey(&target, seed);
            let mut out = Output::new(json!({ "report_count": reports.len() }), String::new());
            out.reports = reports;
            out.errors = errors.into_iter().map(|(id, e)| format!("{id}: {e}")).collect();
            Ok(out)
        }
    }
}

fn ci_description(degrees: &[usize], explicit: Option<FatPointScheme>, seed: u64) -> Result<CiDescription, Error> {
    let construction = match explicit {
        Some(x) => CiConstruction::Explicit(x),
        None => CiConstruction::Grid { seed },
    };
    CiDescription::new(degrees.to_vec(), construction)
}

fn realize_ci(
    degrees: Option<&[usize]>,
    z: Option<FatPointScheme>,
    seed: u64,
) -> Result<CompleteIntersection, Failure> {
    let degrees = degrees.ok_or_else(|| Failure::Parse("complete-intersection checks need --degrees".into()))?;
    Ok(ci_description(degrees, z, seed)?.realize()?)
}

fn run_check(
    id: StatementId,
    z: Option<FatPointScheme>,
    degrees: Option<&[usize]>,
    mult: u32,
    b: Option<usize>,
    certified: bool,
    seed: u64,
) -> Result<BoundReport, Failure> {
    let report = match id {
        StatementId::CrudeBounds => bounds::check_crude(&need(z, "crude")?)?,
        StatementId::HomBound => bounds::check_hombound(&need(z, "hombound")?)?,
        StatementId::BoundsCor => bounds::check_boundscor(&need(z, "boundscor")?)?,
        StatementId::MainTheoremI | StatementId::MainTheoremII => bounds::check_maintheorem(&need(z, "main")?, seed)?,
        StatementId::FatPointSocle => check_separator_socle(&need(z, "fatpointsocle")?, seed)?,
        StatementId::RecursionLemma => {
            let x = need(z, "recursion")?;
            let b = match b {
                Some(b) => b,
                None => largest_recursion_degree(&x, x.len())?
                    .ok_or_else(|| Failure::Compute("no degree b with d(X)_b >= 2".into()))?,
            };
            check_recursion_lemma(&x, b)?
        }
        StatementId::OpenQuestion => bounds::open_question_experiment(&need(z, "question")?, seed)?,
        StatementId::CIBound => bounds::check_cibound(&realize_ci(degrees, z, seed)?)?,
        StatementId::SocleValueCI => bounds::check_ci_socle_formula(&realize_ci(degrees, z, seed)?, mult, seed)?,
        StatementId::CI22Equality => bounds::check_ci22_equality(&realize_ci(degrees, z, seed)?, mult, seed)?,
        StatementId::BezoutCI | StatementId::N2Theorem | StatementId::ConjectureCI => {
            bounds::check_bezout_ci(&realize_ci(degrees, z, seed)?, certified)?
        }
    };
    Ok(report)
}
