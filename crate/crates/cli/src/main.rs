//! `curvkind`: spectra, Bochner bounds and vanishing certificates for
//! algebraic curvature tensors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curvkind_core::bochner::ric_l_matrix;
use curvkind_core::operators::{first_kind_matrix, second_kind_matrix, spectrum};
use curvkind_core::selftest::{self, SelftestConfig};
use curvkind_core::tensor::DEFAULT_MAX_DIM;
use curvkind_core::{CurvatureTensor, Error, ModelSpec};
use curvkind_cli::report::{self, SpectrumReport};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(name = "curvkind", version, about = "Curvature operator of the second kind: spectra, Bochner bounds, certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: Ricci data, both spectra, per-p bounds and certificates.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
        #[arg(long, allow_hyphen_values = true)]
        kappa: Option<f64>,
        /// Form degree for the Ric_L table: an integer or `all` (1 ≤ p ≤ n/2).
        #[arg(long, default_value = "all")]
        p: PSelect,
    },
    /// Vanishing-theorem certificates.
    Certify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
        /// Lower bound κ ≤ 0 for the estimation hypothesis.
        #[arg(long, allow_hyphen_values = true)]
        kappa: Option<f64>,
    },
    /// Eigenvalues of one operator.
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Operator::Second)]
        operator: Operator,
        /// Degree for `--operator ric-l`: an integer or `all` (0 ≤ p ≤ n).
        #[arg(long, default_value = "all")]
        p: PSelect,
    },
    /// Randomized identity sweeps.
    Selftest {
        #[command(flatten)]
        format: Format,
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
        /// Random draws per case.
        #[arg(long, default_value_t = SelftestConfig::default().draws)]
        seeds: usize,
        #[arg(long, default_value_t = SelftestConfig::default().n_max)]
        n_max: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Model spec as JSON, e.g. '{"kind":"product_sphere","n":5}'.
    #[arg(long)]
    model: Option<String>,
    /// File holding {"n": n, "components": [n⁴ reals, row-major (i,j,k,l)]}.
    #[arg(long)]
    dense: Option<PathBuf>,
}

#[derive(Args)]
#[group(multiple = false)]
struct Format {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    table: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Operator {
    Second,
    First,
    RicL,
}

#[derive(Clone, Copy, Debug)]
enum PSelect {
    All,
    One(usize),
}

impl std::str::FromStr for PSelect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(PSelect::All);
        }
        s.parse().map(PSelect::One).map_err(|_| format!("expected an integer or `all`, got `{s}`"))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DenseFile {
    n: usize,
    components: Vec<f64>,
}

#[derive(Serialize)]
struct InvalidInput<'a> {
    error: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<&'a curvkind_core::tensor::ValidationReport>,
}

/// Exit code 2: unreadable or malformed input. Exit code 3: not an
/// algebraic curvature tensor.
struct Failure {
    code: u8,
    message: String,
    report: Option<Box<curvkind_core::tensor::ValidationReport>>,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into(), report: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidCurvature(report) => Failure { code: 3, message: report.to_string(), report: Some(report) },
            other => Failure::parse(other.to_string()),
        }
    }
}

fn max_dim() -> Result<usize, Failure> {
    match std::env::var("CURVKIND_NMAX") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::parse(format!("CURVKIND_NMAX must be an integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

fn load(input: &Input) -> Result<(String, CurvatureTensor<f64>), Failure> {
    let (descriptor, spec) = match (&input.model, &input.dense) {
        (Some(json), _) => {
            let spec: ModelSpec = serde_json::from_str(json).map_err(|e| Failure::parse(format!("--model: {e}")))?;
            (serde_json::to_string(&spec).expect("spec serializes"), spec)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::parse(format!("--dense {}: {e}", path.display())))?;
            let file: DenseFile =
                serde_json::from_str(&text).map_err(|e| Failure::parse(format!("--dense {}: {e}", path.display())))?;
            (format!("dense:{}", path.display()), ModelSpec::Dense { n: file.n, components: file.components })
        }
        (None, None) => return Err(Failure::parse("one of --model or --dense is required")),
    };
    let cap = max_dim()?;
    match spec.dimension() {
        Some(n) if n > cap => {
            return Err(Failure::parse(format!("n = {n} exceeds the limit {cap}; set CURVKIND_NMAX to raise it")));
        }
        _ => {}
    }
    Ok((descriptor, spec.build::<f64>()?))
}

fn degrees(sel: PSelect, lo: usize, hi: usize) -> Result<Vec<usize>, Failure> {
    match sel {
        PSelect::All => Ok((lo..=hi).collect()),
        PSelect::One(p) if p >= lo && p <= hi => Ok(vec![p]),
        PSelect::One(p) => Err(Failure::parse(format!("--p {p} outside {lo}..={hi}"))),
    }
}

fn emit<T: Serialize>(format: &Format, value: &T, table: impl FnOnce(&T) -> String) {
    if format.json {
        println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
    } else {
        print!("{}", table(value));
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Analyze { input, format, kappa, p } => {
            let (desc, r) = load(&input)?;
            let n = r.n();
            let ps = match p {
                PSelect::All => (1..=n / 2).collect(),
                one => degrees(one, 1, n)?,
            };
            let rep = report::analyze(desc, &r, &ps, kappa)?;
            emit(&format, &rep, report::analysis_table);
        }
        Command::Certify { input, format, kappa } => {
            let (desc, r) = load(&input)?;
            emit(&format, &report::certify(desc, &r, kappa), report::certify_table);
        }
        Command::Spectrum { input, format, operator, p } => {
            let (_, r) = load(&input)?;
            let reports = match operator {
                Operator::Second => vec![SpectrumReport::new("second_kind", &spectrum(&second_kind_matrix(&r)))],
                Operator::First => vec![SpectrumReport::new("first_kind", &spectrum(&first_kind_matrix(&r)))],
                Operator::RicL => degrees(p, 0, r.n())?
                    .into_iter()
                    .map(|p| Ok(SpectrumReport::new(format!("ric_l_p{p}"), &ric_l_matrix(&r, p)?.eigen().values)))
                    .collect::<Result<_, Error>>()?,
            };
            emit(&format, &reports, |r| report::spectrum_table(r));
        }
        Command::Selftest { format, seed, seeds, n_max } => {
            let rep = selftest::run(&SelftestConfig { seed, draws: seeds, n_max });
            emit(&format, &rep, |r| {
                let mut out = String::new();
                for c in &r.checks {
                    out.push_str(&format!(
                        "{} {:<32} cases {:>6}  worst {:.3e}  tol {:.0e}\n",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name,
                        c.cases,
                        c.worst,
                        c.tolerance
                    ));
                }
                out.push_str(&format!(
                    "selftest {} (seed {}, draws {}, n ≤ {})\n",
                    if r.passed { "passed" } else { "failed" },
                    r.config.seed,
                    r.config.draws,
                    r.config.n_max
                ));
                out
            });
            if !rep.passed {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = match &cli.command {
        Command::Analyze { format, .. }
        | Command::Certify { format, .. }
        | Command::Spectrum { format, .. }
        | Command::Selftest { format, .. } => format.json,
    };
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            if f.code == 3 {
                let body = InvalidInput { error: "invalid_curvature", message: f.message.clone(), report: f.report.as_deref() };
                if json {
                    println!("{}", serde_json::to_string_pretty(&body).expect("report serializes"));
                } else {
                    println!("invalid curvature tensor: {}", f.message);
                }
            }
            ExitCode::from(f.code)
        }
    }
}
