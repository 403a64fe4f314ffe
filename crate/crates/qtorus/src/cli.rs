//! Command-line surface. One binary serves every arithmetic point through
//! global flags; subcommands build operators from files, run the
//! verification suites, and emit spectra.
//!
//! Exit codes are a stable contract: 0 on success, 1 when a verification
//! fails (a residual over tolerance, a failed suite check, or a collapsed
//! averaging), 2 on input errors (bad flags, malformed files, non-symplectic
//! matrices). Machine-readable output goes to stdout or `--out`; progress
//! and human-readable reports go to stderr.

use crate::intertwiner::{rho_solve, rho_word, IntertwinerError, RhoResult};
use crate::io::{
    self, operator_csv, parse_fourier, parse_symplectic, parse_word, report_csv, rho_csv,
    spectrum_csv, to_json_pretty, OperatorRecord, RhoRecord,
};
use crate::lattice::{Character, LatticePoint};
use crate::numerics::{adjoint, eigenphases, max_abs_diff, CMatrix};
use crate::planck::PlanckData;
use crate::schrodinger::{pi_basis, weyl_quantize, RepContext};
use crate::verify::{run_suite, Suite};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Verification(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Verification(m) => write!(f, "{m}"),
        }
    }
}

impl From<crate::planck::PlanckError> for CliError {
    fn from(e: crate::planck::PlanckError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<io::IoError> for CliError {
    fn from(e: io::IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<IntertwinerError> for CliError {
    fn from(e: IntertwinerError) -> Self {
        match e {
            IntertwinerError::NoIntertwiner { attempts } => CliError::Verification(format!(
                "no intertwiner exists: Schur averaging collapsed to zero for {attempts} independent seeds; \
                 the conjugated model is inequivalent to the original"
            )),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Word,
    Solve,
}

#[derive(Debug, Parser)]
#[command(
    name = "qtorus",
    about = "Quantized torus at rational Planck constant: operators, intertwiners, certification",
    version
)]
pub struct Cli {
    /// Number of degrees of freedom (the torus has dimension 2n)
    #[arg(long = "n", global = true, default_value_t = 1)]
    pub n: usize,

    /// Denominator N of the Planck constant M/N
    #[arg(long = "N", global = true, default_value_t = 3)]
    pub denominator: i64,

    /// Numerator M of the Planck constant M/N, coprime to N
    #[arg(long = "M", global = true, default_value_t = 1)]
    pub numerator: i64,

    /// Seed for every randomized draw
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Residual tolerance gating the rho subcommand
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,

    /// Output encoding
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Optional character twist, 2n comma-separated rationals like 1/9,0
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub twist: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the operator attached to one lattice frequency
    Pi {
        /// Frequency vector, 2n comma-separated integers
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
    },
    /// Quantize a Fourier-series file into a dense operator
    Quantize {
        /// JSON array of {"xi": [...], "re": .., "im": ..} records
        file: PathBuf,
    },
    /// Build the intertwiner for a symplectic element
    Rho {
        /// Generator-word file: JSON array of {"type", "matrix"} records
        #[arg(long)]
        word: Option<PathBuf>,
        /// Symplectic matrix file: JSON {"matrix": [[..]]}
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// word = ordered product of generator formulas; solve = Schur averaging
        #[arg(long, value_enum, default_value_t = Method::Word)]
        method: Method,
    },
    /// Run a certification suite and report every check
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Eigenphases of an intertwiner, sorted ascending in [0, 2pi)
    Spectrum {
        #[arg(long)]
        word: Option<PathBuf>,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Word)]
        method: Method,
    },
}

pub fn entry() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let ctx = build_context(cli)?;
    match &cli.command {
        Command::Pi { xi } => cmd_pi(cli, &ctx, xi),
        Command::Quantize { file } => cmd_quantize(cli, &ctx, file),
        Command::Rho { word, matrix, method } => {
            let r = build_rho(cli, &ctx, word.as_deref(), matrix.as_deref(), *method)?;
            let content = match cli.format {
                Format::Json => to_json_pretty(&RhoRecord::from_result(&r)),
                Format::Csv => rho_csv(&r),
            };
            emit(cli, &content)?;
            if r.egorov_residual() > cli.tol {
                return Err(CliError::Verification(format!(
                    "egorov residual {} exceeds tolerance {}",
                    r.egorov_residual(),
                    cli.tol
                )));
            }
            Ok(())
        }
        Command::Verify { suite } => cmd_verify(cli, suite),
        Command::Spectrum { word, matrix, method } => {
            let r = build_rho(cli, &ctx, word.as_deref(), matrix.as_deref(), *method)?;
            let phases = eigenphases(r.op(), 1e-8)
                .map_err(|e| CliError::Verification(e.to_string()))?;
            let content = match cli.format {
                Format::Json => to_json_pretty(&phases),
                Format::Csv => spectrum_csv(&phases),
            };
            emit(cli, &content)
        }
    }
}

fn build_context(cli: &Cli) -> Result<RepContext, CliError> {
    let planck = PlanckData::new(cli.n, cli.denominator, cli.numerator)?;
    match &cli.twist {
        None => Ok(RepContext::canonical(planck)),
        Some(text) => {
            let angles = parse_twist(text)?;
            let chi = Character::new(angles)
                .map_err(|e| CliError::Input(e.to_string()))?;
            RepContext::twisted(planck, chi).map_err(|e| CliError::Input(e.to_string()))
        }
    }
}

fn parse_twist(text: &str) -> Result<Vec<Ratio<i64>>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<Ratio<i64>>()
                .map_err(|_| CliError::Input(format!("bad twist entry '{part}': expected a rational like 1/9")))
        })
        .collect()
}

fn parse_xi(text: &str, n: usize) -> Result<LatticePoint, CliError> {
    let coords: Vec<i64> = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Input(format!("bad frequency entry '{part}': expected an integer")))
        })
        .collect::<Result<_, _>>()?;
    if coords.len() != 2 * n {
        return Err(CliError::Input(format!(
            "frequency vector has {} entries, expected {}",
            coords.len(),
            2 * n
        )));
    }
    LatticePoint::from_coords(&coords).map_err(|e| CliError::Input(e.to_string()))
}

fn emit(cli: &Cli, content: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn emit_operator(cli: &Cli, m: &CMatrix) -> Result<(), CliError> {
    let content = match cli.format {
        Format::Json => to_json_pretty(&OperatorRecord::from_matrix(m)),
        Format::Csv => operator_csv(m),
    };
    emit(cli, &content)
}

fn cmd_pi(cli: &Cli, ctx: &RepContext, xi: &str) -> Result<(), CliError> {
    let point = parse_xi(xi, ctx.planck().n())?;
    let op = pi_basis(ctx, &point).map_err(|e| CliError::Input(e.to_string()))?;
    emit_operator(cli, &op.to_matrix())
}

fn cmd_quantize(cli: &Cli, ctx: &RepContext, file: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", file.display())))?;
    let f = parse_fourier(ctx.planck(), &text)?;
    let q = weyl_quantize(ctx, &f).map_err(|e| CliError::Input(e.to_string()))?;
    let hermitian_dev = max_abs_diff(&q, &adjoint(&q));
    eprintln!("hermitian: {} (deviation {hermitian_dev:.3e})", hermitian_dev <= 1e-12);
    emit_operator(cli, &q)
}

fn build_rho(
    cli: &Cli,
    ctx: &RepContext,
    word: Option<&Path>,
    matrix: Option<&Path>,
    method: Method,
) -> Result<RhoResult, CliError> {
    let n = ctx.planck().n();
    let read = |p: &Path| {
        std::fs::read_to_string(p)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display())))
    };
    match (word, matrix) {
        (Some(_), Some(_)) | (None, None) => Err(CliError::Input(
            "provide exactly one of --word or --matrix".into(),
        )),
        (Some(path), None) => {
            let w = parse_word(n, &read(path)?)?;
            match method {
                Method::Word => Ok(rho_word(ctx, &w)?),
                Method::Solve => Ok(rho_solve(ctx, &w.to_matrix(), cli.seed)?),
            }
        }
        (None, Some(path)) => {
            let b = parse_symplectic(n, &read(path)?)?;
            match method {
                Method::Word => Err(CliError::Input(
                    "method word needs a generator word; pass --word or use --method solve".into(),
                )),
                Method::Solve => Ok(rho_solve(ctx, &b, cli.seed)?),
            }
        }
    }
}

fn cmd_verify(cli: &Cli, suite: &str) -> Result<(), CliError> {
    let suite: Suite = suite.parse().map_err(CliError::Input)?;
    let planck = PlanckData::new(cli.n, cli.denominator, cli.numerator)?;
    let report = run_suite(&planck, suite, cli.seed);
    for check in &report.checks {
        eprintln!(
            "{} {:<36} residual {:.3e} (tolerance {:.1e})",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.residual,
            check.tolerance,
        );
    }
    let content = match cli.format {
        Format::Json => to_json_pretty(&report),
        Format::Csv => report_csv(&report),
    };
    emit(cli, &content)?;
    match report.first_failure() {
        None => Ok(()),
        Some(fail) => Err(CliError::Verification(format!(
            "verification failed: check {} has residual {} over tolerance {}",
            fail.name, fail.residual, fail.tolerance
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_strings_parse_with_signs_and_whitespace() {
        let p = parse_xi("-1, 2", 1).unwrap();
        assert_eq!(p.coords(), vec![-1, 2]);
        assert!(parse_xi("1,2,3", 1).is_err());
        assert!(parse_xi("1,x", 1).is_err());
    }

    #[test]
    fn twist_strings_parse_as_rationals() {
        let t = parse_twist("1/9, 0").unwrap();
        assert_eq!(t, vec![Ratio::new(1, 9), Ratio::new(0, 1)]);
        assert!(parse_twist("1/9, pi").is_err());
    }

    #[test]
    fn verify_subcommand_defaults_parse() {
        let cli = Cli::try_parse_from(["qtorus", "verify"]).unwrap();
        assert_eq!(cli.n, 1);
        assert_eq!(cli.denominator, 3);
        assert_eq!(cli.numerator, 1);
        assert!(matches!(cli.command, Command::Verify { ref suite } if suite == "all"));
    }

    #[test]
    fn global_flags_apply_after_the_subcommand() {
        let cli = Cli::try_parse_from(["qtorus", "pi", "--xi", "1,0", "--N", "5", "--M", "2"])
            .unwrap();
        assert_eq!(cli.denominator, 5);
        assert_eq!(cli.numerator, 2);
    }

    #[test]
    fn coprimality_failure_is_an_input_error_with_the_pinned_message() {
        let cli = Cli::try_parse_from(["qtorus", "--N", "4", "--M", "2", "pi", "--xi", "1,0"])
            .unwrap();
        let err = run(&cli).unwrap_err();
        assert_eq!(err.code(), 2);
        assert!(err.to_string().contains("gcd(M,N) must be 1"));
    }
}
