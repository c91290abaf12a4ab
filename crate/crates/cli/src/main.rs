//! `knotblocks`: validate fusion datasets, evaluate colored HOMFLY-PT invariants of
//! quasi-plat programs and diff the Kinoshita-Terasaka / Conway pair.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use knotblocks::fusiondata::synthetic::SyntheticModel;
use knotblocks::fusiondata::{self, format_dataset, FusionDataset, FusionError, LoadOptions};
use knotblocks::knots::{self, golden, EvalOptions, KnotsError, TangleProgram};
use knotblocks::reptheory::{BraidingEigenvalues, CasimirEigenvalues, PhaseEigenvalues};

use report::{Outcome, RunReport};

#[derive(Parser)]
#[command(name = "knotblocks", version, about = "Exact colored HOMFLY-PT invariants from fusion data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check unitarity and Racah backcoupling of a dataset.
    Validate {
        /// Dataset file.
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the invariant of a built-in knot or a program file.
    Eval {
        #[arg(long, value_enum, conflicts_with = "program", required_unless_present = "program")]
        knot: Option<Knot>,
        #[arg(long)]
        program: Option<PathBuf>,
        #[arg(long)]
        sixj: PathBuf,
        /// Substitute a = q^N.
        #[arg(long, value_name = "N")]
        specialize: Option<i32>,
        /// Print W = dim_q R * P instead of P.
        #[arg(long, conflicts_with = "specialize")]
        unnormalized: bool,
        #[command(flatten)]
        common: Common,
    },
    /// P(KT) - P(Conway).
    Diff {
        #[arg(long)]
        sixj: PathBuf,
        /// Also compare with the expanded factored difference.
        #[arg(long)]
        check_factored: bool,
        #[arg(long, value_name = "N")]
        specialize: Option<i32>,
        #[command(flatten)]
        common: Common,
    },
    /// Print a built-in program.
    Program {
        #[arg(long, value_enum)]
        knot: Knot,
    },
    /// Write a synthetic dataset satisfying unitarity and backcoupling with phase eigenvalues.
    Synth {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Five-state toy channel table instead of the full [2,1] table.
        #[arg(long)]
        toy: bool,
        #[arg(long)]
        commuting: bool,
    },
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, value_name = "K")]
    threads: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Braiding eigenvalues: Casimir twists, or bare 3j phases (synthetic data).
    #[arg(long, value_enum, default_value_t = Eigen::Casimir)]
    eigenvalues: Eigen,
    /// Report wall-clock time.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Knot {
    Kt,
    Conway,
    Unknot,
}

impl Knot {
    fn name(self) -> &'static str {
        match self {
            Knot::Kt => "kt",
            Knot::Conway => "conway",
            Knot::Unknot => "unknot",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Eigen {
    Casimir,
    Phase,
}

/// Failure with its exit status: 1 for failed checks and evaluation, 2 for usage and I/O.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<FusionError> for Failure {
    fn from(e: FusionError) -> Self {
        let code = match e {
            FusionError::Io { .. }
            | FusionError::Parse { .. }
            | FusionError::UnsupportedVersion(_)
            | FusionError::DuplicateKey { .. }
            | FusionError::InadmissibleKey { .. } => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<KnotsError> for Failure {
    fn from(e: KnotsError) -> Self {
        match e {
            KnotsError::Fusion(f) => f.into(),
            KnotsError::IllFormed { .. } | KnotsError::UnknownName(_) | KnotsError::Threads(_) => Failure::usage(e.to_string()),
            _ => Failure { code: 1, message: e.to_string() },
        }
    }
}

fn eigenvalues(kind: Eigen, ds: &FusionDataset) -> Arc<dyn BraidingEigenvalues> {
    let table = ds.table().clone();
    match kind {
        Eigen::Casimir => Arc::new(CasimirEigenvalues::new(table)),
        Eigen::Phase => Arc::new(PhaseEigenvalues { table }),
    }
}

fn load(path: &Path) -> Result<FusionDataset, Failure> {
    Ok(fusiondata::load(path, &LoadOptions::default())?)
}

fn options(common: &Common, ds: &FusionDataset) -> EvalOptions {
    EvalOptions { threads: common.threads, eigenvalues: Some(eigenvalues(common.eigenvalues, ds)) }
}

fn run(cli: Cli) -> Result<(RunReport, Option<Format>), Failure> {
    let started = Instant::now();
    let (mut report, common) = match cli.command {
        Command::Validate { path, common } => {
            let ds = load(&path)?;
            let unitarity = fusiondata::validate_unitarity(&ds)?;
            let eig = eigenvalues(common.eigenvalues, &ds);
            let backcoupling = fusiondata::validate_backcoupling(&ds, eig.as_ref())?;
            let mut r = RunReport::new("validate");
            r.input("sixj", path.display());
            r.outcome = Outcome::validation(&unitarity, &backcoupling);
            r.failed = !(unitarity.passed() && backcoupling.passed());
            (r, common)
        }
        Command::Eval { knot, program, sixj, specialize, unnormalized, common } => {
            let (name, prog) = match (knot, &program) {
                (Some(k), _) => (k.name().to_string(), knots::builtin_program(k.name())?),
                (None, Some(p)) => {
                    let text = std::fs::read_to_string(p).map_err(|e| Failure::usage(format!("cannot read {}: {e}", p.display())))?;
                    (p.display().to_string(), TangleProgram::parse(&text)?)
                }
                (None, None) => return Err(Failure::usage("one of --knot or --program is required")),
            };
            let ds = load(&sixj)?;
            let result = knots::evaluate(&prog, &name, &ds, &options(&common, &ds))?;
            let mut r = RunReport::new("eval");
            r.input("knot", &name);
            r.input("sixj", sixj.display());
            let (text, warning) = match specialize {
                Some(n) => {
                    r.input("specialize", n);
                    let (p, w) = knots::specialize(&result, n);
                    (p.to_string(), w)
                }
                None if unnormalized => {
                    r.input("unnormalized", true);
                    (result.unnormalized.to_string(), None)
                }
                None => (result.polynomial.to_string(), None),
            };
            r.outcome = Outcome::Polynomial { text, color: result.color.to_string(), normalization: result.normalization.to_string() };
            r.warning = warning;
            (r, common)
        }
        Command::Diff { sixj, check_factored, specialize, common } => {
            let ds = load(&sixj)?;
            let d = knots::mutant_difference(&ds, &options(&common, &ds))?;
            let mut r = RunReport::new("diff");
            r.input("sixj", sixj.display());
            let reference = golden::golden(golden::DIFFERENCE_FACTORED);
            let (shown, expected) = match specialize {
                Some(n) => {
                    r.input("specialize", n);
                    (d.substitute_a(n), reference.substitute_a(n))
                }
                None => (d, reference),
            };
            let check = if check_factored {
                r.input("check_factored", true);
                let pass = expected == shown;
                r.failed = !pass;
                Some(pass)
            } else {
                None
            };
            r.outcome = Outcome::Difference { text: shown.to_string(), check };
            (r, common)
        }
        Command::Program { knot } => {
            let mut r = RunReport::new("program");
            r.input("knot", knot.name());
            r.outcome = Outcome::Text(knots::builtin_program(knot.name())?.to_string());
            return Ok((r, None));
        }
        Command::Synth { out, seed, toy, commuting } => {
            let m = if toy { SyntheticModel::toy(seed, commuting) } else { SyntheticModel::full(seed, commuting) };
            std::fs::write(&out, format_dataset(&m.dataset)).map_err(|e| Failure::usage(format!("cannot write {}: {e}", out.display())))?;
            let mut r = RunReport::new("synth");
            r.input("out", out.display());
            r.outcome = Outcome::Text(format!("wrote {} entries to {}\n", m.dataset.len(), out.display()));
            return Ok((r, None));
        }
    };
    if common.timing {
        report.elapsed_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    Ok((report, Some(common.format)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, format)) => {
            if let Some(w) = &report.warning {
                eprintln!("warning: {w}");
            }
            match format {
                Some(Format::Json) => println!("{}", report.to_json()),
                _ => {
                    print!("{}", report.to_text());
                    if let Some(ms) = report.elapsed_ms {
                        eprintln!("time: {ms:.1} ms");
                    }
                }
            }
            ExitCode::from(if report.failed { 1 } else { 0 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
