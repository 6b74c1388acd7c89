//! Batch front end: `generate`, `curve`, `kappa`, `compare`, `oracle-check`.
//!
//! Exit status: 0 success, 1 domain error, 2 usage error, 3 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::affinity::{metric_affinity, IngestOptions, Symmetrize, ZeroPolicy, DEFAULT_EPSILON};
use crate::check::{oracle_check, OracleCheckConfig};
use crate::curve::{compare, concavity_score, connectivity_curve_with, kappa_at, CurveOptions};
use crate::datasets::{generate_sequence, SequenceKind, DEFAULT_POINTS};
use crate::error::IoError;
use crate::io::{load_curve, load_matrix, save_curve, save_matrix, save_points, Format};
use crate::topology::ORACLE_LIMIT;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "affinity-kappa", version, about = "Connectivity curves of thresholded affinity spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Log2,
    Sqrt,
    Harmonic,
    Geometric,
}

impl From<KindArg> for SequenceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Log2 => SequenceKind::Log2,
            KindArg::Sqrt => SequenceKind::SqrtShift,
            KindArg::Harmonic => SequenceKind::HarmonicCap,
            KindArg::Geometric => SequenceKind::GeometricCap,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputKind {
    Points,
    Matrix,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SymmetrizeArg {
    Sum,
    Require,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ZeroPolicyArg {
    Epsilon,
    Reject,
}

#[derive(Debug, clap::Args)]
struct IngestArgs {
    /// Matrix file format.
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    #[arg(long, value_enum, default_value = "require")]
    symmetrize: SymmetrizeArg,
    #[arg(long = "zero-policy", value_enum, default_value = "epsilon")]
    zero_policy: ZeroPolicyArg,
    /// Floor substituted for zero entries under `--zero-policy epsilon`.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
}

impl IngestArgs {
    fn options(&self) -> IngestOptions {
        IngestOptions {
            symmetrize: match self.symmetrize {
                SymmetrizeArg::Sum => Symmetrize::Sum,
                SymmetrizeArg::Require => Symmetrize::Require,
            },
            zero_policy: match self.zero_policy {
                ZeroPolicyArg::Epsilon => ZeroPolicy::Epsilon(self.epsilon),
                ZeroPolicyArg::Reject => ZeroPolicy::Reject,
            },
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write one of the synthetic 1-D point sets, or its metric affinity matrix.
    Generate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = DEFAULT_POINTS as u64, value_parser = clap::value_parser!(u64).range(2..))]
        m: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long = "as", value_enum, default_value = "points")]
        output: OutputKind,
        /// Matrix format when writing `--as matrix`.
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Compute the connectivity curve of a matrix file.
    Curve {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        ingest: IngestArgs,
        /// Divide every finite entry by the largest one first.
        #[arg(long)]
        normalize: bool,
        /// Round affinities to this many significant digits before the sweep.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=17))]
        quantize: Option<u32>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long = "out-format", value_enum, default_value = "csv")]
        out_format: FormatArg,
    },
    /// Print kappa at a single threshold.
    Kappa {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        ingest: IngestArgs,
        #[arg(long)]
        lambda: f64,
    },
    /// Print the rescaled L1 distance between two curve files.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Curve file format.
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Random-matrix equivalence run of the component oracles against the sweep.
    OracleCheck {
        #[arg(long = "n-max", default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A failed command: exit status plus a message naming the operation.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn domain(op: &str, e: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_DOMAIN, message: format!("{op}: {e}") }
    }

    fn usage(op: &str, e: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_USAGE, message: format!("{op}: {e}") }
    }

    fn io(op: &str, e: IoError) -> Self {
        let code = match e {
            IoError::Io { .. } | IoError::Parse { .. } => EXIT_IO,
            IoError::Affinity { .. } | IoError::Curve { .. } => EXIT_DOMAIN,
        };
        Failure { code, message: format!("{op}: {e}") }
    }

    fn output(op: &str, e: std::io::Error) -> Self {
        Failure { code: EXIT_IO, message: format!("{op}: {e}") }
    }
}

/// Parses `args` (program name first) and runs one command, writing results to
/// `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Generate { kind, m, out: path, output, format } => {
            let points = generate_sequence(kind.into(), m as usize);
            match output {
                OutputKind::Points => save_points(&points, &path),
                OutputKind::Matrix => save_matrix(&metric_affinity(&points), &path, format.into()),
            }
            .map_err(|e| Failure::io("generate", e))?;
            Ok(EXIT_OK)
        }
        Command::Curve { input, ingest, normalize, quantize, out: path, out_format } => {
            let mut a = load_matrix(&input, ingest.format.into(), ingest.options())
                .map_err(|e| Failure::io("curve: load_matrix", e))?;
            if normalize {
                a = a.normalize().map_err(|e| Failure::domain("curve: normalize", e))?;
            }
            let curve = connectivity_curve_with(&a, CurveOptions { quantize });
            save_curve(&curve, &path, out_format.into())
                .map_err(|e| Failure::io("curve: save_curve", e))?;
            let concavity = concavity_score(&curve)
                .map_or_else(|_| "NA".to_string(), |s| format!("{s:.6}"));
            writeln!(
                out,
                "breakpoints={} kappa_min={} kappa_max={} concavity={}",
                curve.breakpoints().len(),
                curve.values()[0],
                curve.kappa_inf(),
                concavity
            )
            .map_err(|e| Failure::output("curve", e))?;
            Ok(EXIT_OK)
        }
        Command::Kappa { input, ingest, lambda } => {
            let a = load_matrix(&input, ingest.format.into(), ingest.options())
                .map_err(|e| Failure::io("kappa: load_matrix", e))?;
            let k = kappa_at(&a, lambda).map_err(|e| Failure::domain("kappa", e))?;
            writeln!(out, "{k}").map_err(|e| Failure::output("kappa", e))?;
            Ok(EXIT_OK)
        }
        Command::Compare { a, b, format } => {
            let ca = load_curve(&a, format.into()).map_err(|e| Failure::io("compare: load_curve", e))?;
            let cb = load_curve(&b, format.into()).map_err(|e| Failure::io("compare: load_curve", e))?;
            let d = compare(&ca, &cb).map_err(|e| Failure::domain("compare", e))?;
            writeln!(out, "{d:.6}").map_err(|e| Failure::output("compare", e))?;
            Ok(EXIT_OK)
        }
        Command::OracleCheck { n_max, trials, seed } => {
            if !(2..=ORACLE_LIMIT).contains(&n_max) {
                return Err(Failure::usage(
                    "oracle-check",
                    format!("--n-max must lie in [2, {ORACLE_LIMIT}], got {n_max}"),
                ));
            }
            let outcomes = oracle_check(OracleCheckConfig { n_max, trials, seed });
            let write_err = |e| Failure::output("oracle-check", e);
            for t in &outcomes {
                match &t.failure {
                    None => writeln!(out, "trial {} n={} PASS", t.trial, t.n),
                    Some(why) => writeln!(out, "trial {} n={} FAIL {why}", t.trial, t.n),
                }
                .map_err(write_err)?;
            }
            let passed = outcomes.iter().filter(|t| t.passed()).count();
            writeln!(out, "summary: {passed}/{} PASS", outcomes.len()).map_err(write_err)?;
            Ok(if passed == outcomes.len() { EXIT_OK } else { EXIT_DOMAIN })
        }
    }
}
