use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qjsd::explore::{explore, ExploreConfig, ExploreMode};
use qjsd::format::{read_matrix, read_point_set, to_json};
use qjsd::qjsd_core::divergences::{jensen_f_divergence, qjsd, relative_entropy, s_divergence_sq, JensenFn};
use qjsd::qjsd_core::quadrature::{verify_representation, QuadratureConfig};
use qjsd::qjsd_core::qubit::{
    briet_harremoes_counterexample, centered_kernel_check, kernel_from, kernel_matrix, mds_embed, Verdict,
};
use qjsd::sampling::SamplerConfig;
use qjsd::suite::{run_convexity_suite, run_metric_suite, run_monotonicity_suite, MetricKind, SuiteReport};
use qjsd::{format_sig15, CliError};

const VIOLATION: u8 = 1;
const INPUT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "qjsd",
    version,
    about = "Quantum Jensen divergences and their verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Div {
    Qjsd,
    Sdiv,
    Relent,
    Jf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Qjsd,
    Sdiv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Monotone,
    Convexity,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a divergence between two matrix files.
    Compute {
        #[arg(long, value_enum)]
        div: Div,
        a: PathBuf,
        b: PathBuf,
        /// Function for `--div jf`: eta, neglog, square or ft:T.
        #[arg(long, default_value = "eta")]
        f: JensenFn,
    },
    /// Check the integral representation of J for two matrix files.
    VerifyIntegral {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 100.0)]
        cutoff: f64,
        #[arg(long, default_value_t = 64)]
        panels: usize,
        #[arg(long, default_value_t = 16)]
        nodes: usize,
        /// Largest acceptable absolute error.
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized triangle-inequality suite.
    TestMetric {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        which: Which,
        /// Fixed rank (default: mixed ranks).
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized monotonicity or joint convexity suite.
    TestMonotone {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "monotone")]
        property: Property,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Euclidean embedding of the square-root kernel on a point set.
    QubitEmbed {
        points: PathBuf,
        #[arg(long, default_value = "eta")]
        f: JensenFn,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Negative definiteness check of a Jensen kernel on a point set.
    KernelCheck {
        points: PathBuf,
        #[arg(long)]
        f: JensenFn,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the indefinite 2×2 fixture.
    Counterexample {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for non-embeddable point sets; one JSON line per improvement.
    Explore {
        #[arg(long, value_enum)]
        mode: ExploreMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = 4)]
        workers: usize,
        #[arg(long, default_value_t = 6)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, body: &str) -> qjsd::Result<()> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn suite_exit(report: &SuiteReport, out: Option<&Path>) -> qjsd::Result<u8> {
    emit(out, &to_json(report))?;
    Ok(if report.violations > 0 { VIOLATION } else { 0 })
}

/// Bloch sets use the closed qubit forms; matrix sets may be any PSD matrices.
fn point_kernel(path: &Path, f: &JensenFn) -> qjsd::Result<Vec<Vec<f64>>> {
    let file = read_point_set(path)?;
    match file.cone_points()? {
        Some(pts) => Ok(kernel_from(&pts, |a, b| Ok(jensen_f_divergence(f, a, b)?.value))?),
        None => Ok(kernel_matrix(&file.to_point_set()?, f)?),
    }
}

fn run(command: Command) -> qjsd::Result<u8> {
    match command {
        Command::Compute { div, a, b, f } => {
            let (a, b) = (read_matrix(&a)?, read_matrix(&b)?);
            let value = match div {
                Div::Qjsd => qjsd(&a.to_psd()?, &b.to_psd()?)?,
                Div::Sdiv => s_divergence_sq(&a.to_psd()?, &b.to_psd()?)?,
                Div::Relent => relative_entropy(&a.to_density()?, &b.to_density()?)?,
                Div::Jf => jensen_f_divergence(&f, &a.to_psd()?, &b.to_psd()?)?,
            };
            emit(None, &format!("{}\n", format_sig15(value.value)))?;
            Ok(0)
        }
        Command::VerifyIntegral {
            a,
            b,
            cutoff,
            panels,
            nodes,
            tol,
            out,
        } => {
            let cfg = QuadratureConfig {
                cutoff,
                panels,
                nodes_per_panel: nodes,
            };
            let report = verify_representation(&read_matrix(&a)?.to_psd()?, &read_matrix(&b)?.to_psd()?, &cfg)?;
            emit(out.as_deref(), &to_json(&report))?;
            Ok(if report.abs_error > tol { VIOLATION } else { 0 })
        }
        Command::TestMetric {
            dim,
            trials,
            seed,
            which,
            rank,
            out,
        } => {
            let cfg = SamplerConfig {
                seed,
                dim,
                rank,
                count: trials,
            };
            let kind = match which {
                Which::Qjsd => MetricKind::Qjsd,
                Which::Sdiv => MetricKind::SDiv,
            };
            suite_exit(&run_metric_suite(&cfg, kind)?, out.as_deref())
        }
        Command::TestMonotone {
            dim,
            trials,
            seed,
            property,
            rank,
            out,
        } => {
            let cfg = SamplerConfig {
                seed,
                dim,
                rank,
                count: trials,
            };
            let report = match property {
                Property::Monotone => run_monotonicity_suite(&cfg)?,
                Property::Convexity => run_convexity_suite(&cfg)?,
            };
            suite_exit(&report, out.as_deref())
        }
        Command::QubitEmbed { points, f, out } => {
            let report = centered_kernel_check(&point_kernel(&points, &f)?)?;
            if report.verdict == Verdict::Violated {
                emit(out.as_deref(), &to_json(&report))?;
                return Ok(VIOLATION);
            }
            emit(out.as_deref(), &to_json(&mds_embed(&report)?))?;
            Ok(0)
        }
        Command::KernelCheck { points, f, out } => {
            let report = centered_kernel_check(&point_kernel(&points, &f)?)?;
            emit(out.as_deref(), &to_json(&report))?;
            Ok(if report.verdict == Verdict::Violated {
                VIOLATION
            } else {
                0
            })
        }
        Command::Counterexample { out } => {
            emit(out.as_deref(), &to_json(&briet_harremoes_counterexample()?))?;
            Ok(0)
        }
        Command::Explore {
            mode,
            seed,
            budget,
            workers,
            points,
            out,
        } => {
            let cfg = ExploreConfig {
                workers,
                points,
                ..ExploreConfig::new(mode, seed, budget)
            };
            let (records, summary) = explore(&cfg)?;
            let mut body = String::new();
            for r in &records {
                body.push_str(&serde_json::to_string(r).expect("records serialize"));
                body.push('\n');
            }
            body.push_str(&serde_json::to_string(&summary).expect("summary serializes"));
            body.push('\n');
            emit(out.as_deref(), &body)?;
            Ok(0)
        }
    }
}

fn configure_threads() -> qjsd::Result<()> {
    let Ok(v) = std::env::var("QJSD_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("QJSD_THREADS: expected a positive integer, found `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Input(format!("QJSD_THREADS: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|_| run(cli.command)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
