mod commands;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "dcgevp",
    version,
    about = "Permutation-symmetry selection for covariance matrices"
)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Best single generator for a covariance over a basis.
    Select {
        #[arg(long)]
        matrix: PathBuf,
        /// standard | c6-example | chirp:<rate> | perm-diff:<group file> | manifest:<file>
        #[arg(long, default_value = "standard")]
        basis: String,
        /// Where to write the optimal generator; printed when omitted.
        #[arg(long)]
        generator: Option<PathBuf>,
    },
    /// Sequential discovery of a permutation group.
    Sequential {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value = "standard")]
        basis: String,
        /// Acceptance threshold on the commutativity residual; 0 means exact.
        #[arg(long, default_value_t = 0.0)]
        tau: f64,
        #[arg(long, default_value_t = 16)]
        kmax: usize,
        /// Also write the discovered group as a group file.
        #[arg(long)]
        group_out: Option<PathBuf>,
    },
    /// Standard-catalog residuals against graph diffusion covariances.
    AutGraph {
        /// C6, K4, P6, prism, K3, S5, or all.
        #[arg(long, default_value = "all")]
        graph: String,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Blind chirp-rate sweep.
    ChirpSweep {
        #[arg(long, default_value_t = 64)]
        m: usize,
        #[arg(long, default_value_t = 0.15)]
        psi0: f64,
        /// Isotropic noise level; omit for a noiseless covariance.
        #[arg(long, allow_hyphen_values = true)]
        snr_db: Option<f64>,
        /// lo:hi:steps
        #[arg(long, default_value = "0:0.3:61")]
        grid: String,
        /// Use the empirical covariance of this many snapshots.
        #[arg(long)]
        snapshots: Option<usize>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Exhaustive automorphism group of a covariance.
    OracleAut {
        #[command(flatten)]
        source: CovarianceSource,
        /// Diffusion time for --graph.
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Projects a matrix onto the commutant of a group.
    Reynolds {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Identifiability of a generative group.
    ClassifyGroup {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Merged)]
        mode: Mode,
    },
    /// Random Reynolds-projected covariances against the classifier.
    GenExperiment {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = EnsembleArg::Real)]
        ensemble: EnsembleArg,
    },
    /// Timing table for the selection strategies.
    Bench {
        /// Comma-separated dimensions.
        #[arg(long, value_delimiter = ',', default_values_t = [4usize, 6, 7, 8, 16, 64, 256])]
        m: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        d: usize,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct CovarianceSource {
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Diffusion covariance of a study graph.
    #[arg(long)]
    graph: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Raw,
    Merged,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EnsembleArg {
    Real,
    Complex,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();

    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
