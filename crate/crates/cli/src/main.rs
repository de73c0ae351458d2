//! `ladderrel`: exact reliability, generating functions and zero structure of K4-ladders
//! and K3-cylinders from the command line.

/// `println!` that exits quietly when stdout is closed.
macro_rules! outln {
    ($($t:tt)*) => {
        $crate::emit(format_args!("{}\n", format_args!($($t)*)))
    };
}

mod cache;
mod commands;
mod plot;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "ladderrel", version, about = "Reliability of K4-ladders and K3-cylinders")]
struct Cli {
    /// Worker threads for root refinement and scatter batches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reliability of a spec file or of uniform parameters.
    Rel(RelArgs),
    /// Generating-function coefficients.
    Series(SeriesArgs),
    /// Transfer-matrix eigenvalues, correlation length and all-terminal eigenvalues.
    Spectral(SpectralArgs),
    /// Complex zeros of a reliability polynomial.
    Zeros(ZerosArgs),
    /// Endpoint, opposite-root and isolated-zero loci.
    Locus(LocusArgs),
    /// Critical rho by exact elimination or bisection.
    Critical(CriticalArgs),
    /// Small-rho predictions and fits.
    #[command(subcommand)]
    Asym(AsymCommand),
    /// Randomized equivalence of transfer matrices against enumeration.
    OracleCheck(OracleArgs),
    /// SVG scatter plot of a `re,im` CSV.
    Plot(PlotArgs),
}

#[derive(Args, Debug)]
pub struct Uniform {
    /// k4, k3f0, k3 or k4all.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value = "1")]
    pub rho: String,
    /// Destination node: s, t or u.
    #[arg(long)]
    pub dest: Option<String>,
}

#[derive(Args, Debug)]
pub struct RelArgs {
    #[command(flatten)]
    pub uniform: Uniform,
    /// Node/edge probability; without it the polynomial in p is printed.
    #[arg(long)]
    pub p: Option<String>,
    /// JSON family spec with per-element probabilities.
    #[arg(long, conflicts_with_all = ["family", "p"])]
    pub spec: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub uniform: Uniform,
    #[arg(long)]
    pub p: Option<String>,
    /// Use the built-in closed-form generating function.
    #[arg(long)]
    pub builtin: bool,
    /// Print the generating function as JSON instead of coefficients.
    #[arg(long)]
    pub gf: bool,
}

#[derive(Args, Debug)]
pub struct SpectralArgs {
    #[arg(long)]
    pub p: String,
    #[arg(long, default_value = "k4")]
    pub family: String,
    #[arg(long, default_value = "1")]
    pub rho: String,
    #[arg(long, default_value_t = 256)]
    pub precision: u32,
}

#[derive(Args, Debug)]
pub struct ZerosArgs {
    #[command(flatten)]
    pub uniform: Uniform,
    /// Working precision in bits (default grows with the degree).
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    pub format: String,
}

#[derive(Args, Debug)]
pub struct LocusArgs {
    #[arg(long, default_value = "k4")]
    pub family: String,
    /// double, opposite or isolated.
    #[arg(long)]
    pub kind: String,
    #[arg(long, conflicts_with = "symbolic")]
    pub rho: Option<String>,
    /// Bivariate locus in p and rho.
    #[arg(long)]
    pub symbolic: bool,
    /// Also print the roots in p (with dominance for isolated zeros).
    #[arg(long)]
    pub roots: bool,
    #[arg(long, default_value_t = 256)]
    pub precision: u32,
}

#[derive(Args, Debug)]
pub struct CriticalArgs {
    #[arg(long, default_value = "k4")]
    pub family: String,
    #[arg(long, default_value = "exact", value_parser = ["exact", "bisect"])]
    pub mode: String,
    /// Two locus kinds to intersect.
    #[arg(long, default_value = "isolated,opposite")]
    pub loci: String,
    /// Keep solutions with rho in `lo:hi`.
    #[arg(long, default_value = "0:1")]
    pub range: String,
    /// Named bisection setup (see --list-presets).
    #[arg(long)]
    pub preset: Option<String>,
    /// `isolated:K` or `segment:LO:HI`.
    #[arg(long)]
    pub structure: Option<String>,
    /// Bisection bracket `lo:hi`.
    #[arg(long)]
    pub bracket: Option<String>,
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
    #[arg(long)]
    pub list_presets: bool,
}

#[derive(Subcommand, Debug)]
pub enum AsymCommand {
    /// Closed-form small-rho location of a feature.
    Predict {
        #[arg(long)]
        feature: String,
        #[arg(long)]
        rho: String,
    },
    /// Fit `prefactor * rho^exponent` to scatters; prints a JSON report.
    Fit(FitArgs),
    /// Leading balance of a symbolic locus under `p = chi * rho^(-e)`.
    Balance {
        #[arg(long, default_value = "k4")]
        family: String,
        #[arg(long)]
        kind: String,
        #[arg(long)]
        exponent: String,
    },
}

#[derive(Args, Debug)]
pub struct FitArgs {
    #[arg(long)]
    pub feature: String,
    /// Scatter JSON files written by `zeros --format json`.
    #[arg(long = "scatter")]
    pub scatters: Vec<PathBuf>,
    /// Comma-separated rho values to compute scatters for.
    #[arg(long, value_delimiter = ',')]
    pub rhos: Vec<String>,
    /// Comma-separated lengths; every rho is computed at the largest.
    #[arg(long, value_delimiter = ',', default_value = "100")]
    pub n: Vec<usize>,
    /// Use the closed-form exponent for the prefactor.
    #[arg(long)]
    pub reference: bool,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value_t = 100)]
    pub graphs: usize,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub title: Option<String>,
    /// Overlay circle `cx,cy,r` (repeatable).
    #[arg(long = "circle")]
    pub circles: Vec<String>,
    /// Overlay mark `re,im` (repeatable).
    #[arg(long = "mark")]
    pub marks: Vec<String>,
    /// Overlay the predicted feature at --rho.
    #[arg(long, requires = "rho")]
    pub feature: Option<String>,
    #[arg(long)]
    pub rho: Option<String>,
}

pub fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing stdout: {e}");
        std::process::exit(1);
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    use ladderrel::Error;
    match e.downcast_ref::<Error>() {
        Some(Error::Invalid(_) | Error::UnknownElement(_) | Error::VarMismatch(..)) => 2,
        Some(Error::NotMonotone(_)) => 2,
        Some(Error::NonConvergence { .. }) => 3,
        Some(Error::Guard(..)) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let res = match cli.command {
        Command::Rel(a) => commands::rel(a),
        Command::Series(a) => commands::series(a),
        Command::Spectral(a) => commands::spectral(a),
        Command::Zeros(a) => commands::zeros(a),
        Command::Locus(a) => commands::locus(a),
        Command::Critical(a) => commands::critical(a),
        Command::Asym(a) => commands::asym(a),
        Command::OracleCheck(a) => commands::oracle_check(a),
        Command::Plot(a) => plot::run(a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::exit_code;
    use ladderrel::Error;

    #[test]
    fn error_kinds_map_to_exit_codes() {
        let code = |e: Error| exit_code(&anyhow::Error::new(e));
        assert_eq!(code(Error::Invalid("x".into())), 2);
        assert_eq!(code(Error::NonConvergence { worst_residual: 1.0, iterations: 3 }), 3);
        assert_eq!(code(Error::Guard(30, 24)), 4);
        assert_eq!(code(Error::ZeroPolynomial), 1);
        assert_eq!(exit_code(&anyhow::Error::new(Error::Guard(1, 0)).context("while enumerating")), 4);
    }
}
