use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fracgs::commands::{describe_failures, exit_code, run, RunConfig};
use fracgs::io::OUT_ENV;
use fracgs::spectral::GridSpec;

#[derive(Parser)]
#[command(name = "fracgs", about = "Fractional ground states: solve, certify, continue, extend")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ground state with its Pohozaev, symmetry and decay checks
    Solve(Flags),
    /// Spectrum of the linearization with the nondegeneracy and oscillation checks
    Spectrum(Flags),
    /// Branch in s towards the target order
    Continue(Flags),
    /// Heat and resolvent kernel certificates
    Kernels(Flags),
    /// Extension energy, trace and Neumann certificates
    Extend(Flags),
    /// All acceptance criteria
    VerifyAll(Flags),
}

#[derive(clap::Args)]
struct Flags {
    #[arg(long, default_value_t = 0.5)]
    s: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Box length; needs --N
    #[arg(long = "L", requires = "points")]
    length: Option<f64>,
    /// Grid points; needs --L
    #[arg(long = "N", id = "points", requires = "length")]
    points: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0.999)]
    target_s: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Heat kernel time
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Stored solution CSV for spectrum
    #[arg(long)]
    input: Option<PathBuf>,
    /// Run the seed-coincidence experiment with continue
    #[arg(long)]
    uniqueness: bool,
    #[arg(long, env = OUT_ENV, default_value = fracgs::io::DEFAULT_OUT)]
    out: PathBuf,
}

impl Flags {
    fn config(self) -> RunConfig {
        RunConfig {
            s: self.s,
            alpha: self.alpha,
            lambda: self.lambda,
            grid: self.length.zip(self.points).map(|(length, points)| GridSpec { length, points }),
            tol: self.tol,
            target_s: self.target_s,
            seed: self.seed,
            t: self.t,
            input: self.input,
            uniqueness: self.uniqueness,
            out: self.out,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, flags) = match cli.command {
        Command::Solve(f) => ("solve", f),
        Command::Spectrum(f) => ("spectrum", f),
        Command::Continue(f) => ("continue", f),
        Command::Kernels(f) => ("kernels", f),
        Command::Extend(f) => ("extend", f),
        Command::VerifyAll(f) => ("verify-all", f),
    };
    let outcome = run(name, &flags.config());
    match &outcome {
        Ok(report) => {
            for c in &report.checks {
                println!("{:>4}  {}  {:.3e}", if c.status == fracgs::report::Status::Pass { "ok" } else { "FAIL" }, c.name, c.value);
            }
            for line in describe_failures(report) {
                eprintln!("failed {line}");
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_code(&outcome) as u8)
}
