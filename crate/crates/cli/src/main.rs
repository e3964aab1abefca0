use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cvf_core::pipeline::{self, RunConfig};

/// Checks that a six-sheet curvature varifold decomposes uniquely into two
/// pieces that are not curvature varifolds.
#[derive(Parser, Debug)]
#[command(name = "cvf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every verification suite and write verify.json.
    Verify(Common),
    /// Refinement table (converge.csv) and vertex cutoff study (cutoff.csv).
    Converge {
        #[command(flatten)]
        common: Common,
        /// Grid levels, coarse to fine.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        levels: Vec<u32>,
    },
    /// List the boundary-free half-sheet unions and the decomposition.
    Enumerate(Common),
    /// Write OBJ meshes of the six sheets.
    ExportMesh(Common),
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, default_value_t = pipeline::DEFAULT_LEVEL)]
    level: u32,
    /// Relative tolerance for the closed-form comparisons.
    #[arg(long, default_value_t = pipeline::DEFAULT_TOL)]
    tol: f64,
    /// quintic-plateau, alt, or steep (fails the slope bound on purpose).
    #[arg(long, default_value = "quintic-plateau")]
    bump: String,
    #[arg(long, default_value = "cvf-out")]
    out: PathBuf,
    /// Chart half-width for mesh export.
    #[arg(long, default_value_t = 2.0)]
    window: f64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

impl From<Common> for RunConfig {
    fn from(c: Common) -> Self {
        RunConfig {
            level: c.level,
            tol: c.tol,
            bump: c.bump,
            out: c.out,
            seed: c.seed,
            window: c.window,
        }
    }
}

fn run(cli: Cli) -> cvf_core::Result<()> {
    match cli.command {
        Command::Verify(common) => {
            let report = pipeline::cmd_verify(&RunConfig::from(common))?;
            for c in &report.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                println!("{mark} {:<24} {:.3e} (limit {:.1e})  {}", c.name, c.metric, c.threshold, c.detail);
            }
            report.outcome()
        }
        Command::Converge { common, levels } => {
            let config = RunConfig::from(common);
            let report = pipeline::cmd_converge(&config, &levels)?;
            print!("{}", report.table_csv());
            print!("{}", report.cutoff_csv());
            Ok(())
        }
        Command::Enumerate(common) => {
            let report = pipeline::cmd_enumerate(&RunConfig::from(common))?;
            for line in report.lines() {
                println!("{line}");
            }
            Ok(())
        }
        Command::ExportMesh(common) => {
            let path = pipeline::cmd_export_mesh(&RunConfig::from(common))?;
            println!("{}", path.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(pipeline::exit_code(&e) as u8)
        }
    }
}
