mod commands;
mod config;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser};
use tropical_rb::{Error, Result};

use commands::Command;
use config::{ConfigFile, RunConfig, CONFIG_ENV};
use report::{check_golden, exit_code, write_golden, Report, EXIT_CERTIFICATION, EXIT_OK};

/// Thermodynamic min-plus semirings, Rota-Baxter operators, Birkhoff
/// factorization, Witt vectors and their applications.
///
/// Every run prints one JSON report. Exit codes: 0 success, 2 parse error,
/// 3 numeric-domain error, 4 certification or check failure, 5 cap exceeded.
#[derive(Parser, Debug)]
#[command(name = "tropical-rb", version)]
struct Cli {
    /// JSON config file whose fields mirror the long flags.
    #[arg(long, env = CONFIG_ENV, global = true)]
    config: Option<PathBuf>,
    /// Write the report as a versioned golden fixture.
    #[arg(long, global = true)]
    golden: Option<PathBuf>,
    /// Compare the report with a golden fixture; any difference exits with 4.
    #[arg(long, global = true, conflicts_with = "golden")]
    check_golden: Option<PathBuf>,
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Flags {
    /// Inverse temperature: a positive number or `inf`.
    #[arg(long, global = true)]
    beta: Option<String>,
    /// Tolerance for certification and identity residuals.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Truncation order of Witt vectors and zeta functions.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Length of sequence- and series-valued characters.
    #[arg(long, global = true)]
    len: Option<usize>,
    /// Terms of a truncated q-sum; the closed form when absent.
    #[arg(long, global = true)]
    q_terms: Option<usize>,
    /// Subgraph admissibility: `all` or `induced`.
    #[arg(long, global = true)]
    admissibility: Option<String>,
    /// partial-sum, q-integral, projection, identity or characteristic-multiplier.
    #[arg(long, global = true)]
    operator: Option<String>,
    /// Deformation parameter: real in (0,1) for the q-integral, rational for
    /// Witt q-operators, prime field size for zeta functions.
    #[arg(long, global = true)]
    q: Option<String>,
    /// Comma-separated 0/1 mask for projections.
    #[arg(long, global = true)]
    mask: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Random samples per operator certification.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// shannon, renyi or tsallis.
    #[arg(long, global = true)]
    entropy: Option<String>,
    /// Order of the Rényi or Tsallis entropy.
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Largest point-counting grid.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Comma-separated primes for polycount.
    #[arg(long, global = true)]
    primes: Option<String>,
}

impl Flags {
    fn to_config(&self) -> Result<ConfigFile> {
        Ok(ConfigFile {
            beta: self.beta.as_deref().map(str::parse).transpose()?,
            tol: self.tol,
            order: self.order,
            len: self.len,
            q_terms: self.q_terms,
            admissibility: self.admissibility.clone(),
            operator: self.operator.clone(),
            q: self.q.clone(),
            mask: self.mask.clone(),
            seed: self.seed,
            samples: self.samples,
            entropy: self.entropy.clone(),
            alpha: self.alpha,
            cap: self.cap,
            primes: self.primes.clone(),
        })
    }
}

/// Prints to stdout; a closed pipe is not an error.
fn write_stdout(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn run(cli: &Cli) -> Result<i32> {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let cfg = RunConfig::resolve(&file.overlay(cli.flags.to_config()?))?;
    let outcome = cli.command.run(&cfg)?;
    let status = if outcome.checks_passed { EXIT_OK } else { EXIT_CERTIFICATION };
    let inputs = serde_json::to_value(&cli.command).map_err(|e| Error::Parse(e.to_string()))?;
    let report = Report {
        command: cli.command.name(),
        inputs,
        config: &cfg,
        oracles: outcome.oracles,
        result: outcome.result,
        checks_passed: outcome.checks_passed,
        exit_status: status,
    };
    write_stdout(&report.to_json());
    if let Some(p) = &cli.golden {
        write_golden(p, &report)?;
    }
    if let Some(p) = &cli.check_golden {
        check_golden(p, &report)?;
    }
    if status != EXIT_OK {
        eprintln!("error: {} reported a failed check; see checks_passed in the report", report.command);
    }
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    ExitCode::from(code as u8)
}
