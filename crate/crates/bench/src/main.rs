use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vqebench::config::{ModelSpec, Overrides, Phase, PhaseConfig, Profile};
use vqebench::error::{BenchError, Result};
use vqebench::protocol::{run_phase, PreparedModel};
use vqebench::validate::run_checks;
use vqebench_core::exact_spectrum;

#[derive(Parser)]
#[command(
    name = "vqebench",
    version,
    about = "Benchmark optimizers on noisy VQE objectives"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Screen optimizers on the 5-qubit Ising chain.
    Phase1(PhaseArgs),
    /// Compare FEs to target across Ising sizes.
    Phase2(PhaseArgs),
    /// Record convergence curves on the Hubbard model.
    Phase3(PhaseArgs),
    /// Print the lowest eigenvalues of a model given as JSON.
    Spectrum {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 10)]
        k: usize,
    },
    /// Run the built-in invariant checks.
    Validate,
}

#[derive(Args)]
struct PhaseArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory; overrides the config's `output_dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = Profile::Paper)]
    profile: Profile,
    /// Comma-separated optimizer ids.
    #[arg(long, value_delimiter = ',')]
    optimizers: Option<Vec<String>>,
    #[arg(long)]
    seed: Option<u64>,
}

fn phase(phase: Phase, args: PhaseArgs) -> Result<()> {
    let overrides = Overrides {
        profile: args.profile,
        optimizers: args.optimizers,
        seed_base: args.seed,
        output_dir: args.out,
    };
    let cfg = match &args.config {
        Some(path) => PhaseConfig::load(phase, path, &overrides)?,
        None => PhaseConfig::from_overrides(phase, &overrides)?,
    };
    let dir = cfg
        .output_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("results/phase{}", phase.number())));
    let report = run_phase(&cfg)?;
    vqebench::export(&report, &cfg, &dir)?;
    print!("{}", vqebench::export::summary_csv(&report.table));
    if phase == Phase::Screening {
        print!("{}", vqebench::export::verdicts_csv(&report.verdicts));
    }
    eprintln!("results written to {}", dir.display());
    Ok(())
}

fn spectrum(path: PathBuf, k: usize) -> Result<()> {
    let text = std::fs::read_to_string(&path).map_err(|e| BenchError::Io {
        path: path.clone(),
        source: e,
    })?;
    let model: ModelSpec = serde_json::from_str(&text).map_err(|e| BenchError::Json {
        path: path.clone(),
        source: e,
    })?;
    let prepared = PreparedModel::new(model)?;
    for e in exact_spectrum(&prepared.hamiltonian, k)?.eigenvalues {
        println!("{e}");
    }
    Ok(())
}

fn validate() -> Result<bool> {
    let checks = run_checks()?;
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            println!("{status} {}", c.name);
        } else {
            println!("{status} {} ({})", c.name, c.detail);
        }
    }
    Ok(checks.iter().all(|c| c.passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Phase1(a) => phase(Phase::Screening, a).map(|_| true),
        Command::Phase2(a) => phase(Phase::FeComparison, a).map(|_| true),
        Command::Phase3(a) => phase(Phase::Convergence, a).map(|_| true),
        Command::Spectrum { model, k } => spectrum(model, k).map(|_| true),
        Command::Validate => validate(),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
