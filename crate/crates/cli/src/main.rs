use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use prefdyn::config::ExperimentConfig;
use prefdyn::enumerate::{enumerate, EnumerateRequest};
use prefdyn::experiment::run_experiment_with;
use prefdyn::output::emit_outputs;
use prefdyn::{verify, CliError};
use prefdyn_core::exec::Execution;

/// Preference dynamics on networks of preorders.
#[derive(Debug, Parser)]
#[command(name = "prefdyn", version)]
struct Cli {
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a seeded experiment and write CSV, graph and profile files.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `output` from the config file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the library against brute-force oracles and invariants.
    Verify {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// List every equilibrium of a small system and check its lattice structure.
    Enumerate {
        #[arg(long, default_value_t = 3)]
        alts: usize,
        #[arg(long, default_value_t = 2)]
        agents: usize,
        /// path | cycle | complete | edgeless
        #[arg(long, default_value = "path")]
        graph: String,
        /// identity | converse | mirror
        #[arg(long, default_value = "identity")]
        message: String,
        /// prior | posterior | meet | join
        #[arg(long, default_value = "join")]
        update: String,
        /// Median threshold, capped at each agent's degree.
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match cli.command {
        Command::Run { config, output } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(dir) = output {
                cfg.output = dir;
            }
            let exp = run_experiment_with(&cfg, exec)?;
            let written = emit_outputs(&exp, &cfg.output)?;
            print!("{}", exp.summary());
            println!("wrote {} files to {}", written.len(), cfg.output.display());
        }
        Command::Verify { seed } => {
            let checks = verify::run_all(seed)?;
            for c in &checks {
                println!("{c}");
            }
            let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            if !failed.is_empty() {
                return Err(CliError::Verification(failed.join(", ")));
            }
            println!("all {} checks passed", checks.len());
        }
        Command::Enumerate { alts, agents, graph, message, update, r } => {
            let req = EnumerateRequest { alternatives: alts, agents, graph, message, update, r };
            print!("{}", enumerate(&req, exec)?.summary());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // bad arguments count as a config error, not clap's default 2
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("prefdyn: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
