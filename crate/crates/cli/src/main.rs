use std::fs::File;
use std::io::{self, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aoi_sched::experiment::{
    diagnose, format_diagnostics, format_summary, preset, run_experiment, solve_bounds, summarize, write_csv,
    ExperimentConfig, DiagnosticRow,
};
use aoi_sched::Error;
use clap::{Parser, Subcommand};

/// Age-of-information scheduling experiments.
#[derive(Parser)]
#[command(name = "aoi-sched", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate every (sweep value, policy, seed) of a config and write CSV.
    Simulate {
        config: PathBuf,
        /// CSV destination; defaults to the config's `output`, else stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the optimal peak ages and print every bound as JSON.
    Bounds { config: PathBuf },
    /// Run a shipped preset (two-link, fig4-5, fig6-7, fig8, fig9).
    Preset {
        name: String,
        /// Directory for `<name>.csv` and `<name>.summary.json`.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Use seeds 1..=k instead of the preset's list.
        #[arg(long)]
        seeds: Option<usize>,
    },
    /// Check the pathwise identities and lemma inequalities on every run.
    Diagnose {
        config: PathBuf,
        /// β used when rewriting the average age through `A² + βA`.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        beta: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Simulate { config, out } => {
            let cfg = ExperimentConfig::from_file(&config)?;
            let out = out.or_else(|| cfg.output.as_ref().map(PathBuf::from));
            simulate(&cfg, out.as_deref())?;
        }
        Command::Bounds { config } => {
            let cfg = ExperimentConfig::from_file(&config)?;
            let entries = solve_bounds(&cfg)?;
            println!("{}", serde_json::to_string_pretty(&entries)?);
        }
        Command::Preset { name, out, seeds } => {
            let cfg = preset(&name, seeds)?;
            std::fs::create_dir_all(&out)?;
            simulate(&cfg, Some(&out.join(format!("{name}.csv"))))?;
        }
        Command::Diagnose { config, beta } => {
            let cfg = ExperimentConfig::from_file(&config)?;
            let rows = diagnose(&cfg, beta)?;
            print!("{}", format_diagnostics(&rows));
            if !rows.iter().all(DiagnosticRow::passed) {
                eprintln!("some diagnostics failed");
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn simulate(cfg: &ExperimentConfig, out: Option<&Path>) -> Result<(), Error> {
    let output = run_experiment(cfg)?;
    let summary = summarize(&output.rows);
    match out {
        Some(path) => {
            write_csv(&output.rows, BufWriter::new(File::create(path)?))?;
            let summary_path = path.with_extension("summary.json");
            let doc = serde_json::json!({
                "name": cfg.name,
                "bounds": output.bounds,
                "summary": summary,
            });
            std::fs::write(&summary_path, serde_json::to_string_pretty(&doc)?)?;
            print!("{}", format_summary(cfg, &summary));
            eprintln!("wrote {} and {}", path.display(), summary_path.display());
        }
        None => {
            write_csv(&output.rows, io::stdout().lock())?;
            eprint!("{}", format_summary(cfg, &summary));
        }
    }
    Ok(())
}
