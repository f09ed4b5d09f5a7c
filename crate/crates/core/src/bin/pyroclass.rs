use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use pyroclass::experiment::{self, ExperimentConfig, ModelKind};
use pyroclass::Error;

#[derive(Parser)]
#[command(name = "pyroclass", version, about = "Fire / no-fire image classification experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Resize, augment, and vectorize image folders into FFDS files.
    Prepare {
        #[arg(long)]
        config: PathBuf,
    },
    /// Grid-search, refit, and evaluate every model at every resolution.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Run `prepare` first.
        #[arg(long)]
        prepare: bool,
    },
    /// Render a sweep report as CSV and SVG.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit one model at one prepared resolution and save it.
    Train {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
        #[arg(long)]
        resolution: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score a saved model on an FFDS file.
    Eval {
        #[arg(long)]
        model_file: PathBuf,
        #[arg(long)]
        data: PathBuf,
    },
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn run(command: Command) -> pyroclass::Result<()> {
    match command {
        Command::Prepare { config } => {
            let cfg = ExperimentConfig::load(config)?;
            for f in experiment::cmd_prepare(&cfg)? {
                println!("{}\t{} x {}", f.path.display(), f.n_samples, f.n_features);
            }
        }
        Command::Sweep { config, prepare } => {
            let cfg = ExperimentConfig::load(config)?;
            let report = experiment::cmd_sweep(&cfg, prepare)?;
            println!(
                "{} rows, {} failures -> {}",
                report.rows.len(),
                report.failures.len(),
                cfg.output_dir.join(experiment::sweep::REPORT_FILE).display()
            );
        }
        Command::Report { input, out } => {
            let outputs = experiment::cmd_report_file(&input, &out)?;
            println!("{}", outputs.csv.display());
            for p in outputs.svgs.iter().chain(&outputs.failure_log) {
                println!("{}", p.display());
            }
        }
        Command::Train {
            config,
            model,
            resolution,
            out,
        } => {
            let cfg = ExperimentConfig::load(config)?;
            let t = experiment::cmd_train(&cfg, model, resolution, &out)?;
            println!("{}\tcv accuracy {:.6}\t{}", t.params, t.cv_accuracy, t.path.display());
        }
        Command::Eval { model_file, data } => {
            let e = experiment::cmd_eval(&model_file, &data)?;
            println!("{}", experiment::Evaluation::CSV_HEADER);
            println!("{}", e.csv_fields());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::UnknownModel { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
