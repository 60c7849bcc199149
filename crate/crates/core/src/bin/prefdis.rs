//! Command-line front end: dataset validation, synthetic generation,
//! rationalisable-set estimation, pass rates, the prediction experiment, and
//! velocity-binned summaries.
//!
//! Exit codes: 0 on success, 2 on any validation or argument error, 1 on I/O
//! failure.

use std::fs;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use prefdis_core::game::Aggregation;
use prefdis_core::interval::IntervalSet;
use prefdis_core::pipeline::{
    estimate_record, generate_synthetic, load_dataset, pass_rate_table,
    run_prediction_experiment, save_dataset, stratified_summary, Concept, ExperimentConfig,
    ParameterLaw, SyntheticConfig, DEFAULT_MIN_COUNT,
};
use prefdis_core::solvers::EstimableModel;
use prefdis_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "prefdis",
    version,
    about = "Estimate rationalisable preference parameters from observed play"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a dataset parses and satisfies every game invariant.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Generate a synthetic dataset with hidden ground-truth parameters.
    Generate {
        /// Number of games.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        players: usize,
        /// Actions per player.
        #[arg(long)]
        actions: usize,
        /// Model the observed actions are optimal under.
        #[arg(long)]
        model: EstimableModel,
        #[arg(long)]
        aggregation: Aggregation,
        /// Ground-truth law: 'constant:<value>' or 'velocity:<intercept>,<slope>'.
        #[arg(long)]
        law: ParameterLaw,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
    /// Estimate each record's rationalisable parameter set (JSON lines).
    Estimate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        model: EstimableModel,
        #[arg(long)]
        aggregation: Aggregation,
        #[arg(long)]
        output: PathBuf,
    },
    /// Pass rates per model, scenario, and aggregation family (CSV).
    Passrate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// K-run train/test parameter-prediction experiment (CSV).
    Experiment {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 30)]
        runs: usize,
        /// Training fraction of each scenario group.
        #[arg(long, default_value_t = 0.8)]
        split: f64,
        /// Comma-separated solution concepts.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "L0:MX,L0:MM,L1,L2,PNE,Stack,Rule,LkR"
        )]
        concepts: Vec<Concept>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
    /// Median/mean estimated parameter per scenario and velocity bin (CSV).
    Summary {
        #[arg(long)]
        input: PathBuf,
        /// Estimates file produced by `estimate` for the same dataset.
        #[arg(long)]
        estimates: PathBuf,
        /// Comma-separated velocity bin edges, strictly increasing.
        #[arg(long, value_delimiter = ',')]
        bins: Vec<f64>,
        /// Label for the model column of the output.
        #[arg(long, default_value = "estimated")]
        model: String,
        /// Strata smaller than this are flagged "insufficient".
        #[arg(long, default_value_t = DEFAULT_MIN_COUNT)]
        min_count: usize,
        #[arg(long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            match error {
                Error::Io(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Validate { input } => {
            let records = load_dataset(&input)?;
            println!("{} valid records in {}", records.len(), input.display());
        }
        Command::Generate { n, players, actions, model, aggregation, law, seed, output } => {
            let config = SyntheticConfig {
                n_games: n,
                players,
                actions_per_player: actions,
                true_model: model,
                aggregation,
                law,
                seed,
            };
            let dataset = generate_synthetic(&config)?;
            save_dataset(&output, &dataset.records)?;
            println!("wrote {} records to {}", dataset.records.len(), output.display());
        }
        Command::Estimate { input, model, aggregation, output } => {
            let records = load_dataset(&input)?;
            let mut lines = String::new();
            for record in &records {
                let set = estimate_record(record, model, aggregation)?;
                lines.push_str(&serde_json::to_string(&set).map_err(|e| {
                    Error::InvalidArgument(format!("unserializable interval set: {e}"))
                })?);
                lines.push('\n');
            }
            fs::write(&output, lines)?;
            println!("wrote {} estimates to {}", records.len(), output.display());
        }
        Command::Passrate { input, output } => {
            let records = load_dataset(&input)?;
            let table = pass_rate_table(&records)?;
            fs::write(&output, table)?;
            println!("wrote pass rates for {} records to {}", records.len(), output.display());
        }
        Command::Experiment { input, runs, split, concepts, seed, output } => {
            let records = load_dataset(&input)?;
            let config = ExperimentConfig { runs, split, concepts, seed };
            let report = run_prediction_experiment(&records, &config)?;
            fs::write(&output, report.to_csv())?;
            println!(
                "wrote {} accuracy rows ({} runs) to {}",
                report.rows.len(),
                report.runs,
                output.display()
            );
        }
        Command::Summary { input, estimates, bins, model, min_count, output } => {
            let records = load_dataset(&input)?;
            let sets = load_estimates(&estimates)?;
            let summary = stratified_summary(&records, &sets, &model, &bins, min_count)?;
            fs::write(&output, summary.to_csv())?;
            println!("wrote {} strata to {}", summary.rows.len(), output.display());
        }
    }
    Ok(())
}

fn load_estimates(path: &Path) -> Result<Vec<IntervalSet>> {
    let reader = BufReader::new(fs::File::open(path)?);
    let mut sets = Vec::new();
    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let set: IntervalSet = serde_json::from_str(&line).map_err(|e| Error::Dataset {
            line: index + 1,
            message: format!("malformed interval set: {e}"),
        })?;
        sets.push(set);
    }
    Ok(sets)
}
