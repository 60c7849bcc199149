//! Dataset I/O, synthetic generation, pass-rate evaluation, and the
//! parameter-prediction experiment.

mod dataset;
mod experiment;
mod generate;
mod summary;

pub use dataset::{load_dataset, read_dataset, save_dataset, write_dataset};
pub use experiment::{
    run_prediction_experiment, AccuracyRow, Concept, ExperimentConfig, ExperimentReport,
    ParameterSource, SummaryStat,
};
pub use generate::{generate_synthetic, ParameterLaw, SyntheticConfig, SyntheticDataset};
pub use summary::{stratified_summary, StratifiedSummary, SummaryRow, DEFAULT_MIN_COUNT};

use std::collections::BTreeMap;

use crate::game::{Aggregation, MultiObjectiveGame, StrategyProfile};
use crate::interval::IntervalSet;
use crate::satisficing::estimate_gamma;
use crate::solvers::{EstimableModel, NonStrategicMode};
use crate::tree::{FeatureRecord, Scenario};
use crate::weighted::{estimate_weights_nonstrategic, estimate_weights_strategic};
use crate::{Error, Result};

/// One observed game: the multi-objective game, who the focal agent is, what
/// everyone played, and the situational features of the encounter.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationRecord {
    pub id: String,
    pub game: MultiObjectiveGame,
    pub focal_player: usize,
    pub observed: StrategyProfile,
    pub features: FeatureRecord,
}

impl ObservationRecord {
    pub fn observed_action(&self) -> usize {
        self.observed.action(self.focal_player)
    }
}

/// Estimates the focal player's rationalisable parameter set for one record,
/// as an interval set over the safety weight (weighted) or the aspiration
/// level (satisficing). Weighted estimation in interval form requires
/// two-objective games.
pub fn estimate_record(
    record: &ObservationRecord,
    model: EstimableModel,
    aggregation: Aggregation,
) -> Result<IntervalSet> {
    let game = &record.game;
    let player = record.focal_player;
    match aggregation {
        Aggregation::Weighted => {
            let region = match model {
                EstimableModel::Nash => estimate_weights_strategic(game, player, &record.observed)?,
                EstimableModel::Maxmax => estimate_weights_nonstrategic(
                    game,
                    player,
                    record.observed_action(),
                    NonStrategicMode::Maxmax,
                )?,
                EstimableModel::Maxmin => estimate_weights_nonstrategic(
                    game,
                    player,
                    record.observed_action(),
                    NonStrategicMode::Maxmin,
                )?,
            };
            region.safety_weight_set().cloned().ok_or_else(|| {
                Error::UnsupportedConfiguration(
                    "interval-form weight regions require two-objective games".into(),
                )
            })
        }
        Aggregation::Satisficing => {
            estimate_gamma(game, player, &record.observed, model)
        }
    }
}

/// Pass/total counts for one group of records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RateCount {
    pub passed: usize,
    pub total: usize,
}

impl RateCount {
    pub fn fraction(self) -> f64 {
        if self.total == 0 {
            f64::NAN
        } else {
            self.passed as f64 / self.total as f64
        }
    }
}

/// Fraction of observations admitting a nonempty rationalisable set, overall
/// and per scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct PassRateReport {
    pub model: EstimableModel,
    pub aggregation: Aggregation,
    pub per_scenario: BTreeMap<Scenario, RateCount>,
    pub overall: RateCount,
}

/// Evaluates, for every record, whether some parameter of the given
/// aggregation family rationalises the observation under `model`.
pub fn compute_pass_rate(
    records: &[ObservationRecord],
    model: EstimableModel,
    aggregation: Aggregation,
) -> Result<PassRateReport> {
    let mut per_scenario: BTreeMap<Scenario, RateCount> = BTreeMap::new();
    let mut overall = RateCount::default();
    for record in records {
        let passed = !estimate_record(record, model, aggregation)?.is_empty();
        let entry = per_scenario.entry(record.features.scenario).or_default();
        entry.total += 1;
        overall.total += 1;
        if passed {
            entry.passed += 1;
            overall.passed += 1;
        }
    }
    Ok(PassRateReport { model, aggregation, per_scenario, overall })
}

/// Pass rates as CSV: one row per estimable model, one column per
/// (scenario × aggregation) plus overall columns. Scenarios absent from the
/// dataset leave their cells empty.
pub fn pass_rate_table(records: &[ObservationRecord]) -> Result<String> {
    use std::fmt::Write as _;
    let mut out = String::from("model");
    for scenario in Scenario::ALL {
        for aggregation in Aggregation::ALL {
            write!(out, ",{scenario}_{aggregation}").expect("writing to a String cannot fail");
        }
    }
    for aggregation in Aggregation::ALL {
        write!(out, ",overall_{aggregation}").expect("writing to a String cannot fail");
    }
    out.push('\n');
    for model in EstimableModel::ALL {
        out.push_str(model.tag());
        let reports = [
            compute_pass_rate(records, model, Aggregation::Weighted)?,
            compute_pass_rate(records, model, Aggregation::Satisficing)?,
        ];
        for scenario in Scenario::ALL {
            for report in &reports {
                match report.per_scenario.get(&scenario) {
                    Some(count) => write!(out, ",{}", count.fraction())
                        .expect("writing to a String cannot fail"),
                    None => out.push(','),
                }
            }
        }
        for report in &reports {
            if report.overall.total == 0 {
                out.push(',');
            } else {
                write!(out, ",{}", report.overall.fraction())
                    .expect("writing to a String cannot fail");
            }
        }
        out.push('\n');
    }
    Ok(out)
}
