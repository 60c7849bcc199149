//! Synthetic dataset generation with known ground-truth parameters.
//!
//! Each game gets uniform payoffs in [-1, 1], a hidden true parameter drawn
//! from a [`ParameterLaw`], and an observed profile that is optimal for the
//! configured model under that parameter. Datasets built this way let
//! round-trip tests check that estimators recover sets containing the truth.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{
    Aggregation, AggregationParam, AspirationLevel, MultiObjectiveGame, WeightVector,
};
use crate::solvers::EstimableModel;
use crate::tree::{FeatureRecord, Scenario};
use crate::{Error, Result};

use super::ObservationRecord;

/// Velocities are drawn uniformly from `[0, MAX_VELOCITY)` m/s.
pub const MAX_VELOCITY: f64 = 15.0;

/// Payoff draws per game before giving up on finding a pure equilibrium.
const MAX_RESAMPLES: usize = 10_000;

const ACTION_NAMES: [&str; 4] = ["wait", "slow", "go", "rush"];

const INTERSECTION_TASKS: [&str; 3] = ["left-turn", "right-turn", "straight"];
const ROUNDABOUT_TASKS: [&str; 3] = ["enter", "circulate", "exit"];
const CROSSWALK_TASKS: [&str; 3] = ["approach", "yield", "proceed"];

/// How the hidden true parameter depends on game features.
///
/// Values are clamped to the parameter's admissible range: `[0, 1]` for a
/// safety weight, `[-1, 1]` for an aspiration level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParameterLaw {
    /// The same parameter for every game.
    Constant(f64),
    /// An affine function of velocity, e.g. `0.9 - 0.12 * velocity`.
    Velocity { intercept: f64, slope: f64 },
}

impl ParameterLaw {
    pub fn parameter(&self, velocity: f64, aggregation: Aggregation) -> f64 {
        let raw = match *self {
            ParameterLaw::Constant(value) => value,
            ParameterLaw::Velocity { intercept, slope } => intercept + slope * velocity,
        };
        match aggregation {
            Aggregation::Weighted => raw.clamp(0.0, 1.0),
            Aggregation::Satisficing => raw.clamp(-1.0, 1.0),
        }
    }
}

impl fmt::Display for ParameterLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ParameterLaw::Constant(value) => write!(f, "constant:{value}"),
            ParameterLaw::Velocity { intercept, slope } => {
                write!(f, "velocity:{intercept},{slope}")
            }
        }
    }
}

impl FromStr for ParameterLaw {
    type Err = Error;

    /// Parses `constant:<value>` or `velocity:<intercept>,<slope>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidArgument(format!(
                "invalid parameter law '{s}' (expected 'constant:<value>' or \
                 'velocity:<intercept>,<slope>')"
            ))
        };
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "constant" => {
                let value: f64 = args.trim().parse().map_err(|_| bad())?;
                if !value.is_finite() {
                    return Err(bad());
                }
                Ok(ParameterLaw::Constant(value))
            }
            "velocity" => {
                let (intercept, slope) = args.split_once(',').ok_or_else(bad)?;
                let intercept: f64 = intercept.trim().parse().map_err(|_| bad())?;
                let slope: f64 = slope.trim().parse().map_err(|_| bad())?;
                if !intercept.is_finite() || !slope.is_finite() {
                    return Err(bad());
                }
                Ok(ParameterLaw::Velocity { intercept, slope })
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    pub n_games: usize,
    pub players: usize,
    pub actions_per_player: usize,
    pub true_model: EstimableModel,
    pub aggregation: Aggregation,
    pub law: ParameterLaw,
    pub seed: u64,
}

/// A generated dataset together with its hidden ground truth: `true_params[i]`
/// is the parameter `records[i]` was generated under. The parameter is not
/// serialized with the records.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticDataset {
    pub records: Vec<ObservationRecord>,
    pub true_params: Vec<f64>,
}

pub fn generate_synthetic(config: &SyntheticConfig) -> Result<SyntheticDataset> {
    if config.players == 0 {
        return Err(Error::InvalidArgument("a game needs at least one player".into()));
    }
    if config.actions_per_player == 0 {
        return Err(Error::InvalidArgument(
            "every player needs at least one action".into(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let reasoning = config.true_model.to_reasoning();
    let labels = action_labels(config.actions_per_player);
    let objectives = vec!["safety".to_string(), "progress".to_string()];

    let mut records = Vec::with_capacity(config.n_games);
    let mut true_params = Vec::with_capacity(config.n_games);
    for index in 0..config.n_games {
        let velocity = rng.random_range(0.0..MAX_VELOCITY);
        let scenario = Scenario::ALL[rng.random_range(0..Scenario::ALL.len())];
        let tasks: &[&str] = match scenario {
            Scenario::Intersection => &INTERSECTION_TASKS,
            Scenario::Roundabout => &ROUNDABOUT_TASKS,
            Scenario::Crosswalk => &CROSSWALK_TASKS,
        };
        let task = tasks[rng.random_range(0..tasks.len())].to_string();

        let parameter = config.law.parameter(velocity, config.aggregation);
        let param = match config.aggregation {
            Aggregation::Weighted => AggregationParam::Weighted(WeightVector::pair(parameter)?),
            Aggregation::Satisficing => {
                AggregationParam::Satisficing(AspirationLevel::new(parameter)?)
            }
        };
        let params = vec![param; config.players];

        let mut solved = None;
        for _ in 0..MAX_RESAMPLES {
            let game = MultiObjectiveGame::from_fn(
                objectives.clone(),
                vec![labels.clone(); config.players],
                vec![Some(0); config.players],
                |_, _| vec![rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)],
            )?;
            if let Some(profile) = reasoning.solve_profile(&game, &params)? {
                solved = Some((game, profile));
                break;
            }
        }
        let (game, observed) = solved.ok_or_else(|| {
            Error::NoSolution(format!(
                "no game with a pure equilibrium found in {MAX_RESAMPLES} draws"
            ))
        })?;

        records.push(ObservationRecord {
            id: format!("g{index:05}"),
            features: FeatureRecord {
                velocity,
                scenario,
                task,
                model: config.true_model.tag().to_string(),
            },
            game,
            focal_player: 0,
            observed,
        });
        true_params.push(parameter);
    }
    Ok(SyntheticDataset { records, true_params })
}

fn action_labels(count: usize) -> Vec<String> {
    (0..count)
        .map(|k| match ACTION_NAMES.get(k) {
            Some(name) if count <= ACTION_NAMES.len() => (*name).to_string(),
            _ => format!("a{k}"),
        })
        .collect()
}
