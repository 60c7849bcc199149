//! The parameter-prediction experiment.
//!
//! For each of K runs the dataset is split by scenario into training and test
//! sets; one regression tree per aggregation family is fitted on the training
//! records' representative estimated parameters (with the estimation model as
//! a categorical feature); each solution concept then predicts every test
//! game's focal action three ways — scalarized with the tree-predicted weight,
//! with the tree-predicted aspiration level, and with the fixed baseline
//! weights [0.5, 0.5] — and is scored against the observed action.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{Aggregation, AggregationParam, AspirationLevel, WeightVector};
use crate::solvers::{EstimableModel, L0Mode, ReasoningModel};
use crate::tree::{RegressionTree, TreeParams};
use crate::{Error, Result};

use super::{estimate_record, ObservationRecord};

/// Baseline safety weight ("fixed weights of w = [0.5, 0.5]").
pub const BASELINE_WEIGHT: f64 = 0.5;

/// A solution concept whose predictions are scored in the experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Concept {
    /// Level-0 maxmax (best-case optimist).
    L0Mx,
    /// Level-0 maxmin (worst-case pessimist).
    L0Mm,
    /// Level-1 best response to maxmax anchors.
    L1,
    /// Level-2 best response to level-1 play.
    L2,
    /// Welfare-maximal pure Nash equilibrium.
    Pne,
    /// Strong Stackelberg equilibrium; the focal player is the follower.
    Stackelberg,
    /// Everyone plays their rule-following action.
    Rule,
    /// Level-1 best response to rule-following opponents.
    LkRule,
}

impl Concept {
    pub const ALL: [Concept; 8] = [
        Concept::L0Mx,
        Concept::L0Mm,
        Concept::L1,
        Concept::L2,
        Concept::Pne,
        Concept::Stackelberg,
        Concept::Rule,
        Concept::LkRule,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Concept::L0Mx => "L0:MX",
            Concept::L0Mm => "L0:MM",
            Concept::L1 => "L1",
            Concept::L2 => "L2",
            Concept::Pne => "PNE",
            Concept::Stackelberg => "Stack",
            Concept::Rule => "Rule",
            Concept::LkRule => "LkR",
        }
    }

    /// The estimable model whose parameter estimates feed this concept's
    /// scalarization: the matching envelope model for level-0 concepts, the
    /// equilibrium model for everything strategic.
    pub fn estimation_model(self) -> EstimableModel {
        match self {
            Concept::L0Mx => EstimableModel::Maxmax,
            Concept::L0Mm => EstimableModel::Maxmin,
            _ => EstimableModel::Nash,
        }
    }

    fn reasoning(self, focal: usize) -> ReasoningModel {
        match self {
            Concept::L0Mx => ReasoningModel::LevelK { k: 0, l0: L0Mode::Maxmax },
            Concept::L0Mm => ReasoningModel::LevelK { k: 0, l0: L0Mode::Maxmin },
            Concept::L1 => ReasoningModel::LevelK { k: 1, l0: L0Mode::Maxmax },
            Concept::L2 => ReasoningModel::LevelK { k: 2, l0: L0Mode::Maxmax },
            Concept::Pne => ReasoningModel::Nash,
            Concept::Stackelberg => ReasoningModel::Stackelberg { leader: 1 - focal },
            Concept::Rule => ReasoningModel::Rule,
            Concept::LkRule => ReasoningModel::LkRule,
        }
    }

    fn requires_rule(self) -> bool {
        matches!(self, Concept::Rule | Concept::LkRule)
    }

    fn requires_two_players(self) -> bool {
        matches!(self, Concept::Stackelberg)
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Concept {
    type Err = Error;

    /// Case-insensitive; a trailing period is accepted ("Stack." = "Stack").
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let name = lower.strip_suffix('.').unwrap_or(&lower);
        match name {
            "l0:mx" => Ok(Concept::L0Mx),
            "l0:mm" => Ok(Concept::L0Mm),
            "l1" => Ok(Concept::L1),
            "l2" => Ok(Concept::L2),
            "pne" => Ok(Concept::Pne),
            "stack" => Ok(Concept::Stackelberg),
            "rule" => Ok(Concept::Rule),
            "lkr" => Ok(Concept::LkRule),
            _ => Err(Error::InvalidArgument(format!(
                "unknown concept '{s}' (expected one of L0:MX, L0:MM, L1, L2, PNE, Stack, \
                 Rule, LkR)"
            ))),
        }
    }
}

/// Where the scalarization parameter for a prediction comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParameterSource {
    PredictedWeighted,
    PredictedSatisficing,
    Baseline,
}

impl ParameterSource {
    pub const ALL: [ParameterSource; 3] = [
        ParameterSource::PredictedWeighted,
        ParameterSource::PredictedSatisficing,
        ParameterSource::Baseline,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ParameterSource::PredictedWeighted => "predicted_weighted",
            ParameterSource::PredictedSatisficing => "predicted_satisficing",
            ParameterSource::Baseline => "baseline",
        }
    }
}

impl fmt::Display for ParameterSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub runs: usize,
    pub split: f64,
    pub concepts: Vec<Concept>,
    pub seed: u64,
}

/// Accuracy of one (concept, parameter source) pair in one run.
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyRow {
    pub concept: Concept,
    pub source: ParameterSource,
    pub run: usize,
    /// Fraction of evaluated test games predicted correctly (0 when none
    /// could be evaluated).
    pub accuracy: f64,
    pub evaluated: usize,
    pub skipped: usize,
}

/// Mean ± sample standard deviation over runs for one (concept, source).
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryStat {
    pub concept: Concept,
    pub source: ParameterSource,
    pub mean: f64,
    pub sd: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub runs: usize,
    pub split: f64,
    pub seed: u64,
    pub rows: Vec<AccuracyRow>,
    pub summary: Vec<SummaryStat>,
}

impl ExperimentReport {
    /// Per-run rows followed by mean/sd summary rows, one CSV line each.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("concept,source,run,accuracy,evaluated,skipped\n");
        for row in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                row.concept, row.source, row.run, row.accuracy, row.evaluated, row.skipped
            )
            .expect("writing to a String cannot fail");
        }
        for stat in &self.summary {
            writeln!(out, "{},{},mean,{},,", stat.concept, stat.source, stat.mean)
                .expect("writing to a String cannot fail");
            writeln!(out, "{},{},sd,{},,", stat.concept, stat.source, stat.sd)
                .expect("writing to a String cannot fail");
        }
        out
    }

    /// Runs in which `source` scored at least as well as `other` for the
    /// given concept.
    pub fn runs_at_or_above(
        &self,
        concept: Concept,
        source: ParameterSource,
        other: ParameterSource,
    ) -> usize {
        (0..self.runs)
            .filter(|&run| {
                let score = |s: ParameterSource| {
                    self.rows
                        .iter()
                        .find(|r| r.concept == concept && r.source == s && r.run == run)
                        .map(|r| r.accuracy)
                };
                match (score(source), score(other)) {
                    (Some(a), Some(b)) => a >= b,
                    _ => false,
                }
            })
            .count()
    }
}

pub fn run_prediction_experiment(
    records: &[ObservationRecord],
    config: &ExperimentConfig,
) -> Result<ExperimentReport> {
    if records.is_empty() {
        return Err(Error::InvalidArgument("experiment needs a nonempty dataset".into()));
    }
    if config.runs == 0 {
        return Err(Error::InvalidArgument("experiment needs at least one run".into()));
    }
    if !(config.split > 0.0 && config.split < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "training fraction must lie strictly between 0 and 1 (got {})",
            config.split
        )));
    }
    if config.concepts.is_empty() {
        return Err(Error::InvalidArgument("experiment needs at least one concept".into()));
    }

    // Representative estimated parameters are split-independent, so estimate
    // once per (record, model, aggregation) up front.
    let representatives = estimate_representatives(records)?;

    // matches/evaluated/skipped per [run][concept][source].
    let mut counts = vec![vec![[(0usize, 0usize, 0usize); 3]; config.concepts.len()]; config.runs];

    for run in 0..config.runs {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(run as u64 + 1);
        let (train, test) = stratified_split(records, config.split, &mut rng);

        let mut trees: Vec<Option<RegressionTree>> = Vec::new();
        for aggregation in [Aggregation::Weighted, Aggregation::Satisficing] {
            let mut features = Vec::new();
            let mut targets = Vec::new();
            for &index in &train {
                for (slot, model) in EstimableModel::ALL.into_iter().enumerate() {
                    if let Some(target) = representatives[aggregation_slot(aggregation)][index][slot]
                    {
                        features.push(records[index].features.with_model(model.tag()));
                        targets.push(target);
                    }
                }
            }
            trees.push(if features.is_empty() {
                None
            } else {
                Some(RegressionTree::fit(&features, &targets, TreeParams::default(), config.seed)?)
            });
        }

        for &index in &test {
            let record = &records[index];
            let game = &record.game;
            for (c, &concept) in config.concepts.iter().enumerate() {
                let missing_rule =
                    (0..game.player_count()).any(|p| game.rule_action(p).is_none());
                let unsupported = (concept.requires_two_players() && game.player_count() != 2)
                    || (concept.requires_rule() && missing_rule);
                for (s, &source) in ParameterSource::ALL.iter().enumerate() {
                    let cell = &mut counts[run][c][s];
                    if unsupported {
                        cell.2 += 1;
                        continue;
                    }
                    let features =
                        record.features.with_model(concept.estimation_model().tag());
                    let param = match source {
                        ParameterSource::PredictedWeighted => {
                            let w = trees[0]
                                .as_ref()
                                .map_or(BASELINE_WEIGHT, |t| t.predict(&features))
                                .clamp(0.0, 1.0);
                            AggregationParam::Weighted(WeightVector::pair(w)?)
                        }
                        ParameterSource::PredictedSatisficing => {
                            let gamma = trees[1]
                                .as_ref()
                                .map_or(0.0, |t| t.predict(&features))
                                .clamp(-1.0, 1.0);
                            AggregationParam::Satisficing(AspirationLevel::new(gamma)?)
                        }
                        ParameterSource::Baseline => {
                            AggregationParam::Weighted(WeightVector::pair(BASELINE_WEIGHT)?)
                        }
                    };
                    let params = vec![param; game.player_count()];
                    let solved =
                        concept.reasoning(record.focal_player).solve_profile(game, &params)?;
                    cell.1 += 1;
                    if let Some(profile) = solved {
                        if profile.action(record.focal_player) == record.observed_action() {
                            cell.0 += 1;
                        }
                    }
                }
            }
        }
    }

    let mut rows = Vec::with_capacity(config.concepts.len() * 3 * config.runs);
    let mut summary = Vec::with_capacity(config.concepts.len() * 3);
    for (c, &concept) in config.concepts.iter().enumerate() {
        for (s, &source) in ParameterSource::ALL.iter().enumerate() {
            let mut accuracies = Vec::with_capacity(config.runs);
            for run in 0..config.runs {
                let (matched, evaluated, skipped) = counts[run][c][s];
                let accuracy =
                    if evaluated == 0 { 0.0 } else { matched as f64 / evaluated as f64 };
                accuracies.push(accuracy);
                rows.push(AccuracyRow { concept, source, run, accuracy, evaluated, skipped });
            }
            let mean = accuracies.iter().sum::<f64>() / accuracies.len() as f64;
            let sd = if accuracies.len() < 2 {
                0.0
            } else {
                let var = accuracies.iter().map(|a| (a - mean).powi(2)).sum::<f64>()
                    / (accuracies.len() - 1) as f64;
                var.sqrt()
            };
            summary.push(SummaryStat { concept, source, mean, sd });
        }
    }

    Ok(ExperimentReport {
        runs: config.runs,
        split: config.split,
        seed: config.seed,
        rows,
        summary,
    })
}

fn aggregation_slot(aggregation: Aggregation) -> usize {
    match aggregation {
        Aggregation::Weighted => 0,
        Aggregation::Satisficing => 1,
    }
}

/// `result[agg][record][model]`: representative rationalisable parameter, or
/// `None` when the estimated set is empty.
fn estimate_representatives(
    records: &[ObservationRecord],
) -> Result<[Vec<[Option<f64>; 3]>; 2]> {
    let mut out = [Vec::with_capacity(records.len()), Vec::with_capacity(records.len())];
    for record in records {
        for aggregation in [Aggregation::Weighted, Aggregation::Satisficing] {
            let mut per_model = [None; 3];
            for (slot, model) in EstimableModel::ALL.into_iter().enumerate() {
                let set = estimate_record(record, model, aggregation)?;
                per_model[slot] = set.representative();
            }
            out[aggregation_slot(aggregation)].push(per_model);
        }
    }
    Ok(out)
}

/// Splits record indices into (train, test), stratified by scenario so every
/// scenario with at least two records appears on both sides. Groups with a
/// single record go to the training set.
pub(crate) fn stratified_split<R: Rng>(
    records: &[ObservationRecord],
    split: f64,
    rng: &mut R,
) -> (Vec<usize>, Vec<usize>) {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (index, record) in records.iter().enumerate() {
        groups.entry(record.features.scenario).or_default().push(index);
    }
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (_, mut indices) in groups {
        indices.shuffle(rng);
        let n = indices.len();
        let n_train = if n == 1 {
            1
        } else {
            ((split * n as f64).round() as usize).clamp(1, n - 1)
        };
        train.extend_from_slice(&indices[..n_train]);
        test.extend_from_slice(&indices[n_train..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}
