//! Finite multi-objective normal-form games and their scalarizations.
//!
//! A game assigns every player, at every joint action profile, one utility per
//! objective, each in `[-1, 1]`. Scalarization collapses the objective vector
//! to a single utility, either by a convex weighting or by satisficing on a
//! safety aspiration; everything downstream (solution concepts, estimation)
//! operates on the scalarized game.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Inclusive bounds for every utility value.
pub const UTILITY_MIN: f64 = -1.0;
pub const UTILITY_MAX: f64 = 1.0;

/// Objective index conventions: safety first, progress second.
pub const SAFETY: usize = 0;
pub const PROGRESS: usize = 1;

/// Tolerance for the weight-sum constraint of [`WeightVector`].
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// One utility per objective for a single cell of a payoff tensor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One action index per player, identifying a cell of the payoff tensor.
///
/// Profiles order lexicographically (derived `Ord`), which is the tie-breaking
/// order used whenever a single profile must be chosen from a set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StrategyProfile(Vec<usize>);

impl StrategyProfile {
    pub fn new(actions: Vec<usize>) -> Self {
        Self(actions)
    }

    pub fn actions(&self) -> &[usize] {
        &self.0
    }

    pub fn action(&self, player: usize) -> usize {
        self.0[player]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Copy of the profile with `player`'s action replaced.
    pub fn with_action(&self, player: usize, action: usize) -> StrategyProfile {
        let mut actions = self.0.clone();
        actions[player] = action;
        Self(actions)
    }
}

impl From<Vec<usize>> for StrategyProfile {
    fn from(actions: Vec<usize>) -> Self {
        Self(actions)
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Enumerates the joint action space for fixed per-player action counts.
///
/// Profiles are ranked row-major with player 0 varying slowest, so rank order
/// coincides with lexicographic profile order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileSpace {
    counts: Vec<usize>,
}

impl ProfileSpace {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidArgument("a game needs at least one player".into()));
        }
        if counts.iter().any(|&c| c == 0) {
            return Err(Error::InvalidArgument(
                "every player needs at least one action".into(),
            ));
        }
        Ok(Self { counts })
    }

    pub fn player_count(&self) -> usize {
        self.counts.len()
    }

    pub fn action_count(&self, player: usize) -> usize {
        self.counts[player]
    }

    pub fn action_counts(&self) -> &[usize] {
        &self.counts
    }

    /// Number of joint profiles (the product of all action counts).
    pub fn size(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn rank(&self, profile: &StrategyProfile) -> usize {
        debug_assert_eq!(profile.len(), self.counts.len());
        let mut rank = 0;
        for (p, &a) in profile.actions().iter().enumerate() {
            debug_assert!(a < self.counts[p]);
            rank = rank * self.counts[p] + a;
        }
        rank
    }

    pub fn profile_at(&self, mut rank: usize) -> StrategyProfile {
        let mut actions = vec![0; self.counts.len()];
        for p in (0..self.counts.len()).rev() {
            actions[p] = rank % self.counts[p];
            rank /= self.counts[p];
        }
        StrategyProfile::new(actions)
    }

    pub fn profiles(&self) -> impl Iterator<Item = StrategyProfile> + '_ {
        (0..self.size()).map(|r| self.profile_at(r))
    }

    /// All joint assignments of the *other* players' actions, returned as
    /// full-length profiles with `player`'s slot fixed to 0. Callers override
    /// that slot via [`StrategyProfile::with_action`]. A single-player game
    /// yields exactly one (empty) opponent assignment.
    pub fn opponent_assignments(&self, player: usize) -> impl Iterator<Item = StrategyProfile> + '_ {
        let size: usize = self
            .counts
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != player)
            .map(|(_, &c)| c)
            .product();
        (0..size).map(move |mut rank| {
            let mut actions = vec![0; self.counts.len()];
            for p in (0..self.counts.len()).rev() {
                if p == player {
                    continue;
                }
                actions[p] = rank % self.counts[p];
                rank /= self.counts[p];
            }
            StrategyProfile::new(actions)
        })
    }
}

/// Convex objective weights: non-negative, summing to 1 within
/// [`WEIGHT_SUM_TOLERANCE`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidArgument("weight vector must not be empty".into()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidArgument(
                "weights must be finite and non-negative".into(),
            ));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "weights must sum to 1 (got {sum})"
            )));
        }
        Ok(Self(weights))
    }

    /// Two-objective weights `[w, 1 - w]` from the first objective's weight.
    pub fn pair(first: f64) -> Result<Self> {
        if !first.is_finite() || !(0.0..=1.0).contains(&first) {
            return Err(Error::InvalidArgument(format!(
                "pair weight must lie in [0, 1] (got {first})"
            )));
        }
        Ok(Self(vec![first, 1.0 - first]))
    }

    pub fn uniform(objectives: usize) -> Result<Self> {
        if objectives == 0 {
            return Err(Error::InvalidArgument("weight vector must not be empty".into()));
        }
        Ok(Self(vec![1.0 / objectives as f64; objectives]))
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A satisficing threshold on the safety objective, in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AspirationLevel(f64);

impl AspirationLevel {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || !(UTILITY_MIN..=UTILITY_MAX).contains(&value) {
            return Err(Error::InvalidArgument(format!(
                "aspiration level must lie in [-1, 1] (got {value})"
            )));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Which scalarization family a parameter belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregation {
    Weighted,
    Satisficing,
}

impl Aggregation {
    pub const ALL: [Aggregation; 2] = [Aggregation::Weighted, Aggregation::Satisficing];

    pub fn tag(self) -> &'static str {
        match self {
            Aggregation::Weighted => "weighted",
            Aggregation::Satisficing => "satisficing",
        }
    }
}

impl fmt::Display for Aggregation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Aggregation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weighted" => Ok(Aggregation::Weighted),
            "satisficing" => Ok(Aggregation::Satisficing),
            other => Err(Error::InvalidArgument(format!(
                "unknown aggregation '{other}' (expected 'weighted' or 'satisficing')"
            ))),
        }
    }
}

/// A concrete scalarization parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum AggregationParam {
    Weighted(WeightVector),
    Satisficing(AspirationLevel),
}

impl AggregationParam {
    pub fn aggregation(&self) -> Aggregation {
        match self {
            AggregationParam::Weighted(_) => Aggregation::Weighted,
            AggregationParam::Satisficing(_) => Aggregation::Satisficing,
        }
    }
}

/// The satisficing scalarization of a single objective vector: the safety
/// utility when it does not exceed the aspiration, the progress utility
/// otherwise.
pub(crate) fn satisficing_value(u: &ObjectiveVector, gamma: f64) -> f64 {
    let safety = u.values()[SAFETY];
    if safety <= gamma {
        safety
    } else {
        u.values()[PROGRESS]
    }
}

/// A structural defect found by [`MultiObjectiveGame::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// No payoff was supplied for this player/profile cell.
    MissingPayoff { player: usize, profile: StrategyProfile },
    /// A utility falls outside `[-1, 1]` or is not finite.
    ValueOutOfRange {
        player: usize,
        profile: StrategyProfile,
        objective: usize,
        value: f64,
    },
    /// A cell's vector length disagrees with the game's objective count.
    ObjectiveCountMismatch {
        player: usize,
        profile: StrategyProfile,
        expected: usize,
        actual: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingPayoff { player, profile } => write!(
                f,
                "payoff tensor not total: player {player} has no payoff at profile {profile}"
            ),
            Violation::ValueOutOfRange { player, profile, objective, value } => write!(
                f,
                "value out of [-1, 1]: player {player}, profile {profile}, objective {objective} is {value}"
            ),
            Violation::ObjectiveCountMismatch { player, profile, expected, actual } => write!(
                f,
                "objective count mismatch: player {player}, profile {profile} has {actual} values, expected {expected}"
            ),
        }
    }
}

/// A finite multi-objective normal-form game.
///
/// Payoffs are stored per player as a dense vector indexed by profile rank
/// (see [`ProfileSpace`]); cells stay unset until provided, so validation can
/// report exactly which cells are missing.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiObjectiveGame {
    objective_names: Vec<String>,
    action_labels: Vec<Vec<String>>,
    rule_actions: Vec<Option<usize>>,
    space: ProfileSpace,
    payoffs: Vec<Vec<Option<ObjectiveVector>>>,
}

impl MultiObjectiveGame {
    /// Creates a game with every payoff cell unset.
    pub fn new(
        objective_names: Vec<String>,
        action_labels: Vec<Vec<String>>,
        rule_actions: Vec<Option<usize>>,
    ) -> Result<Self> {
        if objective_names.is_empty() {
            return Err(Error::InvalidArgument("a game needs at least one objective".into()));
        }
        let counts: Vec<usize> = action_labels.iter().map(Vec::len).collect();
        let space = ProfileSpace::new(counts)?;
        if rule_actions.len() != space.player_count() {
            return Err(Error::InvalidArgument(format!(
                "expected {} rule-action entries, got {}",
                space.player_count(),
                rule_actions.len()
            )));
        }
        for (p, rule) in rule_actions.iter().enumerate() {
            if let Some(a) = rule {
                if *a >= space.action_count(p) {
                    return Err(Error::InvalidArgument(format!(
                        "rule action {a} out of range for player {p}"
                    )));
                }
            }
        }
        let payoffs = (0..space.player_count())
            .map(|_| vec![None; space.size()])
            .collect();
        Ok(Self { objective_names, action_labels, rule_actions, space, payoffs })
    }

    /// Creates a fully populated game, asking `payoff` for every cell.
    pub fn from_fn(
        objective_names: Vec<String>,
        action_labels: Vec<Vec<String>>,
        rule_actions: Vec<Option<usize>>,
        mut payoff: impl FnMut(usize, &StrategyProfile) -> Vec<f64>,
    ) -> Result<Self> {
        let mut game = Self::new(objective_names, action_labels, rule_actions)?;
        for player in 0..game.player_count() {
            for profile in game.space.profiles().collect::<Vec<_>>() {
                let values = payoff(player, &profile);
                game.set_payoff(player, &profile, values)?;
            }
        }
        Ok(game)
    }

    pub fn set_payoff(
        &mut self,
        player: usize,
        profile: &StrategyProfile,
        values: Vec<f64>,
    ) -> Result<()> {
        self.check_player(player)?;
        self.check_profile(profile)?;
        let rank = self.space.rank(profile);
        self.payoffs[player][rank] = Some(ObjectiveVector::new(values));
        Ok(())
    }

    pub fn payoff(&self, player: usize, profile: &StrategyProfile) -> Option<&ObjectiveVector> {
        self.payoffs[player][self.space.rank(profile)].as_ref()
    }

    pub fn payoff_at_rank(&self, player: usize, rank: usize) -> Option<&ObjectiveVector> {
        self.payoffs[player][rank].as_ref()
    }

    /// The payoff at a cell, as an error if absent or malformed.
    pub(crate) fn payoff_required(
        &self,
        player: usize,
        profile: &StrategyProfile,
    ) -> Result<&ObjectiveVector> {
        let u = self.payoff(player, profile).ok_or_else(|| {
            Error::InvalidConfiguration(format!(
                "payoff tensor not total: player {player} has no payoff at profile {profile}"
            ))
        })?;
        if u.len() != self.objective_count() {
            return Err(Error::InvalidConfiguration(format!(
                "objective count mismatch at player {player}, profile {profile}"
            )));
        }
        Ok(u)
    }

    pub fn player_count(&self) -> usize {
        self.space.player_count()
    }

    pub fn objective_count(&self) -> usize {
        self.objective_names.len()
    }

    pub fn objective_names(&self) -> &[String] {
        &self.objective_names
    }

    pub fn action_count(&self, player: usize) -> usize {
        self.space.action_count(player)
    }

    pub fn action_labels(&self, player: usize) -> &[String] {
        &self.action_labels[player]
    }

    pub fn rule_action(&self, player: usize) -> Option<usize> {
        self.rule_actions[player]
    }

    pub fn rule_actions(&self) -> &[Option<usize>] {
        &self.rule_actions
    }

    pub fn space(&self) -> &ProfileSpace {
        &self.space
    }

    pub(crate) fn check_player(&self, player: usize) -> Result<()> {
        if player >= self.player_count() {
            return Err(Error::InvalidArgument(format!(
                "player index {player} out of range (game has {} players)",
                self.player_count()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_profile(&self, profile: &StrategyProfile) -> Result<()> {
        if profile.len() != self.player_count() {
            return Err(Error::InvalidArgument(format!(
                "profile has {} entries, game has {} players",
                profile.len(),
                self.player_count()
            )));
        }
        for (p, &a) in profile.actions().iter().enumerate() {
            if a >= self.action_count(p) {
                return Err(Error::InvalidArgument(format!(
                    "action {a} out of range for player {p}"
                )));
            }
        }
        Ok(())
    }

    /// Checks totality, vector lengths, and the `[-1, 1]` utility bounds.
    /// Returns every violation rather than stopping at the first.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        for player in 0..self.player_count() {
            for rank in 0..self.space.size() {
                let profile = self.space.profile_at(rank);
                match &self.payoffs[player][rank] {
                    None => violations.push(Violation::MissingPayoff { player, profile }),
                    Some(u) => {
                        if u.len() != self.objective_count() {
                            violations.push(Violation::ObjectiveCountMismatch {
                                player,
                                profile: profile.clone(),
                                expected: self.objective_count(),
                                actual: u.len(),
                            });
                        }
                        for (objective, &value) in u.values().iter().enumerate() {
                            if !value.is_finite() || !(UTILITY_MIN..=UTILITY_MAX).contains(&value) {
                                violations.push(Violation::ValueOutOfRange {
                                    player,
                                    profile: profile.clone(),
                                    objective,
                                    value,
                                });
                            }
                        }
                    }
                }
            }
        }
        violations
    }

    /// Weighted scalarization `w · u` of `player`'s payoffs at every profile,
    /// indexed by profile rank.
    pub fn scalarize_weighted(&self, player: usize, w: &WeightVector) -> Result<Vec<f64>> {
        self.check_player(player)?;
        if w.len() != self.objective_count() {
            return Err(Error::InvalidArgument(format!(
                "weight vector has {} entries, game has {} objectives",
                w.len(),
                self.objective_count()
            )));
        }
        let mut out = Vec::with_capacity(self.space.size());
        for rank in 0..self.space.size() {
            let profile = self.space.profile_at(rank);
            let u = self.payoff_required(player, &profile)?;
            let value = w
                .weights()
                .iter()
                .zip(u.values())
                .map(|(wi, ui)| wi * ui)
                .sum();
            out.push(value);
        }
        Ok(out)
    }

    /// Satisficing scalarization of `player`'s payoffs at every profile,
    /// indexed by profile rank. Requires exactly two objectives, ordered
    /// safety first.
    pub fn scalarize_satisficing(&self, player: usize, gamma: AspirationLevel) -> Result<Vec<f64>> {
        self.check_player(player)?;
        if self.objective_count() != 2 {
            return Err(Error::UnsupportedConfiguration(format!(
                "satisficing scalarization needs exactly 2 objectives, game has {}",
                self.objective_count()
            )));
        }
        let mut out = Vec::with_capacity(self.space.size());
        for rank in 0..self.space.size() {
            let profile = self.space.profile_at(rank);
            let u = self.payoff_required(player, &profile)?;
            out.push(satisficing_value(u, gamma.value()));
        }
        Ok(out)
    }

    /// Scalarizes under either aggregation family.
    pub fn scalarize(&self, player: usize, param: &AggregationParam) -> Result<Vec<f64>> {
        match param {
            AggregationParam::Weighted(w) => self.scalarize_weighted(player, w),
            AggregationParam::Satisficing(g) => self.scalarize_satisficing(player, *g),
        }
    }
}

/// A single-objective game obtained by scalarizing a multi-objective one (or
/// constructed directly from scalar utilities).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarGame {
    space: ProfileSpace,
    rule_actions: Vec<Option<usize>>,
    utilities: Vec<Vec<f64>>,
}

impl ScalarGame {
    /// Builds a scalar game from per-player utility vectors indexed by
    /// profile rank.
    pub fn new(action_counts: Vec<usize>, utilities: Vec<Vec<f64>>) -> Result<Self> {
        let space = ProfileSpace::new(action_counts)?;
        if utilities.len() != space.player_count() {
            return Err(Error::InvalidArgument(format!(
                "expected utilities for {} players, got {}",
                space.player_count(),
                utilities.len()
            )));
        }
        for (p, u) in utilities.iter().enumerate() {
            if u.len() != space.size() {
                return Err(Error::InvalidArgument(format!(
                    "player {p} has {} utilities, expected {}",
                    u.len(),
                    space.size()
                )));
            }
        }
        let rule_actions = vec![None; space.player_count()];
        Ok(Self { space, rule_actions, utilities })
    }

    pub fn with_rule_actions(mut self, rule_actions: Vec<Option<usize>>) -> Result<Self> {
        if rule_actions.len() != self.space.player_count() {
            return Err(Error::InvalidArgument(format!(
                "expected {} rule-action entries, got {}",
                self.space.player_count(),
                rule_actions.len()
            )));
        }
        for (p, rule) in rule_actions.iter().enumerate() {
            if let Some(a) = rule {
                if *a >= self.space.action_count(p) {
                    return Err(Error::InvalidArgument(format!(
                        "rule action {a} out of range for player {p}"
                    )));
                }
            }
        }
        self.rule_actions = rule_actions;
        Ok(self)
    }

    /// Scalarizes every player with their own aggregation parameter.
    pub fn from_params(game: &MultiObjectiveGame, params: &[AggregationParam]) -> Result<Self> {
        if params.len() != game.player_count() {
            return Err(Error::InvalidArgument(format!(
                "expected {} aggregation parameters, got {}",
                game.player_count(),
                params.len()
            )));
        }
        let utilities = params
            .iter()
            .enumerate()
            .map(|(player, param)| game.scalarize(player, param))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            space: game.space().clone(),
            rule_actions: game.rule_actions().to_vec(),
            utilities,
        })
    }

    /// Scalarizes every player with one shared aggregation parameter.
    pub fn from_shared_param(game: &MultiObjectiveGame, param: &AggregationParam) -> Result<Self> {
        let params = vec![param.clone(); game.player_count()];
        Self::from_params(game, &params)
    }

    pub fn space(&self) -> &ProfileSpace {
        &self.space
    }

    pub fn player_count(&self) -> usize {
        self.space.player_count()
    }

    pub fn action_count(&self, player: usize) -> usize {
        self.space.action_count(player)
    }

    pub fn rule_action(&self, player: usize) -> Option<usize> {
        self.rule_actions[player]
    }

    pub fn utility(&self, player: usize, profile: &StrategyProfile) -> f64 {
        self.utilities[player][self.space.rank(profile)]
    }

    pub fn utility_at_rank(&self, player: usize, rank: usize) -> f64 {
        self.utilities[player][rank]
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The two-vehicle turning example used throughout the crate's tests:
    /// row player chooses Wait/Turn, column player chooses Uphold/Deviate.
    pub(crate) fn turning_game() -> MultiObjectiveGame {
        let cells = [
            // (row, col) -> (row payoffs, col payoffs)
            [[0.5, 0.1], [0.3, 0.4]],   // (Wait, Uphold)
            [[0.8, 0.1], [0.6, -0.2]],  // (Wait, Deviate)
            [[-0.9, 1.0], [-0.7, 0.6]], // (Turn, Uphold)
            [[0.2, -0.5], [0.0, 0.3]],  // (Turn, Deviate)
        ];
        MultiObjectiveGame::from_fn(
            vec!["safety".into(), "progress".into()],
            vec![
                vec!["wait".into(), "turn".into()],
                vec!["uphold".into(), "deviate".into()],
            ],
            vec![Some(0), Some(0)],
            |player, profile| {
                let rank = profile.action(0) * 2 + profile.action(1);
                cells[rank][player].to_vec()
            },
        )
        .unwrap()
    }

    #[test]
    fn profile_space_rank_roundtrip() {
        let space = ProfileSpace::new(vec![2, 3, 2]).unwrap();
        assert_eq!(space.size(), 12);
        for rank in 0..space.size() {
            let profile = space.profile_at(rank);
            assert_eq!(space.rank(&profile), rank);
        }
        // Player 0 varies slowest.
        assert_eq!(space.profile_at(0).actions(), &[0, 0, 0]);
        assert_eq!(space.profile_at(1).actions(), &[0, 0, 1]);
        assert_eq!(space.profile_at(11).actions(), &[1, 2, 1]);
    }

    #[test]
    fn opponent_assignments_cover_reduced_space() {
        let space = ProfileSpace::new(vec![2, 3, 2]).unwrap();
        let assignments: Vec<_> = space.opponent_assignments(1).collect();
        assert_eq!(assignments.len(), 4);
        for a in &assignments {
            assert_eq!(a.action(1), 0);
        }

        // Single player: exactly one (empty) opponent assignment.
        let solo = ProfileSpace::new(vec![3]).unwrap();
        assert_eq!(solo.opponent_assignments(0).count(), 1);
    }

    #[test]
    fn weight_vector_constraints() {
        assert!(WeightVector::new(vec![0.5, 0.5]).is_ok());
        assert!(WeightVector::new(vec![0.3, 0.3, 0.4]).is_ok());
        assert!(WeightVector::new(vec![0.6, 0.6]).is_err());
        assert!(WeightVector::new(vec![-0.1, 1.1]).is_err());
        assert!(WeightVector::new(vec![]).is_err());
        assert_eq!(WeightVector::pair(0.3).unwrap().weights(), &[0.3, 0.7]);
        assert!(WeightVector::pair(1.2).is_err());
        assert_eq!(WeightVector::uniform(2).unwrap().weights(), &[0.5, 0.5]);
    }

    #[test]
    fn aspiration_level_bounds() {
        assert!(AspirationLevel::new(0.0).is_ok());
        assert!(AspirationLevel::new(-1.0).is_ok());
        assert!(AspirationLevel::new(1.0).is_ok());
        assert!(AspirationLevel::new(1.0001).is_err());
        assert!(AspirationLevel::new(f64::NAN).is_err());
    }

    #[test]
    fn weighted_scalarization_of_turning_game() {
        let game = turning_game();
        let w = WeightVector::new(vec![0.5, 0.5]).unwrap();
        let values = game.scalarize_weighted(0, &w).unwrap();
        // (Wait, Uphold) for the row player: 0.5*0.5 + 0.5*0.1 = 0.3
        assert!((values[0] - 0.3).abs() < 1e-12);
        // (Turn, Uphold): 0.5*-0.9 + 0.5*1.0 = 0.05
        assert!((values[2] - 0.05).abs() < 1e-12);
    }

    #[test]
    fn one_hot_weights_project_an_objective() {
        let game = turning_game();
        let safety_only = WeightVector::new(vec![1.0, 0.0]).unwrap();
        let values = game.scalarize_weighted(0, &safety_only).unwrap();
        for rank in 0..game.space().size() {
            let u = game.payoff_at_rank(0, rank).unwrap();
            assert_eq!(values[rank], u.values()[SAFETY]);
        }
    }

    #[test]
    fn weighted_indifference_at_the_breakpoint_weight() {
        // At w = (9/23, 14/23) the row player is exactly indifferent between
        // Wait and Turn against Uphold.
        let game = turning_game();
        let w = WeightVector::pair(9.0 / 23.0).unwrap();
        let values = game.scalarize_weighted(0, &w).unwrap();
        assert!((values[0] - values[2]).abs() < 1e-12);
        assert!((values[0] - 0.2565217391304348).abs() < 1e-12);
    }

    #[test]
    fn satisficing_scalarization_branches() {
        let game = turning_game();
        // gamma = 0: safety 0.5 exceeds it, so (Wait, Uphold) scores progress.
        let values = game.scalarize_satisficing(0, AspirationLevel::new(0.0).unwrap()).unwrap();
        assert_eq!(values[0], 0.1);
        // (Turn, Uphold): safety -0.9 <= 0, so it scores safety.
        assert_eq!(values[2], -0.9);

        // gamma = 0.5 is inclusive: safety 0.5 <= 0.5 scores safety.
        let values = game.scalarize_satisficing(0, AspirationLevel::new(0.5).unwrap()).unwrap();
        assert_eq!(values[0], 0.5);

        // gamma below every safety value: all cells score progress.
        let values = game.scalarize_satisficing(0, AspirationLevel::new(-1.0).unwrap()).unwrap();
        assert_eq!(values, vec![0.1, 0.1, 1.0, -0.5]);
    }

    #[test]
    fn scalarization_rejects_mismatched_shapes() {
        let game = turning_game();
        let w3 = WeightVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        assert!(matches!(
            game.scalarize_weighted(0, &w3),
            Err(Error::InvalidArgument(_))
        ));

        let three_obj = MultiObjectiveGame::from_fn(
            vec!["safety".into(), "progress".into(), "comfort".into()],
            vec![vec!["a".into()], vec!["b".into()]],
            vec![None, None],
            |_, _| vec![0.0, 0.0, 0.0],
        )
        .unwrap();
        assert!(matches!(
            three_obj.scalarize_satisficing(0, AspirationLevel::new(0.0).unwrap()),
            Err(Error::UnsupportedConfiguration(_))
        ));
    }

    #[test]
    fn validate_reports_gaps_and_ranges() {
        let game = turning_game();
        assert!(game.validate().is_empty());

        let mut partial = MultiObjectiveGame::new(
            vec!["safety".into(), "progress".into()],
            vec![vec!["a".into(), "b".into()], vec!["c".into()]],
            vec![None, None],
        )
        .unwrap();
        partial
            .set_payoff(0, &StrategyProfile::new(vec![0, 0]), vec![0.1, 1.5])
            .unwrap();
        let violations = partial.validate();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::ValueOutOfRange { value, .. } if *value == 1.5)));
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::MissingPayoff { player: 0, .. })));
        let text = violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
        assert!(text.contains("value out of [-1, 1]"));
        assert!(text.contains("payoff tensor not total"));
    }

    #[test]
    fn scalar_game_from_params_is_per_player() {
        let game = turning_game();
        let params = vec![
            AggregationParam::Weighted(WeightVector::pair(1.0).unwrap()),
            AggregationParam::Satisficing(AspirationLevel::new(0.0).unwrap()),
        ];
        let scalar = ScalarGame::from_params(&game, &params).unwrap();
        // Row player got safety projection, column player satisficing.
        assert_eq!(scalar.utility(0, &StrategyProfile::new(vec![0, 0])), 0.5);
        assert_eq!(scalar.utility(1, &StrategyProfile::new(vec![0, 0])), 0.4);
        assert_eq!(scalar.rule_action(0), Some(0));
    }
}
