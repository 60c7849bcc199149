//! Solution concepts over scalarized games.
//!
//! All concepts operate on pure strategies. Wherever a single action or
//! profile must be chosen from a tied set, the lowest action index (or the
//! lexicographically smallest profile) wins, so every solver is
//! deterministic.

use std::fmt;
use std::str::FromStr;

use crate::game::{AggregationParam, MultiObjectiveGame, ScalarGame, StrategyProfile};
use crate::{Error, Result};

/// Envelope used by non-strategic agents to evaluate their own actions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonStrategicMode {
    /// Judge an action by the best outcome any opponent assignment allows.
    Maxmax,
    /// Judge an action by the worst outcome any opponent assignment allows.
    Maxmin,
}

impl NonStrategicMode {
    pub fn tag(self) -> &'static str {
        match self {
            NonStrategicMode::Maxmax => "maxmax",
            NonStrategicMode::Maxmin => "maxmin",
        }
    }
}

impl fmt::Display for NonStrategicMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Level-0 behaviour anchoring a level-k reasoning chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum L0Mode {
    Maxmax,
    Maxmin,
    /// Play the game's designated rule-following action.
    Rule,
}

/// The reasoning models whose aggregation parameters can be estimated from a
/// single observed action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EstimableModel {
    Nash,
    Maxmax,
    Maxmin,
}

impl EstimableModel {
    pub const ALL: [EstimableModel; 3] =
        [EstimableModel::Nash, EstimableModel::Maxmax, EstimableModel::Maxmin];

    pub fn tag(self) -> &'static str {
        match self {
            EstimableModel::Nash => "nash",
            EstimableModel::Maxmax => "maxmax",
            EstimableModel::Maxmin => "maxmin",
        }
    }

    pub fn to_reasoning(self) -> ReasoningModel {
        match self {
            EstimableModel::Nash => ReasoningModel::Nash,
            EstimableModel::Maxmax => ReasoningModel::LevelK { k: 0, l0: L0Mode::Maxmax },
            EstimableModel::Maxmin => ReasoningModel::LevelK { k: 0, l0: L0Mode::Maxmin },
        }
    }
}

impl fmt::Display for EstimableModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for EstimableModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nash" => Ok(EstimableModel::Nash),
            "maxmax" => Ok(EstimableModel::Maxmax),
            "maxmin" => Ok(EstimableModel::Maxmin),
            other => Err(Error::InvalidArgument(format!(
                "unknown model '{other}' (expected 'nash', 'maxmax', or 'maxmin')"
            ))),
        }
    }
}

/// A reasoning model that maps a game (plus aggregation parameters) to a
/// predicted strategy profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReasoningModel {
    /// Welfare-maximizing pure Nash equilibrium.
    Nash,
    /// Level-k iterated best response anchored at `l0`; `k` is at most 2.
    LevelK { k: u8, l0: L0Mode },
    /// Strong Stackelberg equilibrium with the given leader (2-player only).
    Stackelberg { leader: usize },
    /// Every player plays their rule-following action.
    Rule,
    /// Level-1 best response to rule-following opponents.
    LkRule,
}

impl ReasoningModel {
    /// Predicts a profile, or `None` when the concept has no solution for
    /// this game (only possible for `Nash`, when no pure equilibrium exists).
    pub fn solve_profile(
        &self,
        game: &MultiObjectiveGame,
        params: &[AggregationParam],
    ) -> Result<Option<StrategyProfile>> {
        match *self {
            ReasoningModel::Nash => {
                let scalar = ScalarGame::from_params(game, params)?;
                let equilibria = solve_pure_nash(&scalar);
                if equilibria.is_empty() {
                    Ok(None)
                } else {
                    select_welfare_max(&scalar, &equilibria).map(Some)
                }
            }
            ReasoningModel::LevelK { k, l0 } => solve_level_k(game, params, k, l0).map(Some),
            ReasoningModel::Stackelberg { leader } => {
                let scalar = ScalarGame::from_params(game, params)?;
                solve_stackelberg(&scalar, leader).map(Some)
            }
            ReasoningModel::Rule => solve_rule_based(game).map(Some),
            ReasoningModel::LkRule => solve_level_k(game, params, 1, L0Mode::Rule).map(Some),
        }
    }
}

/// A set of strategy profiles in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolutionSet {
    profiles: Vec<StrategyProfile>,
}

impl SolutionSet {
    pub fn new(mut profiles: Vec<StrategyProfile>) -> Self {
        profiles.sort();
        profiles.dedup();
        Self { profiles }
    }

    pub fn profiles(&self) -> &[StrategyProfile] {
        &self.profiles
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn contains(&self, profile: &StrategyProfile) -> bool {
        self.profiles.binary_search(profile).is_ok()
    }
}

/// All of `player`'s utility-maximizing replies to the others' fixed actions,
/// in ascending action order (ties are kept, not broken).
pub fn best_response(game: &ScalarGame, player: usize, others: &StrategyProfile) -> Vec<usize> {
    let mut best = f64::NEG_INFINITY;
    let mut actions = Vec::new();
    for a in 0..game.action_count(player) {
        let u = game.utility(player, &others.with_action(player, a));
        if u > best {
            best = u;
            actions.clear();
            actions.push(a);
        } else if u == best {
            actions.push(a);
        }
    }
    actions
}

/// Enumerates every pure Nash equilibrium.
pub fn solve_pure_nash(game: &ScalarGame) -> SolutionSet {
    let mut profiles = Vec::new();
    'profiles: for profile in game.space().profiles() {
        for player in 0..game.player_count() {
            let u = game.utility(player, &profile);
            for a in 0..game.action_count(player) {
                if game.utility(player, &profile.with_action(player, a)) > u {
                    continue 'profiles;
                }
            }
        }
        profiles.push(profile);
    }
    SolutionSet { profiles }
}

/// Picks the candidate with the highest utilitarian welfare (the sum of all
/// players' utilities); ties go to the lexicographically smallest profile.
pub fn select_welfare_max(game: &ScalarGame, candidates: &SolutionSet) -> Result<StrategyProfile> {
    let mut best: Option<(f64, &StrategyProfile)> = None;
    for profile in candidates.profiles() {
        let welfare: f64 = (0..game.player_count())
            .map(|player| game.utility(player, profile))
            .sum();
        match best {
            Some((w, _)) if welfare <= w => {}
            _ => best = Some((welfare, profile)),
        }
    }
    best.map(|(_, profile)| profile.clone())
        .ok_or_else(|| Error::NoSolution("welfare selection over an empty candidate set".into()))
}

/// All of `player`'s actions maximizing the max (or min) envelope over every
/// opponent assignment, in ascending action order.
pub fn solve_nonstrategic(game: &ScalarGame, player: usize, mode: NonStrategicMode) -> Vec<usize> {
    let mut best = f64::NEG_INFINITY;
    let mut actions = Vec::new();
    for a in 0..game.action_count(player) {
        let envelope = action_envelope(game, player, a, mode);
        if envelope > best {
            best = envelope;
            actions.clear();
            actions.push(a);
        } else if envelope == best {
            actions.push(a);
        }
    }
    actions
}

/// The best (maxmax) or worst (maxmin) utility `player` can realise with
/// action `a` over all opponent assignments.
pub fn action_envelope(game: &ScalarGame, player: usize, a: usize, mode: NonStrategicMode) -> f64 {
    let mut envelope = match mode {
        NonStrategicMode::Maxmax => f64::NEG_INFINITY,
        NonStrategicMode::Maxmin => f64::INFINITY,
    };
    for others in game.space().opponent_assignments(player) {
        let u = game.utility(player, &others.with_action(player, a));
        envelope = match mode {
            NonStrategicMode::Maxmax => envelope.max(u),
            NonStrategicMode::Maxmin => envelope.min(u),
        };
    }
    envelope
}

/// Level-k iterated best response. Level 0 plays `l0`; level j > 0 best
/// responds to everyone playing their level j-1 action. Ties take the lowest
/// action index at every level. Supports k up to 2.
pub fn solve_level_k(
    game: &MultiObjectiveGame,
    params: &[AggregationParam],
    k: u8,
    l0: L0Mode,
) -> Result<StrategyProfile> {
    if k > 2 {
        return Err(Error::InvalidArgument(format!(
            "level-k reasoning supports k in 0..=2 (got {k})"
        )));
    }
    let scalar = ScalarGame::from_params(game, params)?;
    let mut current = Vec::with_capacity(game.player_count());
    for player in 0..game.player_count() {
        let action = match l0 {
            L0Mode::Rule => game.rule_action(player).ok_or_else(|| {
                Error::InvalidConfiguration(format!(
                    "player {player} has no rule-following action"
                ))
            })?,
            L0Mode::Maxmax => solve_nonstrategic(&scalar, player, NonStrategicMode::Maxmax)[0],
            L0Mode::Maxmin => solve_nonstrategic(&scalar, player, NonStrategicMode::Maxmin)[0],
        };
        current.push(action);
    }
    for _ in 0..k {
        let previous = StrategyProfile::new(current.clone());
        current = (0..game.player_count())
            .map(|player| best_response(&scalar, player, &previous)[0])
            .collect();
    }
    Ok(StrategyProfile::new(current))
}

/// Strong Stackelberg equilibrium of a 2-player game: the leader commits to
/// the action whose follower best response (follower indifference resolved in
/// the leader's favour, then lowest index) maximizes the leader's utility.
pub fn solve_stackelberg(game: &ScalarGame, leader: usize) -> Result<StrategyProfile> {
    if game.player_count() != 2 {
        return Err(Error::UnsupportedConfiguration(format!(
            "Stackelberg solving needs exactly 2 players, game has {}",
            game.player_count()
        )));
    }
    if leader > 1 {
        return Err(Error::InvalidArgument(format!(
            "leader index {leader} out of range for a 2-player game"
        )));
    }
    let follower = 1 - leader;
    let mut best: Option<(f64, StrategyProfile)> = None;
    for leader_action in 0..game.action_count(leader) {
        let committed = StrategyProfile::new(vec![0, 0]).with_action(leader, leader_action);
        let replies = best_response(game, follower, &committed);
        let mut chosen = committed.with_action(follower, replies[0]);
        let mut leader_utility = game.utility(leader, &chosen);
        for &reply in &replies[1..] {
            let candidate = committed.with_action(follower, reply);
            let u = game.utility(leader, &candidate);
            if u > leader_utility {
                chosen = candidate;
                leader_utility = u;
            }
        }
        match best {
            Some((u, _)) if leader_utility <= u => {}
            _ => best = Some((leader_utility, chosen)),
        }
    }
    Ok(best.expect("every player has at least one action").1)
}

/// The profile where every player follows their designated rule action.
pub fn solve_rule_based(game: &MultiObjectiveGame) -> Result<StrategyProfile> {
    let actions = (0..game.player_count())
        .map(|player| {
            game.rule_action(player).ok_or_else(|| {
                Error::InvalidConfiguration(format!(
                    "player {player} has no rule-following action"
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StrategyProfile::new(actions))
}
