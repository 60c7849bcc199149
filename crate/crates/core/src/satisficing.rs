//! Exact estimation of rationalisable safety aspiration levels.
//!
//! Under satisficing aggregation the scalarized utility of a cell changes
//! only when the aspiration γ crosses that cell's safety utility, so
//! rationalisability is constant on every cell of the partition of `[-1, 1]`
//! induced by the ordered safety values. Testing a single γ per cell
//! therefore recovers the exact rationalisable set:
//!
//! * strategic (Nash) agents condition on the observed opponents, so only
//!   the player's own column of safety values matters (partition `P_eq`,
//!   at most `|A_i| + 1` cells);
//! * non-strategic (maxmax/maxmin) agents compare envelopes over all
//!   opponent assignments, so every safety value in the player's tensor is a
//!   breakpoint (partition `P_ns`, at most `|A|^N + 1` cells).

use crate::game::{
    satisficing_value, AspirationLevel, MultiObjectiveGame, StrategyProfile, UTILITY_MAX,
    UTILITY_MIN,
};
use crate::interval::{Interval, IntervalSet};
use crate::solvers::{EstimableModel, NonStrategicMode};
use crate::{Error, Result};

/// The exact union of aspiration intervals consistent with an observation.
pub type RationalizableSet = IntervalSet;

/// An ordered partition of `[-1, 1]` into left-closed right-open cells (the
/// last cell, or a trailing singleton at 1, is closed).
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    cells: Vec<Interval>,
    breakpoints: Vec<f64>,
}

impl Partition {
    /// Partitions `[-1, 1]` at the given safety values (deduplicated; values
    /// at the domain edges add no interior boundary, except that a value of
    /// exactly 1 keeps the singleton cell `[1, 1]`, where scalarization
    /// differs from every γ < 1).
    pub fn from_breakpoints(values: &[f64]) -> Partition {
        let mut breakpoints: Vec<f64> = values.to_vec();
        breakpoints.sort_by(f64::total_cmp);
        breakpoints.dedup();

        let mut bounds = vec![UTILITY_MIN];
        bounds.extend(breakpoints.iter().copied().filter(|b| UTILITY_MIN < *b && *b < UTILITY_MAX));
        bounds.push(UTILITY_MAX);

        let mut cells: Vec<Interval> =
            bounds.windows(2).map(|pair| Interval::half_open(pair[0], pair[1])).collect();
        if breakpoints.last() == Some(&UTILITY_MAX) {
            cells.push(Interval::point(UTILITY_MAX));
        } else {
            cells.last_mut().expect("at least one cell").hi_closed = true;
        }
        Partition { cells, breakpoints }
    }

    pub fn cells(&self) -> &[Interval] {
        &self.cells
    }

    /// The deduplicated, sorted safety values the partition was built from.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

fn require_two_objectives(game: &MultiObjectiveGame) -> Result<()> {
    if game.objective_count() != 2 {
        return Err(Error::UnsupportedConfiguration(format!(
            "satisficing estimation needs exactly 2 objectives, game has {}",
            game.objective_count()
        )));
    }
    Ok(())
}

/// The strategic partition `P_eq`: breakpoints are the player's safety
/// utilities against the observed opponents (the `player` slot of
/// `observed_others` is ignored).
pub fn build_partition_eq(
    game: &MultiObjectiveGame,
    player: usize,
    observed_others: &StrategyProfile,
) -> Result<Partition> {
    game.check_player(player)?;
    game.check_profile(observed_others)?;
    require_two_objectives(game)?;
    let mut values = Vec::with_capacity(game.action_count(player));
    for a in 0..game.action_count(player) {
        let u = game.payoff_required(player, &observed_others.with_action(player, a))?;
        values.push(u.values()[0]);
    }
    Ok(Partition::from_breakpoints(&values))
}

/// The non-strategic partition `P_ns`: breakpoints are every safety utility
/// in the player's payoff tensor.
pub fn build_partition_ns(game: &MultiObjectiveGame, player: usize) -> Result<Partition> {
    game.check_player(player)?;
    require_two_objectives(game)?;
    let mut values = Vec::with_capacity(game.space().size());
    for rank in 0..game.space().size() {
        let profile = game.space().profile_at(rank);
        let u = game.payoff_required(player, &profile)?;
        values.push(u.values()[0]);
    }
    Ok(Partition::from_breakpoints(&values))
}

/// Whether γ rationalises the observation under the given model: the
/// observed action must be a best response to the observed opponents (Nash)
/// or maximize the maxmax/maxmin envelope, in the γ-scalarized game.
pub fn is_rationalisable(
    game: &MultiObjectiveGame,
    player: usize,
    observed: &StrategyProfile,
    gamma: AspirationLevel,
    model: EstimableModel,
) -> Result<bool> {
    game.check_player(player)?;
    game.check_profile(observed)?;
    require_two_objectives(game)?;
    match model {
        EstimableModel::Nash => {
            let g = gamma.value();
            let observed_value = satisficing_value(game.payoff_required(player, observed)?, g);
            for a in 0..game.action_count(player) {
                if a == observed.action(player) {
                    continue;
                }
                let alternative =
                    satisficing_value(game.payoff_required(player, &observed.with_action(player, a))?, g);
                if observed_value < alternative {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        EstimableModel::Maxmax => {
            is_rationalisable_action(game, player, observed.action(player), gamma, NonStrategicMode::Maxmax)
        }
        EstimableModel::Maxmin => {
            is_rationalisable_action(game, player, observed.action(player), gamma, NonStrategicMode::Maxmin)
        }
    }
}

/// Non-strategic rationalisability from the observed action alone.
pub fn is_rationalisable_action(
    game: &MultiObjectiveGame,
    player: usize,
    observed_action: usize,
    gamma: AspirationLevel,
    mode: NonStrategicMode,
) -> Result<bool> {
    game.check_player(player)?;
    require_two_objectives(game)?;
    if observed_action >= game.action_count(player) {
        return Err(Error::InvalidArgument(format!(
            "action {observed_action} out of range for player {player}"
        )));
    }
    let observed_env = satisficing_envelope(game, player, observed_action, gamma.value(), mode)?;
    for a in 0..game.action_count(player) {
        if a == observed_action {
            continue;
        }
        if observed_env < satisficing_envelope(game, player, a, gamma.value(), mode)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The maxmax/maxmin envelope of one action's satisficing values over all
/// opponent assignments.
fn satisficing_envelope(
    game: &MultiObjectiveGame,
    player: usize,
    action: usize,
    gamma: f64,
    mode: NonStrategicMode,
) -> Result<f64> {
    let mut envelope = match mode {
        NonStrategicMode::Maxmax => f64::NEG_INFINITY,
        NonStrategicMode::Maxmin => f64::INFINITY,
    };
    for others in game.space().opponent_assignments(player) {
        let u = game.payoff_required(player, &others.with_action(player, action))?;
        let value = satisficing_value(u, gamma);
        envelope = match mode {
            NonStrategicMode::Maxmax => envelope.max(value),
            NonStrategicMode::Maxmin => envelope.min(value),
        };
    }
    Ok(envelope)
}

/// Exact rationalisable aspiration set: builds the model's partition, tests
/// one γ per cell (the midpoint, kept inside the cell), and returns the
/// union of passing cells with adjacent cells merged.
pub fn estimate_gamma(
    game: &MultiObjectiveGame,
    player: usize,
    observed: &StrategyProfile,
    model: EstimableModel,
) -> Result<RationalizableSet> {
    game.check_player(player)?;
    game.check_profile(observed)?;
    require_two_objectives(game)?;
    let partition = match model {
        EstimableModel::Nash => build_partition_eq(game, player, observed)?,
        EstimableModel::Maxmax | EstimableModel::Maxmin => build_partition_ns(game, player)?,
    };
    let mut kept = Vec::new();
    for cell in partition.cells() {
        let gamma = AspirationLevel::new(cell.sample_point())?;
        if is_rationalisable(game, player, observed, gamma, model)? {
            kept.push(*cell);
        }
    }
    Ok(IntervalSet::from_intervals(kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::tests::turning_game;

    fn profile(actions: &[usize]) -> StrategyProfile {
        StrategyProfile::new(actions.to_vec())
    }

    #[test]
    fn partition_eq_of_turning_game() {
        // Row safety values vs Uphold: Wait -> 0.5, Turn -> -0.9.
        let game = turning_game();
        let partition = build_partition_eq(&game, 0, &profile(&[0, 0])).unwrap();
        assert_eq!(
            partition.cells(),
            &[
                Interval::half_open(-1.0, -0.9),
                Interval::half_open(-0.9, 0.5),
                Interval::closed(0.5, 1.0),
            ]
        );
        assert_eq!(partition.breakpoints(), &[-0.9, 0.5]);
    }

    #[test]
    fn partition_ns_of_turning_game() {
        // All four row safety values: {-0.9, 0.2, 0.5, 0.8}.
        let game = turning_game();
        let partition = build_partition_ns(&game, 0).unwrap();
        assert_eq!(partition.len(), 5);
        assert_eq!(partition.breakpoints(), &[-0.9, 0.2, 0.5, 0.8]);
        assert_eq!(partition.cells()[0], Interval::half_open(-1.0, -0.9));
        assert_eq!(partition.cells()[4], Interval::closed(0.8, 1.0));
    }

    #[test]
    fn partition_sizes_are_bounded() {
        let game = turning_game();
        let eq = build_partition_eq(&game, 0, &profile(&[0, 0])).unwrap();
        assert!(eq.len() <= game.action_count(0) + 1);
        let ns = build_partition_ns(&game, 0).unwrap();
        assert!(ns.len() <= game.space().size() + 1);
    }

    #[test]
    fn partition_edge_values() {
        // Duplicates collapse to one breakpoint.
        let p = Partition::from_breakpoints(&[0.3, 0.3, 0.3]);
        assert_eq!(p.cells(), &[Interval::half_open(-1.0, 0.3), Interval::closed(0.3, 1.0)]);

        // A value at -1 adds no cell: scalarization is already constant on
        // the first cell.
        let p = Partition::from_breakpoints(&[-1.0]);
        assert_eq!(p.cells(), &[Interval::closed(-1.0, 1.0)]);

        // A value at exactly 1 keeps the singleton cell, where the safety
        // branch switches on only at γ = 1.
        let p = Partition::from_breakpoints(&[1.0]);
        assert_eq!(p.cells(), &[Interval::half_open(-1.0, 1.0), Interval::point(1.0)]);

        let p = Partition::from_breakpoints(&[]);
        assert_eq!(p.cells(), &[Interval::closed(-1.0, 1.0)]);
    }

    #[test]
    fn rationalisability_at_specific_aspirations() {
        let game = turning_game();
        let observed = profile(&[0, 0]);
        // γ = 0: Wait scores 0.1 (progress), Turn scores -0.9 (safety).
        assert!(is_rationalisable(
            &game, 0, &observed, AspirationLevel::new(0.0).unwrap(), EstimableModel::Nash
        )
        .unwrap());
        // γ = -0.95: both actions score progress, and Turn's 1.0 wins.
        assert!(!is_rationalisable(
            &game, 0, &observed, AspirationLevel::new(-0.95).unwrap(), EstimableModel::Nash
        )
        .unwrap());
        // maxmax at γ = 0.3: Wait's envelope 0.1 loses to Turn's 0.2.
        assert!(!is_rationalisable(
            &game, 0, &observed, AspirationLevel::new(0.3).unwrap(), EstimableModel::Maxmax
        )
        .unwrap());
        // maxmin at γ = 0.3: Wait's 0.1 beats Turn's -0.9.
        assert!(is_rationalisable(
            &game, 0, &observed, AspirationLevel::new(0.3).unwrap(), EstimableModel::Maxmin
        )
        .unwrap());
    }

    #[test]
    fn estimated_sets_of_turning_game() {
        let game = turning_game();
        let observed = profile(&[0, 0]);

        let nash = estimate_gamma(&game, 0, &observed, EstimableModel::Nash).unwrap();
        assert_eq!(nash.intervals(), &[Interval::closed(-0.9, 1.0)]);
        assert!((nash.representative().unwrap() - 0.05).abs() < 1e-9);

        let maxmax = estimate_gamma(&game, 0, &observed, EstimableModel::Maxmax).unwrap();
        assert_eq!(
            maxmax.intervals(),
            &[Interval::half_open(-0.9, 0.2), Interval::closed(0.5, 1.0)]
        );
        assert!((maxmax.representative().unwrap() - (-0.35)).abs() < 1e-9);

        let maxmin = estimate_gamma(&game, 0, &observed, EstimableModel::Maxmin).unwrap();
        assert_eq!(maxmin.intervals(), &[Interval::closed(-1.0, 1.0)]);
    }

    #[test]
    fn estimates_are_unions_of_partition_cells() {
        let game = turning_game();
        let observed = profile(&[0, 0]);
        let partition = build_partition_ns(&game, 0).unwrap();
        let set = estimate_gamma(&game, 0, &observed, EstimableModel::Maxmax).unwrap();
        for interval in set.intervals() {
            assert!(partition.cells().iter().any(|c| c.lo == interval.lo));
            assert!(partition.cells().iter().any(|c| c.hi == interval.hi));
        }
    }

    #[test]
    fn rationalisability_is_constant_within_cells() {
        let game = turning_game();
        let observed = profile(&[0, 0]);
        let partition = build_partition_eq(&game, 0, &observed).unwrap();
        for cell in partition.cells() {
            let reference = is_rationalisable(
                &game,
                0,
                &observed,
                AspirationLevel::new(cell.sample_point()).unwrap(),
                EstimableModel::Nash,
            )
            .unwrap();
            for k in 0..10 {
                let gamma = cell.lo + (cell.width() * k as f64 / 10.0);
                let gamma = if cell.contains(gamma) { gamma } else { cell.lo };
                let result = is_rationalisable(
                    &game,
                    0,
                    &observed,
                    AspirationLevel::new(gamma).unwrap(),
                    EstimableModel::Nash,
                )
                .unwrap();
                assert_eq!(result, reference);
            }
        }
    }

    #[test]
    fn aspiration_at_a_breakpoint_uses_the_safety_branch() {
        // γ equal to a safety value satisfies u_s <= γ, so the cell starting
        // at that value behaves like everything to its right.
        let game = turning_game();
        let observed = profile(&[0, 0]);
        let at_breakpoint = AspirationLevel::new(0.5).unwrap();
        assert!(is_rationalisable(&game, 0, &observed, at_breakpoint, EstimableModel::Nash)
            .unwrap());
        let set = estimate_gamma(&game, 0, &observed, EstimableModel::Nash).unwrap();
        assert!(set.contains(0.5));
    }

    #[test]
    fn profile_and_action_forms_agree_for_nonstrategic_models() {
        let game = turning_game();
        for action in 0..2 {
            for mode in [NonStrategicMode::Maxmax, NonStrategicMode::Maxmin] {
                let model = match mode {
                    NonStrategicMode::Maxmax => EstimableModel::Maxmax,
                    NonStrategicMode::Maxmin => EstimableModel::Maxmin,
                };
                for k in 0..=20 {
                    let gamma = AspirationLevel::new(-1.0 + 0.1 * k as f64).unwrap();
                    // The opponent slot must not matter.
                    let via_profile =
                        is_rationalisable(&game, 0, &profile(&[action, 1]), gamma, model).unwrap();
                    let via_action =
                        is_rationalisable_action(&game, 0, action, gamma, mode).unwrap();
                    assert_eq!(via_profile, via_action);
                }
            }
        }
    }

    #[test]
    fn three_objective_games_are_rejected() {
        let game = MultiObjectiveGame::from_fn(
            vec!["safety".into(), "progress".into(), "comfort".into()],
            vec![vec!["a".into(), "b".into()], vec!["c".into()]],
            vec![None, None],
            |_, _| vec![0.0, 0.0, 0.0],
        )
        .unwrap();
        assert!(matches!(
            estimate_gamma(&game, 0, &profile(&[0, 0]), EstimableModel::Nash),
            Err(Error::UnsupportedConfiguration(_))
        ));
    }

    #[test]
    fn safety_value_of_one_creates_a_live_singleton() {
        // Observed action scores (1.0, -0.8): only at γ = 1 does its safety
        // branch engage and beat the alternative's 0.9.
        let cells = [[1.0, -0.8], [0.9, 0.9]];
        let game = MultiObjectiveGame::from_fn(
            vec!["safety".into(), "progress".into()],
            vec![vec!["a".into(), "b".into()], vec!["c".into()]],
            vec![None, None],
            |player, p| {
                if player == 1 {
                    vec![0.0, 0.0]
                } else {
                    cells[p.action(0)].to_vec()
                }
            },
        )
        .unwrap();
        let set = estimate_gamma(&game, 0, &profile(&[0, 0]), EstimableModel::Nash).unwrap();
        assert_eq!(set.intervals(), &[Interval::point(1.0)]);
    }
}
