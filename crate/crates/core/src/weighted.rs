//! Estimation of rationalisable objective weights from one observed action.
//!
//! A weight vector is rationalisable when the observed action is optimal in
//! the weighted-scalarized game: a best response to the observed opponents
//! for strategic agents, or an envelope maximizer (maxmax/maxmin over all
//! opponent assignments) for non-strategic agents.
//!
//! With two objectives every rationalisability condition is a comparison of
//! piecewise-linear functions of the safety weight, so the exact region is
//! recovered by splitting `[0, 1]` at all pairwise line crossings and testing
//! one point per cell. With three or more objectives the strategic feasible
//! set is a polytope on the weight simplex, handled by vertex enumeration;
//! the non-strategic problem is no longer convex and falls back to a dense
//! grid search.

use crate::game::{MultiObjectiveGame, ObjectiveVector, StrategyProfile, WeightVector};
use crate::interval::{Interval, IntervalSet};
use crate::solvers::NonStrategicMode;
use crate::{Error, Result};

/// Vertex feasibility and deduplication tolerance for the simplex path.
const SIMPLEX_TOLERANCE: f64 = 1e-9;

/// Pivot threshold below which a linear system is treated as singular.
const PIVOT_TOLERANCE: f64 = 1e-12;

/// Default grid spacing for the non-strategic simplex fallback.
pub const DEFAULT_GRID_RESOLUTION: f64 = 0.01;

/// The set of rationalisable weight vectors.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightRegion {
    /// Two objectives: the exact region of the safety weight `w`, the full
    /// vector being `[w, 1 - w]`.
    SafetyWeight(IntervalSet),
    /// Three or more objectives: feasibility over the weight simplex plus a
    /// witness maximizing the observed action's objective. `exact` is false
    /// when the result comes from a grid search.
    Simplex {
        feasible: bool,
        witness: Option<WeightVector>,
        exact: bool,
    },
}

impl WeightRegion {
    pub fn is_empty(&self) -> bool {
        match self {
            WeightRegion::SafetyWeight(set) => set.is_empty(),
            WeightRegion::Simplex { feasible, .. } => !feasible,
        }
    }

    pub fn safety_weight_set(&self) -> Option<&IntervalSet> {
        match self {
            WeightRegion::SafetyWeight(set) => Some(set),
            WeightRegion::Simplex { .. } => None,
        }
    }

    /// A single rationalisable weight vector: the representative safety
    /// weight for two objectives, the witness otherwise.
    pub fn representative(&self) -> Option<WeightVector> {
        match self {
            WeightRegion::SafetyWeight(set) => {
                set.representative().map(|w| WeightVector::pair(w).expect("in [0, 1]"))
            }
            WeightRegion::Simplex { witness, .. } => witness.clone(),
        }
    }
}

/// Weighted value of a two-objective cell at safety weight `w`.
fn pair_value(u: &ObjectiveVector, w: f64) -> f64 {
    w * u.values()[0] + (1.0 - w) * u.values()[1]
}

/// The safety weight in the open interval (0, 1) where two cells' weighted
/// values cross, if any.
fn pair_crossing(a: &ObjectiveVector, b: &ObjectiveVector) -> Option<f64> {
    let (a0, a1) = (a.values()[0], a.values()[1]);
    let (b0, b1) = (b.values()[0], b.values()[1]);
    let slope = (a0 - a1) - (b0 - b1);
    if slope == 0.0 {
        return None;
    }
    let w = (b1 - a1) / slope;
    (0.0 < w && w < 1.0).then_some(w)
}

/// Splits `[0, 1]` at the breakpoints and keeps every cell (and isolated
/// breakpoint) where the predicate holds.
fn region_over_unit_interval(breakpoints: &[f64], pred: impl Fn(f64) -> bool) -> IntervalSet {
    let mut bounds = vec![0.0];
    let mut inner: Vec<f64> = breakpoints.iter().copied().filter(|w| 0.0 < *w && *w < 1.0).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    bounds.extend(inner);
    bounds.push(1.0);

    let mut kept = Vec::new();
    for pair in bounds.windows(2) {
        let cell = Interval::closed(pair[0], pair[1]);
        if pred(cell.sample_point()) {
            kept.push(cell);
        }
    }
    // The predicate can hold at a single crossing point between two failing
    // cells (an exact indifference), so boundaries are tested on their own.
    for &b in &bounds {
        if pred(b) {
            kept.push(Interval::point(b));
        }
    }
    IntervalSet::from_intervals(kept)
}

/// Estimates the weights under which the observed action is a best response
/// to the observed opponents.
pub fn estimate_weights_strategic(
    game: &MultiObjectiveGame,
    player: usize,
    observed: &StrategyProfile,
) -> Result<WeightRegion> {
    game.check_player(player)?;
    game.check_profile(observed)?;

    let observed_u = game.payoff_required(player, observed)?;
    let mut alternatives = Vec::with_capacity(game.action_count(player).saturating_sub(1));
    for a in 0..game.action_count(player) {
        if a == observed.action(player) {
            continue;
        }
        alternatives.push(game.payoff_required(player, &observed.with_action(player, a))?);
    }

    if game.objective_count() == 2 {
        let mut breakpoints = Vec::new();
        for alt in &alternatives {
            if let Some(w) = pair_crossing(observed_u, alt) {
                breakpoints.push(w);
            }
        }
        let pred = |w: f64| {
            alternatives
                .iter()
                .all(|alt| pair_value(observed_u, w) >= pair_value(alt, w))
        };
        return Ok(WeightRegion::SafetyWeight(region_over_unit_interval(&breakpoints, pred)));
    }

    let dim = game.objective_count();
    let rows: Vec<Vec<f64>> = alternatives
        .iter()
        .map(|alt| {
            observed_u
                .values()
                .iter()
                .zip(alt.values())
                .map(|(o, a)| o - a)
                .collect()
        })
        .collect();
    let vertices = simplex_vertices(&rows, dim);
    let witness = vertices
        .iter()
        .max_by(|a, b| {
            let va: f64 = a.iter().zip(observed_u.values()).map(|(w, u)| w * u).sum();
            let vb: f64 = b.iter().zip(observed_u.values()).map(|(w, u)| w * u).sum();
            va.partial_cmp(&vb).expect("finite objective values")
        })
        .map(|w| clamped_weight_vector(w))
        .transpose()?;
    Ok(WeightRegion::Simplex { feasible: !vertices.is_empty(), witness, exact: true })
}

/// Estimates the weights under which the observed action maximizes the
/// maxmax (or maxmin) envelope over all opponent assignments.
///
/// Exact for two objectives; games with more objectives fall back to a grid
/// search at [`DEFAULT_GRID_RESOLUTION`].
pub fn estimate_weights_nonstrategic(
    game: &MultiObjectiveGame,
    player: usize,
    observed_action: usize,
    mode: NonStrategicMode,
) -> Result<WeightRegion> {
    game.check_player(player)?;
    check_action(game, player, observed_action)?;
    if game.objective_count() != 2 {
        return estimate_weights_nonstrategic_grid(
            game,
            player,
            observed_action,
            mode,
            DEFAULT_GRID_RESOLUTION,
        );
    }

    let cells = action_cells(game, player)?;
    let mut breakpoints = Vec::new();
    let flat: Vec<&ObjectiveVector> = cells.iter().flatten().copied().collect();
    for (k, a) in flat.iter().enumerate() {
        for b in &flat[k + 1..] {
            if let Some(w) = pair_crossing(a, b) {
                breakpoints.push(w);
            }
        }
    }

    let envelope = |action: usize, w: f64| -> f64 {
        let values = cells[action].iter().map(|u| pair_value(u, w));
        match mode {
            NonStrategicMode::Maxmax => values.fold(f64::NEG_INFINITY, f64::max),
            NonStrategicMode::Maxmin => values.fold(f64::INFINITY, f64::min),
        }
    };
    let pred = |w: f64| {
        let observed_env = envelope(observed_action, w);
        (0..cells.len())
            .filter(|&a| a != observed_action)
            .all(|a| observed_env >= envelope(a, w))
    };
    Ok(WeightRegion::SafetyWeight(region_over_unit_interval(&breakpoints, pred)))
}

/// Grid-search estimation of non-strategic weights over the full simplex.
///
/// `resolution` is the grid spacing (e.g. 0.01 tests all weight vectors with
/// coordinates in hundredths). The witness maximizes the observed action's
/// envelope among feasible grid points.
pub fn estimate_weights_nonstrategic_grid(
    game: &MultiObjectiveGame,
    player: usize,
    observed_action: usize,
    mode: NonStrategicMode,
    resolution: f64,
) -> Result<WeightRegion> {
    game.check_player(player)?;
    check_action(game, player, observed_action)?;
    if !(resolution > 0.0 && resolution <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "grid resolution must lie in (0, 1] (got {resolution})"
        )));
    }
    let steps = (1.0 / resolution).round().max(1.0) as usize;
    let dim = game.objective_count();
    let cells = action_cells(game, player)?;

    let envelope = |action: usize, w: &[f64]| -> f64 {
        let values = cells[action]
            .iter()
            .map(|u| u.values().iter().zip(w).map(|(ui, wi)| ui * wi).sum::<f64>());
        match mode {
            NonStrategicMode::Maxmax => values.fold(f64::NEG_INFINITY, f64::max),
            NonStrategicMode::Maxmin => values.fold(f64::INFINITY, f64::min),
        }
    };

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut counts = vec![0usize; dim];
    visit_compositions(steps, dim, &mut counts, &mut |counts| {
        let w: Vec<f64> = counts.iter().map(|&c| c as f64 / steps as f64).collect();
        let observed_env = envelope(observed_action, &w);
        let feasible = (0..cells.len())
            .filter(|&a| a != observed_action)
            .all(|a| observed_env >= envelope(a, &w));
        if feasible {
            match &best {
                Some((value, _)) if observed_env <= *value => {}
                _ => best = Some((observed_env, w)),
            }
        }
    });

    let witness = best.map(|(_, w)| clamped_weight_vector(&w)).transpose()?;
    Ok(WeightRegion::Simplex { feasible: witness.is_some(), witness, exact: false })
}

fn check_action(game: &MultiObjectiveGame, player: usize, action: usize) -> Result<()> {
    if action >= game.action_count(player) {
        return Err(Error::InvalidArgument(format!(
            "action {action} out of range for player {player}"
        )));
    }
    Ok(())
}

/// Payoff cells grouped by the player's own action: `cells[a]` holds one
/// vector per opponent assignment.
fn action_cells<'g>(
    game: &'g MultiObjectiveGame,
    player: usize,
) -> Result<Vec<Vec<&'g ObjectiveVector>>> {
    let mut cells = vec![Vec::new(); game.action_count(player)];
    for others in game.space().opponent_assignments(player) {
        for (a, bucket) in cells.iter_mut().enumerate() {
            bucket.push(game.payoff_required(player, &others.with_action(player, a))?);
        }
    }
    Ok(cells)
}

/// Enumerates all compositions of `total` into `dim` non-negative parts.
fn visit_compositions(total: usize, dim: usize, counts: &mut [usize], f: &mut impl FnMut(&[usize])) {
    fn recurse(slot: usize, remaining: usize, counts: &mut [usize], f: &mut impl FnMut(&[usize])) {
        if slot + 1 == counts.len() {
            counts[slot] = remaining;
            f(counts);
            return;
        }
        for c in 0..=remaining {
            counts[slot] = c;
            recurse(slot + 1, remaining - c, counts, f);
        }
    }
    debug_assert!(dim == counts.len() && dim >= 1);
    recurse(0, total, counts, f);
}

/// Snaps elimination noise below the feasibility tolerance back onto the
/// simplex boundary so the result passes `WeightVector` validation.
fn clamped_weight_vector(w: &[f64]) -> Result<WeightVector> {
    let cleaned: Vec<f64> = w
        .iter()
        .map(|&v| if v < 0.0 && v >= -SIMPLEX_TOLERANCE { 0.0 } else { v })
        .collect();
    WeightVector::new(cleaned)
}

/// Vertices of `{w : rows · w >= 0, w >= 0, sum w = 1}`, deduplicated.
///
/// Every vertex makes `dim - 1` of the inequality constraints tight, so all
/// such subsets are solved against the simplex equality and filtered for
/// feasibility.
fn simplex_vertices(rows: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let mut constraints: Vec<Vec<f64>> = Vec::with_capacity(rows.len() + dim);
    constraints.extend(rows.iter().cloned());
    for j in 0..dim {
        let mut unit = vec![0.0; dim];
        unit[j] = 1.0;
        constraints.push(unit);
    }

    let feasible = |w: &[f64]| {
        constraints
            .iter()
            .all(|c| c.iter().zip(w).map(|(ci, wi)| ci * wi).sum::<f64>() >= -SIMPLEX_TOLERANCE)
    };

    let mut vertices: Vec<Vec<f64>> = Vec::new();
    let mut subset = vec![0usize; dim - 1];
    visit_subsets(constraints.len(), dim - 1, &mut subset, &mut |subset| {
        let mut matrix = Vec::with_capacity(dim);
        matrix.push(vec![1.0; dim]);
        for &k in subset {
            matrix.push(constraints[k].clone());
        }
        let mut rhs = vec![0.0; dim];
        rhs[0] = 1.0;
        if let Some(w) = solve_linear(matrix, rhs) {
            if feasible(&w)
                && !vertices.iter().any(|v| {
                    v.iter().zip(&w).all(|(a, b)| (a - b).abs() <= SIMPLEX_TOLERANCE)
                })
            {
                vertices.push(w);
            }
        }
    });
    vertices
}

/// Enumerates all `k`-element index subsets of `0..n` in lexicographic order.
fn visit_subsets(n: usize, k: usize, subset: &mut [usize], f: &mut impl FnMut(&[usize])) {
    fn recurse(start: usize, slot: usize, n: usize, subset: &mut [usize], f: &mut impl FnMut(&[usize])) {
        if slot == subset.len() {
            f(subset);
            return;
        }
        for i in start..n {
            subset[slot] = i;
            recurse(i + 1, slot + 1, n, subset, f);
        }
    }
    if k == 0 {
        f(&[]);
        return;
    }
    if k > n {
        return;
    }
    recurse(0, 0, n, subset, f);
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve_linear(mut matrix: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Option<Vec<f64>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&a, &b| matrix[a][col].abs().total_cmp(&matrix[b][col].abs()))
            .expect("non-empty range");
        if matrix[pivot_row][col].abs() < PIVOT_TOLERANCE {
            return None;
        }
        matrix.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        for row in col + 1..n {
            let factor = matrix[row][col] / matrix[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                matrix[row][k] -= factor * matrix[col][k];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut solution = vec![0.0; n];
    for row in (0..n).rev() {
        let mut value = rhs[row];
        for col in row + 1..n {
            value -= matrix[row][col] * solution[col];
        }
        solution[row] = value / matrix[row][row];
    }
    solution.iter().all(|v| v.is_finite()).then_some(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::tests::turning_game;
    use crate::game::MultiObjectiveGame;

    fn profile(actions: &[usize]) -> StrategyProfile {
        StrategyProfile::new(actions.to_vec())
    }

    fn single_interval(region: &WeightRegion) -> Interval {
        let set = region.safety_weight_set().unwrap();
        assert_eq!(set.intervals().len(), 1, "expected one interval, got {set:?}");
        set.intervals()[0]
    }

    #[test]
    fn strategic_region_of_turning_game() {
        // Wait beats Turn against Uphold iff 0.1 + 0.4w >= 1 - 1.9w,
        // i.e. w >= 9/23.
        let game = turning_game();
        let region = estimate_weights_strategic(&game, 0, &profile(&[0, 0])).unwrap();
        let iv = single_interval(&region);
        assert!((iv.lo - 9.0 / 23.0).abs() < 1e-9);
        assert!((iv.hi - 1.0).abs() < 1e-9);
        assert!(iv.lo_closed && iv.hi_closed);

        // The complementary observation yields the complementary region.
        let region = estimate_weights_strategic(&game, 0, &profile(&[1, 0])).unwrap();
        let iv = single_interval(&region);
        assert!((iv.lo - 0.0).abs() < 1e-9);
        assert!((iv.hi - 9.0 / 23.0).abs() < 1e-9);
    }

    #[test]
    fn nonstrategic_regions_of_turning_game() {
        // maxmax: max(0.1+0.4w, 0.1+0.7w) >= max(1-1.9w, -0.5+0.7w)
        // binds as 0.1+0.7w >= 1-1.9w below the envelope kink, i.e. w >= 9/26.
        let game = turning_game();
        let region =
            estimate_weights_nonstrategic(&game, 0, 0, NonStrategicMode::Maxmax).unwrap();
        let iv = single_interval(&region);
        assert!((iv.lo - 9.0 / 26.0).abs() < 1e-9);
        assert!((iv.hi - 1.0).abs() < 1e-9);

        // maxmin: Wait's worst case beats Turn's worst case everywhere.
        let region =
            estimate_weights_nonstrategic(&game, 0, 0, NonStrategicMode::Maxmin).unwrap();
        let iv = single_interval(&region);
        assert_eq!((iv.lo, iv.hi), (0.0, 1.0));
    }

    #[test]
    fn dominated_observation_yields_empty_region() {
        let game = MultiObjectiveGame::from_fn(
            vec!["safety".into(), "progress".into()],
            vec![vec!["a".into(), "b".into()], vec!["c".into()]],
            vec![None, None],
            |_, profile| {
                if profile.action(0) == 0 {
                    vec![-0.5, -0.5]
                } else {
                    vec![0.5, 0.5]
                }
            },
        )
        .unwrap();
        let region = estimate_weights_strategic(&game, 0, &profile(&[0, 0])).unwrap();
        assert!(region.is_empty());
        assert_eq!(region.representative(), None);
        let region =
            estimate_weights_nonstrategic(&game, 0, 0, NonStrategicMode::Maxmax).unwrap();
        assert!(region.is_empty());
    }

    #[test]
    fn equal_payoffs_rationalise_every_weight() {
        let game = MultiObjectiveGame::from_fn(
            vec!["safety".into(), "progress".into()],
            vec![vec!["a".into(), "b".into()], vec!["c".into(), "d".into()]],
            vec![None, None],
            |_, _| vec![0.3, -0.2],
        )
        .unwrap();
        for observed in [profile(&[0, 0]), profile(&[1, 1])] {
            let region = estimate_weights_strategic(&game, 0, &observed).unwrap();
            assert_eq!(single_interval(&region), Interval::closed(0.0, 1.0));
        }
    }

    #[test]
    fn single_action_games_are_trivially_rationalisable() {
        let game = MultiObjectiveGame::from_fn(
            vec!["safety".into(), "progress".into()],
            vec![vec!["only".into()], vec!["c".into(), "d".into()]],
            vec![None, None],
            |_, p| vec![0.1 * p.action(1) as f64, -0.3],
        )
        .unwrap();
        let region = estimate_weights_strategic(&game, 0, &profile(&[0, 1])).unwrap();
        assert_eq!(single_interval(&region), Interval::closed(0.0, 1.0));
    }

    #[test]
    fn isolated_indifference_point_is_kept() {
        // The observed cell (0, 0) meets one alternative's line from above
        // and the other's from below, both exactly at w = 0.5, so the region
        // is the single point {0.5}.
        let cells = [[0.0, 0.0], [-0.5, 0.5], [0.5, -0.5]];
        let game = MultiObjectiveGame::from_fn(
            vec!["safety".into(), "progress".into()],
            vec![vec!["a".into(), "b".into(), "c".into()], vec!["d".into()]],
            vec![None, None],
            |_, p| cells[p.action(0)].to_vec(),
        )
        .unwrap();
        let region = estimate_weights_strategic(&game, 0, &profile(&[0, 0])).unwrap();
        let set = region.safety_weight_set().unwrap();
        assert_eq!(set.intervals(), &[Interval::point(0.5)]);
        assert_eq!(region.representative(), Some(WeightVector::pair(0.5).unwrap()));
    }

    #[test]
    fn scaling_both_objectives_preserves_regions() {
        let game = turning_game();
        let scaled = MultiObjectiveGame::from_fn(
            vec!["safety".into(), "progress".into()],
            vec![
                vec!["wait".into(), "turn".into()],
                vec!["uphold".into(), "deviate".into()],
            ],
            vec![Some(0), Some(0)],
            |player, p| {
                let u = game.payoff(player, p).unwrap();
                u.values().iter().map(|v| v * 0.5).collect()
            },
        )
        .unwrap();
        let original = estimate_weights_strategic(&game, 0, &profile(&[0, 0])).unwrap();
        let rescaled = estimate_weights_strategic(&scaled, 0, &profile(&[0, 0])).unwrap();
        assert_eq!(original, rescaled);

        for mode in [NonStrategicMode::Maxmax, NonStrategicMode::Maxmin] {
            let original = estimate_weights_nonstrategic(&game, 0, 0, mode).unwrap();
            let rescaled = estimate_weights_nonstrategic(&scaled, 0, 0, mode).unwrap();
            assert_eq!(original, rescaled);
        }
    }

    fn three_objective_game(observed_cell: [f64; 3], alt_cell: [f64; 3]) -> MultiObjectiveGame {
        MultiObjectiveGame::from_fn(
            vec!["safety".into(), "progress".into(), "comfort".into()],
            vec![vec!["a".into(), "b".into()], vec!["c".into()]],
            vec![None, None],
            |player, p| {
                if player == 1 {
                    vec![0.0, 0.0, 0.0]
                } else if p.action(0) == 0 {
                    observed_cell.to_vec()
                } else {
                    alt_cell.to_vec()
                }
            },
        )
        .unwrap()
    }

    #[test]
    fn simplex_witness_maximizes_observed_utility() {
        // Constraint w0 >= w1; the vertex maximizing w · (1, 0, 0) is e0.
        let game = three_objective_game([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let region = estimate_weights_strategic(&game, 0, &profile(&[0, 0])).unwrap();
        match region {
            WeightRegion::Simplex { feasible: true, witness: Some(w), exact: true } => {
                assert_eq!(w.weights(), &[1.0, 0.0, 0.0]);
            }
            other => panic!("unexpected region {other:?}"),
        }
    }

    #[test]
    fn simplex_detects_strict_domination() {
        let game = three_objective_game([-0.5, -0.5, -0.5], [0.5, 0.5, 0.5]);
        let region = estimate_weights_strategic(&game, 0, &profile(&[0, 0])).unwrap();
        assert!(region.is_empty());
        assert!(matches!(region, WeightRegion::Simplex { exact: true, .. }));
    }

    #[test]
    fn grid_fallback_agrees_with_exact_feasibility_on_two_objectives() {
        let game = turning_game();
        for (action, mode) in [
            (0, NonStrategicMode::Maxmax),
            (1, NonStrategicMode::Maxmax),
            (0, NonStrategicMode::Maxmin),
            (1, NonStrategicMode::Maxmin),
        ] {
            let exact = estimate_weights_nonstrategic(&game, 0, action, mode).unwrap();
            let grid =
                estimate_weights_nonstrategic_grid(&game, 0, action, mode, 0.001).unwrap();
            assert_eq!(exact.is_empty(), grid.is_empty(), "action {action} {mode}");
            if let WeightRegion::Simplex { witness: Some(w), exact: false, .. } = grid {
                assert!(exact.safety_weight_set().unwrap().contains(w.weights()[0]));
            }
        }
    }

    #[test]
    fn grid_fallback_covers_three_objectives() {
        let game = three_objective_game([0.2, 0.1, 0.9], [0.6, 0.3, -0.2]);
        let region =
            estimate_weights_nonstrategic(&game, 0, 0, NonStrategicMode::Maxmax).unwrap();
        match region {
            WeightRegion::Simplex { feasible, witness, exact: false } => {
                // The comfort-heavy cell must win for comfort-dominant weights.
                assert!(feasible);
                let w = witness.unwrap();
                assert_eq!(w.len(), 3);
            }
            other => panic!("unexpected region {other:?}"),
        }
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let game = turning_game();
        assert!(estimate_weights_strategic(&game, 5, &profile(&[0, 0])).is_err());
        assert!(estimate_weights_strategic(&game, 0, &profile(&[0, 7])).is_err());
        assert!(estimate_weights_nonstrategic(&game, 0, 9, NonStrategicMode::Maxmax).is_err());
        assert!(
            estimate_weights_nonstrategic_grid(&game, 0, 0, NonStrategicMode::Maxmax, 0.0)
                .is_err()
        );
    }

    #[test]
    fn linear_solver_handles_pivoting_and_singularity() {
        let solution = solve_linear(
            vec![vec![0.0, 2.0], vec![1.0, 1.0]],
            vec![4.0, 3.0],
        )
        .unwrap();
        assert!((solution[0] - 1.0).abs() < 1e-12);
        assert!((solution[1] - 2.0).abs() < 1e-12);

        assert!(solve_linear(vec![vec![1.0, 1.0], vec![2.0, 2.0]], vec![1.0, 2.0]).is_none());
    }
}
