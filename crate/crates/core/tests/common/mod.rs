//! Shared fixtures for the integration suites.
#![allow(dead_code)]

use prefdis_core::game::{MultiObjectiveGame, ScalarGame, StrategyProfile};
use rand::Rng;

/// The two-vehicle turning example: row player chooses Wait/Turn against a
/// column player choosing Uphold/Deviate, with (safety, progress) payoffs.
pub fn turning_game() -> MultiObjectiveGame {
    let cells = [
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
    .expect("fixture is well-formed")
}

/// A random two-objective game with up to `max_players` players and up to
/// `max_actions` actions each, payoffs uniform in [-1, 1].
pub fn random_game<R: Rng>(rng: &mut R, max_players: usize, max_actions: usize) -> MultiObjectiveGame {
    let players = rng.random_range(1..=max_players);
    let labels: Vec<Vec<String>> = (0..players)
        .map(|_| {
            let actions = rng.random_range(1..=max_actions);
            (0..actions).map(|a| format!("a{a}")).collect()
        })
        .collect();
    MultiObjectiveGame::from_fn(
        vec!["safety".into(), "progress".into()],
        labels,
        vec![Some(0); players],
        |_, _| vec![rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)],
    )
    .expect("random game is well-formed")
}

/// A random single-objective game in scalar form.
pub fn random_scalar_game<R: Rng>(
    rng: &mut R,
    max_players: usize,
    max_actions: usize,
) -> ScalarGame {
    let players = rng.random_range(1..=max_players);
    let counts: Vec<usize> = (0..players).map(|_| rng.random_range(1..=max_actions)).collect();
    let size: usize = counts.iter().product();
    let utilities: Vec<Vec<f64>> = (0..players)
        .map(|_| (0..size).map(|_| rng.random_range(-1.0..=1.0)).collect())
        .collect();
    ScalarGame::new(counts, utilities).expect("random scalar game is well-formed")
}

/// A uniformly random strategy profile of the game.
pub fn random_profile<R: Rng>(rng: &mut R, game: &MultiObjectiveGame) -> StrategyProfile {
    let actions = (0..game.player_count())
        .map(|p| rng.random_range(0..game.space().action_count(p)))
        .collect();
    StrategyProfile::new(actions)
}
