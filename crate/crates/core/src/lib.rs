//! Revealed-preference estimation of utility-aggregation parameters in
//! finite multi-objective games.
//!
//! Drivers (and other agents) trade off objectives such as safety and
//! progress. Given a game with per-objective utilities and one observed
//! action, this crate recovers the exact set of aggregation parameters —
//! convex objective weights or a satisficing safety aspiration — under which
//! that action is optimal for an assumed reasoning model (Nash, maxmax,
//! maxmin). On top of the estimators sit pure-strategy solution concepts
//! (Nash, level-k, Stackelberg, rule-following), a small CART regression
//! tree for predicting parameters from situational features, and a dataset
//! pipeline with a CLI (`prefdis`) covering generation, estimation,
//! pass-rate evaluation, and the prediction experiment.

pub mod error;
pub mod game;
pub mod interval;
pub mod pipeline;
pub mod satisficing;
pub mod solvers;
pub mod tree;
pub mod weighted;

pub use error::{Error, Result};
