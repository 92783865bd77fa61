//! Seeded Monte-Carlo experiments over random channel realizations.
//!
//! Trial `t` of a run with seed `s` draws its channel from a ChaCha8 stream
//! seeded with `s` and positioned on stream `t`. A trial's channel therefore
//! depends only on `(s, t)` and not on execution order, so parallel and
//! sequential runs produce bitwise-identical records.

mod channel_model;
mod config;
mod monte_carlo;
mod stats;

pub use channel_model::{generate_channel, ChannelModelConfig};
pub use config::{ExperimentConfig, OneOrMany, Setting};
pub use monte_carlo::{
    run_monte_carlo, solve, Algorithm, AlgorithmSummary, Execution, ExperimentResult, Metric,
    MonteCarloSetup, TrialRecord,
};
pub use stats::{cdf, mean, percentile};
