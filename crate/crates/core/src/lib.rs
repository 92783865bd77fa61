//! Discrete beamforming for reconfigurable intelligent surfaces whose element
//! gain depends on the selected phase and whose phase range may be limited.
//!
//! The crate provides
//! - the problem model ([`model`]): phase sets, the amplitude law, coefficient
//!   sets, channels and the received-power objective;
//! - the linear-time globally optimal boundary sweep and an exhaustive
//!   reference search ([`optimal`]);
//! - the two quantization heuristics ([`quantizers`]);
//! - closed-form large-N approximation ratios ([`analysis`]);
//! - a seeded Monte-Carlo harness ([`experiments`]).

pub mod analysis;
pub mod angle;
mod error;
pub mod experiments;
pub mod model;
pub mod optimal;
pub mod quantizers;

pub use error::{Error, Result};
pub use model::{
    build_phase_set, check_local_convexity, pda_gain, received_power, snr_boost, BeamformingSolution,
    ChannelInstance, CoefficientSet, GainSampling, PathGain, PdaProfile, PhaseShiftSet, Regime,
};
pub use optimal::{algorithm1_optimize, exhaustive_search, lemma1_assign};
