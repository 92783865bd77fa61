//! Domain types for the received-power maximization problem: discrete phase
//! sets, the phase-dependent amplitude law, coefficient sets, channel
//! instances and the objective.

mod channel;
mod coefficients;
mod objective;
mod pda;
mod phase_set;

pub use channel::{ChannelInstance, PathGain};
pub use coefficients::{check_local_convexity, CoefficientSet, GainSampling};
pub use objective::{received_power, snr_boost, BeamformingSolution, SolveStats};
pub use pda::{pda_gain, PdaProfile};
pub use phase_set::{build_phase_set, uniform_threshold, PhaseShiftSet, Regime};

/// Absolute tolerance for angle and power equality checks.
pub const TOLERANCE: f64 = 1e-12;
