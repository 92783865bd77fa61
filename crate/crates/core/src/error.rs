use thiserror::Error;

/// Errors raised by model construction, the solvers and the experiment harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("need at least two discrete phases, got K = {0}")]
    TooFewPhases(usize),

    #[error("phase range must lie in (0, 2π], got {0}")]
    InvalidRange(f64),

    #[error("discrete phases must be distinct (index {0} repeats a phase)")]
    DuplicatePhase(usize),

    #[error("invalid PDA profile: {0}")]
    InvalidProfile(String),

    #[error("gain at index {index} is {gain}, expected a value in [0, 1]")]
    InvalidGain { index: usize, gain: f64 },

    #[error("expected {expected} gains, got {actual}")]
    GainCountMismatch { expected: usize, actual: usize },

    #[error("gain of phase index {0} is zero, the decision boundary next to it is undefined")]
    ZeroGain(usize),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("expected {expected} selections, got {actual}")]
    SelectionCountMismatch { expected: usize, actual: usize },

    #[error("selection {index} for element {element} is out of range (K = {k})")]
    SelectionOutOfRange { element: usize, index: usize, k: usize },

    #[error("exhaustive search needs {required} evaluations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("{operation} requires a {expected} phase set, got {actual}")]
    WrongRegime {
        operation: &'static str,
        expected: &'static str,
        actual: &'static str,
    },

    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),

    #[error("trial {trial}: {source}")]
    Trial {
        trial: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
