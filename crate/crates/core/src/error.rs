use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The wavefunction vanishes at `x`, so the log-derivative fields have a pole there.
    #[error("wavefunction node at x = {x}: velocity field is singular")]
    NodeSingularity { x: Complex64 },

    /// The adaptive step size collapsed while approaching a velocity pole.
    #[error("trajectory approached a node near x = {x} at t = {t} (step size {step:e})")]
    NodeApproach { t: f64, x: Complex64, step: f64 },

    #[error("initial point {x0} lies on an equilibrium of the velocity field")]
    EquilibriumStart { x0: Complex64 },

    #[error("transition field pole at t = {t}, x = {x}")]
    TransitionPole { t: f64, x: Complex64 },

    #[error("polynomial root solver did not converge after {iterations} iterations")]
    RootFindingFailure { iterations: usize },

    #[error("trajectory is not a detected closed orbit")]
    NotClosed,

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("winding number about {point} is not an integer (total turning {turns} revolutions)")]
    Classification { point: Complex64, turns: f64 },

    #[error("integration exceeded the step budget at t = {t}")]
    StepLimit { t: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
