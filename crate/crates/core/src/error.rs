//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors surfaced by construction, compilation, simulation, and estimation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operator length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },
    #[error("CX gate qubits {0} and {1} are not nearest neighbours")]
    NonAdjacentGate(usize, usize),
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("qubit count {n} exceeds the dense-matrix cap of {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("invalid twirl set size {size}: above 4^{tau} it must be a multiple of 4^{tau}")]
    InvalidTwirlSize { size: usize, tau: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("per-qubit readout factor on qubit {0} is singular (a + b = 1)")]
    SingularFactor(usize),
    #[error("calibration run returned |v| = {0:.3e}; noise too strong or twirl set pathological")]
    VanishingCalibration(f64),
    #[error("shot budget {shots} is below the twirl set size {members}")]
    ShotsTooFew { shots: u64, members: usize },
    #[error("measurement plan is unachievable: {0}")]
    UnachievablePlan(String),
    #[error("delta must lie strictly inside (0, 1), got {0}")]
    InvalidDelta(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
