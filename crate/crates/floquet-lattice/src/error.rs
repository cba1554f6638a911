//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Unified error type for simulation, spectral, and effective-model routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed input: wrong dimensions, non-finite values, invalid ranges.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A request outside the supported domain (e.g. unsupported Bessel-zero order).
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// The integrator could not certify the requested accuracy (norm drift,
    /// unitarity loss). Carries advice on how to proceed.
    #[error("integration accuracy: {0}")]
    IntegrationAccuracy(String),

    /// Eigen-decomposition of the one-period propagator failed its quality
    /// checks (eigenvalue moduli off the unit circle, solver breakdown).
    #[error("spectral accuracy: {0}")]
    SpectralAccuracy(String),

    /// The requested effective model does not apply to these parameters
    /// (non-integer Zeeman/drive ratio, mixed spin-orbit angle, detuning
    /// outside the model's regime).
    #[error("effective model inapplicable: {0}")]
    EffectiveModelInapplicable(String),

    /// Parameters fall outside the perturbative regime the analysis assumes
    /// (e.g. impurity weaker than half the drive quantum).
    #[error("outside perturbative regime: {0}")]
    OutOfRegime(String),

    /// A denominator of one of the six chi series is too close to zero:
    /// the detuning is exponentially close to a resonance and the series
    /// value is meaningless there.
    #[error(
        "resonance singularity: chi_{series} denominator at p = {p} has magnitude {magnitude:.3e}"
    )]
    ResonanceSingularity {
        /// Which of the six series (1..=6) hit the singularity.
        series: u8,
        /// The summation index at which the denominator vanished.
        p: i32,
        /// The offending denominator magnitude.
        magnitude: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
