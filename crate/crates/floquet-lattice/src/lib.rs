//! Simulation and analysis toolkit for a periodically driven tight-binding
//! chain with spin-orbit-coupled hopping, a Zeeman splitting, and a single
//! on-site impurity.
//!
//! The crate is organized in layers:
//!
//! - [`lattice`]: the physical model — parameters, spinor states, the
//!   Schrödinger right-hand side, and the rotating-frame transformation.
//! - [`propagator`]: fixed-step Runge–Kutta time evolution and the
//!   one-period (monodromy) evolution operator.
//! - [`floquet`]: quasienergy spectra from the monodromy matrix, parameter
//!   sweeps, and collapse/outlier/gap diagnostics.
//! - [`effective`]: the analytic layer — resonance decomposition, Bessel
//!   series coefficients, resonant three-site models, second-order
//!   slow-amplitude models, and closed-form quasienergies and modes.
//! - [`observables`]: occupation probabilities, mean-square displacement,
//!   and time-averaged locality measures.
//! - [`specfun`]: Bessel functions of the first kind and their zeros, the
//!   special functions everything above relies on.

pub mod effective;
pub mod error;
pub mod floquet;
pub mod lattice;
pub mod observables;
pub mod propagator;
pub mod specfun;

pub use effective::{
    analytic_floquet_modes, analytic_quasienergies, chi_coefficients,
    chi_coefficients_with_truncation, decompose_resonance, resonant_three_site,
    second_order_model, three_site_amplitudes, three_site_evolve, AnalyticLevel, AnalyticMode,
    ChiCoefficients, LevelOrigin, ResonanceDecomposition, SecondOrderModel, SlowAmplitudes,
    ThreeSiteModel,
};
pub use error::{Error, Result};
pub use lattice::{
    apply_hamiltonian, from_rotating_frame, to_rotating_frame, LatticeParams,
    RotatingFrameState, Spin, SpinorWavefunction,
};
