//! The physical system: a finite tight-binding chain with spin-orbit-coupled
//! hopping, a Zeeman splitting, a single on-site impurity, and a sinusoidally
//! driven linear tilt.
//!
//! The chain has an odd number of sites N, labelled n = −(N−1)/2 … (N−1)/2,
//! with the impurity at n = 0. Hopping between neighbors acts on the spinor
//! through v·exp(−iα σ_y): a spin-conserving part ∝ v·cos α and a
//! spin-flipping part ∝ v·sin α. The drive enters as the on-site energy
//! ε′(t)·n with ε′(t) = F·cos(ωt).
//!
//! This module owns the parameter set, the state types, the Schrödinger
//! right-hand side dψ/dt = −iH(t)ψ, and the rotating-frame transformation
//! that removes the drive tilt, the Zeeman energy, and the impurity energy
//! as pure phases.

use ndarray::Array1;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Spin-1/2 label. `Up` is the σ_z = +1 component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    /// Position of this spin within a site's interleaved amplitude pair.
    pub fn offset(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    /// σ_z eigenvalue: +1 for up, −1 for down.
    pub fn sign(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

impl std::fmt::Display for Spin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Spin::Up => write!(f, "up"),
            Spin::Down => write!(f, "down"),
        }
    }
}

/// Full parameter set of the driven chain (ħ = 1; `hopping` sets the energy
/// and time units, all other energies are in the same units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeParams {
    /// Number of lattice sites N (odd, ≥ 3); sites run n = −(N−1)/2 … (N−1)/2.
    pub n_sites: usize,
    /// Nearest-neighbor hopping strength v ≥ 0 (v = 0 is the frozen-chain
    /// limit used as an exactly solvable reference).
    pub hopping: f64,
    /// Spin-orbit mixing angle α in radians: cos α weights spin-conserving
    /// hops, sin α spin-flipping hops.
    pub soc_angle: f64,
    /// Zeeman splitting Ω between the spin states.
    pub zeeman: f64,
    /// Extra on-site energy ε₀ at the central site n = 0.
    pub impurity: f64,
    /// Drive amplitude F of the oscillating tilt ε′(t) = F·cos(ωt).
    pub drive_amplitude: f64,
    /// Drive angular frequency ω > 0.
    pub drive_frequency: f64,
}

impl Default for LatticeParams {
    /// The canonical configuration: N = 21, v = 1, α = 0, Ω = ω = 20,
    /// resonant impurity ε₀ = ω, and drive amplitude F = 2.405·ω (the first
    /// collapse point of the spin-conserving case).
    fn default() -> Self {
        LatticeParams {
            n_sites: 21,
            hopping: 1.0,
            soc_angle: 0.0,
            zeeman: 20.0,
            impurity: 20.0,
            drive_amplitude: 48.1,
            drive_frequency: 20.0,
        }
    }
}

impl LatticeParams {
    /// Validates the invariants: N odd and ≥ 3, ω > 0, v ≥ 0, all finite.
    pub fn validated(self) -> Result<Self> {
        if self.n_sites < 3 || self.n_sites % 2 == 0 {
            return Err(Error::InvalidArgument(format!(
                "n_sites must be odd and at least 3, got {}",
                self.n_sites
            )));
        }
        let fields = [
            ("hopping", self.hopping),
            ("soc_angle", self.soc_angle),
            ("zeeman", self.zeeman),
            ("impurity", self.impurity),
            ("drive_amplitude", self.drive_amplitude),
            ("drive_frequency", self.drive_frequency),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be finite, got {value}"
                )));
            }
        }
        if self.hopping < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "hopping must be non-negative, got {}",
                self.hopping
            )));
        }
        if self.drive_frequency <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "drive_frequency must be positive, got {}",
                self.drive_frequency
            )));
        }
        Ok(self)
    }

    /// Drive period T̃ = 2π/ω.
    pub fn period(&self) -> f64 {
        std::f64::consts::TAU / self.drive_frequency
    }

    /// Hilbert-space dimension 2N (two spin components per site).
    pub fn dim(&self) -> usize {
        2 * self.n_sites
    }

    /// Largest site label: sites run −half_width() … half_width().
    pub fn half_width(&self) -> i32 {
        ((self.n_sites - 1) / 2) as i32
    }

    /// All site labels in ascending order.
    pub fn sites(&self) -> std::ops::RangeInclusive<i32> {
        -self.half_width()..=self.half_width()
    }

    /// Flat amplitude index of (site, spin): site-major, spin interleaved.
    /// `None` when the site lies outside the chain.
    pub fn state_index(&self, site: i32, spin: Spin) -> Option<usize> {
        let h = self.half_width();
        if site < -h || site > h {
            return None;
        }
        Some(2 * (site + h) as usize + spin.offset())
    }

    /// Inverse of [`Self::state_index`].
    pub fn site_spin_of(&self, index: usize) -> (i32, Spin) {
        let spin = if index % 2 == 0 { Spin::Up } else { Spin::Down };
        ((index / 2) as i32 - self.half_width(), spin)
    }

    /// Instantaneous drive field ε′(t) = F·cos(ωt).
    pub fn drive_field(&self, t: f64) -> f64 {
        self.drive_amplitude * (self.drive_frequency * t).cos()
    }

    /// Accumulated drive phase Φ(t) = ∫₀ᵗ ε′(s) ds = (F/ω)·sin(ωt).
    pub fn drive_phase(&self, t: f64) -> f64 {
        self.drive_amplitude / self.drive_frequency * (self.drive_frequency * t).sin()
    }

    /// Dimensionless drive ratio F/ω.
    pub fn drive_ratio(&self) -> f64 {
        self.drive_amplitude / self.drive_frequency
    }

    /// True when the hopping is purely spin-conserving (|sin α| < 1e-12).
    /// Used only to route to the matching effective models, never to alter
    /// the exact dynamics.
    pub fn is_spin_conserving(&self) -> bool {
        self.soc_angle.sin().abs() < 1e-12
    }

    /// True when the hopping is purely spin-flipping (|cos α| < 1e-12).
    pub fn is_spin_flipping(&self) -> bool {
        self.soc_angle.cos().abs() < 1e-12
    }
}

/// Normalized spinor state of the chain: complex amplitudes a_{n,σ} stored
/// site-major with the two spin components of each site adjacent.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorWavefunction {
    amplitudes: Array1<C64>,
}

impl SpinorWavefunction {
    /// Wraps an amplitude vector, validating shape (even length ≥ 6), entry
    /// finiteness, and unit norm within 1e-9.
    pub fn new(amplitudes: Array1<C64>) -> Result<Self> {
        if amplitudes.len() < 6 || amplitudes.len() % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "amplitude vector must have even length >= 6, got {}",
                amplitudes.len()
            )));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument(
                "amplitude vector contains non-finite entries".into(),
            ));
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq.sqrt() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "state must be normalized: |norm - 1| = {:.3e}",
                (norm_sq.sqrt() - 1.0).abs()
            )));
        }
        Ok(SpinorWavefunction { amplitudes })
    }

    /// Internal constructor for integrator output, whose norm may drift
    /// microscopically below the public 1e-9 admission tolerance.
    pub(crate) fn from_raw(amplitudes: Array1<C64>) -> Self {
        SpinorWavefunction { amplitudes }
    }

    /// The basis state |site, spin⟩.
    pub fn basis_state(params: &LatticeParams, site: i32, spin: Spin) -> Result<Self> {
        let index = params.state_index(site, spin).ok_or_else(|| {
            Error::OutOfRange(format!(
                "site {site} outside chain of {} sites",
                params.n_sites
            ))
        })?;
        let mut amplitudes = Array1::from_elem(params.dim(), C64::new(0.0, 0.0));
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(SpinorWavefunction { amplitudes })
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    /// Amplitude a_{n,σ}; `None` outside the chain.
    pub fn amplitude(&self, params: &LatticeParams, site: i32, spin: Spin) -> Option<C64> {
        params.state_index(site, spin).map(|i| self.amplitudes[i])
    }

    /// Occupation probability P_{n,σ} = |a_{n,σ}|²; `None` outside the chain.
    pub fn probability(&self, params: &LatticeParams, site: i32, spin: Spin) -> Option<f64> {
        self.amplitude(params, site, spin).map(|z| z.norm_sqr())
    }

    /// Euclidean norm (1 up to integrator drift).
    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// State expressed in the rotating frame that absorbs the drive tilt, the
/// Zeeman energy, and the impurity energy into phases:
/// b_{n,σ} = a_{n,σ}·exp{i[nΦ(t) ± (Ω/2)t + ε₀δ_{n,0}t]} (+ for spin up).
#[derive(Debug, Clone, PartialEq)]
pub struct RotatingFrameState {
    amplitudes: Array1<C64>,
    time: f64,
}

impl RotatingFrameState {
    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    /// The time at which the frame transformation was taken.
    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn amplitude(&self, params: &LatticeParams, site: i32, spin: Spin) -> Option<C64> {
        params.state_index(site, spin).map(|i| self.amplitudes[i])
    }

    /// Norm is preserved exactly by the frame change.
    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Per-(site, spin) phase of the rotating-frame transformation at time `t`:
/// b = a·e^{iθ} with θ = nΦ(t) + sign(σ)·(Ω/2)t + ε₀δ_{n,0}t.
fn frame_phase(params: &LatticeParams, site: i32, spin: Spin, t: f64) -> f64 {
    let mut theta = site as f64 * params.drive_phase(t) + spin.sign() * 0.5 * params.zeeman * t;
    if site == 0 {
        theta += params.impurity * t;
    }
    theta
}

/// Maps a laboratory-frame state to the rotating frame at time `t`.
///
/// Panics if the state dimension does not match `params` (programming
/// error); `t` must be finite.
pub fn to_rotating_frame(
    psi: &SpinorWavefunction,
    t: f64,
    params: &LatticeParams,
) -> RotatingFrameState {
    assert_eq!(
        psi.len(),
        params.dim(),
        "state dimension does not match lattice parameters"
    );
    debug_assert!(t.is_finite());
    let mut amplitudes = psi.amplitudes.clone();
    for (i, z) in amplitudes.iter_mut().enumerate() {
        let (site, spin) = params.site_spin_of(i);
        *z *= C64::cis(frame_phase(params, site, spin, t));
    }
    RotatingFrameState {
        amplitudes,
        time: t,
    }
}

/// Inverse of [`to_rotating_frame`], using the timestamp stored in `b`.
pub fn from_rotating_frame(b: &RotatingFrameState, params: &LatticeParams) -> SpinorWavefunction {
    assert_eq!(
        b.amplitudes.len(),
        params.dim(),
        "state dimension does not match lattice parameters"
    );
    let mut amplitudes = b.amplitudes.clone();
    for (i, z) in amplitudes.iter_mut().enumerate() {
        let (site, spin) = params.site_spin_of(i);
        *z *= C64::cis(-frame_phase(params, site, spin, b.time));
    }
    SpinorWavefunction::from_raw(amplitudes)
}

/// Writes dψ/dt = −iH(t)ψ into `out`, allocation-free (the integrator's hot
/// path). Slices must both have length `params.dim()`.
///
/// For each site n (open boundary — neighbor terms outside the chain are
/// dropped):
///   i·da_{n,↑}/dt = −v[cos α(a_{n+1,↑}+a_{n−1,↑}) + sin α(−a_{n+1,↓}+a_{n−1,↓})]
///                   + [ε′(t)·n + ε₀δ_{n,0} + Ω/2]·a_{n,↑}
///   i·da_{n,↓}/dt = −v[cos α(a_{n+1,↓}+a_{n−1,↓}) + sin α(a_{n+1,↑}−a_{n−1,↑})]
///                   + [ε′(t)·n + ε₀δ_{n,0} − Ω/2]·a_{n,↓}
pub(crate) fn hamiltonian_action(t: f64, params: &LatticeParams, psi: &[C64], out: &mut [C64]) {
    debug_assert_eq!(psi.len(), params.dim());
    debug_assert_eq!(out.len(), params.dim());
    let h = params.half_width();
    let (sin_a, cos_a) = params.soc_angle.sin_cos();
    let vc = params.hopping * cos_a;
    let vs = params.hopping * sin_a;
    let drive = params.drive_field(t);
    let half_zeeman = 0.5 * params.zeeman;
    let zero = C64::new(0.0, 0.0);
    for site in -h..=h {
        let i = 2 * (site + h) as usize;
        let (left_up, left_dn) = if site > -h {
            (psi[i - 2], psi[i - 1])
        } else {
            (zero, zero)
        };
        let (right_up, right_dn) = if site < h {
            (psi[i + 2], psi[i + 3])
        } else {
            (zero, zero)
        };
        let mut onsite = drive * site as f64;
        if site == 0 {
            onsite += params.impurity;
        }
        let h_up = ((right_up + left_up) * vc + (left_dn - right_dn) * vs) * -1.0
            + psi[i] * (onsite + half_zeeman);
        let h_dn = ((right_dn + left_dn) * vc + (right_up - left_up) * vs) * -1.0
            + psi[i + 1] * (onsite - half_zeeman);
        // dψ/dt = −i·(Hψ)
        out[i] = C64::new(h_up.im, -h_up.re);
        out[i + 1] = C64::new(h_dn.im, -h_dn.re);
    }
}

/// The Schrödinger right-hand side dψ/dt = −iH(t)ψ at time `t`.
pub fn apply_hamiltonian(
    t: f64,
    psi: &SpinorWavefunction,
    params: &LatticeParams,
) -> Result<Array1<C64>> {
    if psi.len() != params.dim() {
        return Err(Error::InvalidArgument(format!(
            "state dimension {} does not match lattice dimension {}",
            psi.len(),
            params.dim()
        )));
    }
    let mut out = Array1::from_elem(params.dim(), C64::new(0.0, 0.0));
    hamiltonian_action(
        t,
        params,
        psi.amplitudes.as_slice().expect("contiguous"),
        out.as_slice_mut().expect("contiguous"),
    );
    Ok(out)
}
