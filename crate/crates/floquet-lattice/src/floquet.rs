//! Quasienergy spectra from the one-period evolution operator, parameter
//! sweeps, and the diagnostics used to locate band collapse, outlier levels,
//! and avoided crossings.
//!
//! A Floquet solution evolves as a(t) = ã(t)·e^{−iεt} with ã periodic in the
//! drive period T̃, so the monodromy matrix U(T̃,0) has eigenvalues
//! λ = e^{−iεT̃}. The quasienergy ε is defined modulo ω = 2π/T̃ and is folded
//! here into the zone [0, ω).

use ndarray::{Array1, Array2};
use ndarray_linalg::Eig;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{LatticeParams, SpinorWavefunction};
use crate::propagator::{evolve, monodromy, IntegratorConfig, MonodromyMatrix};

/// Eigenvalues of the monodromy matrix must sit on the unit circle within
/// this tolerance, else the spectrum is rejected as numerically unreliable.
const MODULUS_TOLERANCE: f64 = 1e-6;

/// Folds an energy into the zone [0, zone_width).
pub(crate) fn fold_into_zone(energy: f64, zone_width: f64) -> f64 {
    energy.rem_euclid(zone_width)
}

/// Eigen-decomposition of a monodromy matrix: folded quasienergies in
/// ascending order with their Floquet modes (unit-norm monodromy
/// eigenvectors) aligned column-by-column.
#[derive(Debug, Clone)]
pub struct QuasienergySpectrum {
    params: LatticeParams,
    quasienergies: Vec<f64>,
    modes: Array2<C64>,
    eigenvalue_moduli: Vec<f64>,
}

impl QuasienergySpectrum {
    /// Quasienergies sorted ascending, each in [0, ω).
    pub fn levels(&self) -> &[f64] {
        &self.quasienergies
    }

    /// Floquet modes; column j belongs to `levels()[j]`.
    pub fn modes(&self) -> &Array2<C64> {
        &self.modes
    }

    /// |λ_j| for each sorted level — unitarity diagnostics.
    pub fn eigenvalue_moduli(&self) -> &[f64] {
        &self.eigenvalue_moduli
    }

    /// Zone width ω: quasienergies are defined modulo this.
    pub fn zone_width(&self) -> f64 {
        self.params.drive_frequency
    }

    pub fn params(&self) -> &LatticeParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.quasienergies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quasienergies.is_empty()
    }

    /// Default tolerance for calling two levels degenerate: 1e-6·ω — well
    /// above integrator noise, well below the physical gaps (~v²/ω).
    pub fn default_degeneracy_tolerance(&self) -> f64 {
        1e-6 * self.zone_width()
    }

    #[cfg(test)]
    pub(crate) fn synthetic(params: LatticeParams, quasienergies: Vec<f64>) -> Self {
        let n = quasienergies.len();
        QuasienergySpectrum {
            params,
            quasienergies,
            modes: Array2::eye(n).mapv(|x: f64| C64::new(x, 0.0)),
            eigenvalue_moduli: vec![1.0; n],
        }
    }
}

/// Extracts the folded quasienergy spectrum of `u` by dense
/// eigen-decomposition.
///
/// The zone width is ω from the parameter snapshot carried by `u`.
/// Eigenvalue arguments are taken after renormalizing each λ to unit
/// modulus, which removes integrator-induced radial noise from the phases;
/// a modulus off unity by more than 1e-6 is a spectral-accuracy error.
pub fn quasienergies(u: &MonodromyMatrix) -> Result<QuasienergySpectrum> {
    let params = *u.params();
    let (raw_values, raw_vectors) = u
        .entries()
        .eig()
        .map_err(|e| Error::SpectralAccuracy(format!("eigen-decomposition failed: {e}")))?;
    let period = params.period();
    let zone = params.drive_frequency;
    let mut rows: Vec<(f64, f64, usize)> = Vec::with_capacity(raw_values.len());
    for (j, lambda) in raw_values.iter().enumerate() {
        let modulus = lambda.norm();
        if (modulus - 1.0).abs() > MODULUS_TOLERANCE {
            return Err(Error::SpectralAccuracy(format!(
                "monodromy eigenvalue {j} has modulus {modulus:.9}, \
                 outside 1 ± {MODULUS_TOLERANCE:.0e}"
            )));
        }
        // λ/|λ| has the same argument as λ; the renormalization matters only
        // in that the phase, not the modulus, defines the quasienergy.
        let eps = fold_into_zone(-lambda.arg() / period, zone);
        rows.push((eps, modulus, j));
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));

    let dim = raw_vectors.nrows();
    let mut modes = Array2::from_elem((dim, rows.len()), C64::new(0.0, 0.0));
    let mut quasienergies = Vec::with_capacity(rows.len());
    let mut moduli = Vec::with_capacity(rows.len());
    for (slot, &(eps, modulus, j)) in rows.iter().enumerate() {
        quasienergies.push(eps);
        moduli.push(modulus);
        let column = raw_vectors.column(j);
        let norm = column.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..dim {
            modes[(i, slot)] = column[i] / norm;
        }
    }
    Ok(QuasienergySpectrum {
        params,
        quasienergies,
        modes,
        eigenvalue_moduli: moduli,
    })
}

/// Collapse/outlier/gap diagnostics of one spectrum.
#[derive(Debug, Clone)]
pub struct SpectralDiagnostics {
    miniband_width: f64,
    outlier_indices: Vec<usize>,
    outlier_values: Vec<f64>,
    min_gap: f64,
    degeneracy_multiplicities: Vec<usize>,
}

impl SpectralDiagnostics {
    /// Spread (max − min) of the levels that are not outliers.
    pub fn miniband_width(&self) -> f64 {
        self.miniband_width
    }

    /// Indices (into the sorted spectrum) of the 4 levels farthest from the
    /// median, in ascending index order.
    pub fn outlier_indices(&self) -> &[usize] {
        &self.outlier_indices
    }

    /// Values of the outlier levels, ascending.
    pub fn outlier_values(&self) -> &[f64] {
        &self.outlier_values
    }

    /// Smallest spacing among the outlier levels.
    pub fn min_gap(&self) -> f64 {
        self.min_gap
    }

    /// Cluster sizes of the outlier levels at the tolerance the diagnostics
    /// were computed with, e.g. [2, 2] for two degenerate pairs.
    pub fn degeneracy_multiplicities(&self) -> &[usize] {
        &self.degeneracy_multiplicities
    }

    /// True when the outlier extraction produced the expected 4 levels.
    pub fn is_valid(&self) -> bool {
        self.outlier_indices.len() == 4
    }
}

/// Groups sorted values into clusters whose adjacent gaps are ≤ `tol`,
/// returning the cluster sizes in order.
pub fn cluster_multiplicities(sorted_levels: &[f64], tol: f64) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut current = 0usize;
    for (i, _) in sorted_levels.iter().enumerate() {
        if i == 0 || sorted_levels[i] - sorted_levels[i - 1] > tol {
            if current > 0 {
                sizes.push(current);
            }
            current = 1;
        } else {
            current += 1;
        }
    }
    if current > 0 {
        sizes.push(current);
    }
    sizes
}

/// Computes outlier/miniband/gap diagnostics: the 4 levels farthest from
/// the median are classified as outliers (robust at and near band collapse,
/// where the remaining miniband is nearly a point).
pub fn diagnostics(
    spectrum: &QuasienergySpectrum,
    degeneracy_tolerance: f64,
) -> Result<SpectralDiagnostics> {
    let levels = spectrum.levels();
    let n = levels.len();
    if n < 5 {
        return Err(Error::InvalidArgument(format!(
            "diagnostics need at least 5 levels, got {n}"
        )));
    }
    let median = if n % 2 == 1 {
        levels[n / 2]
    } else {
        0.5 * (levels[n / 2 - 1] + levels[n / 2])
    };
    let mut by_distance: Vec<usize> = (0..n).collect();
    by_distance.sort_by(|&a, &b| {
        let da = (levels[a] - median).abs();
        let db = (levels[b] - median).abs();
        db.total_cmp(&da).then(a.cmp(&b))
    });
    let mut outlier_indices: Vec<usize> = by_distance[..4].to_vec();
    outlier_indices.sort_unstable();
    let outlier_values: Vec<f64> = outlier_indices.iter().map(|&i| levels[i]).collect();

    let mut mini_min = f64::INFINITY;
    let mut mini_max = f64::NEG_INFINITY;
    for (i, &level) in levels.iter().enumerate() {
        if !outlier_indices.contains(&i) {
            mini_min = mini_min.min(level);
            mini_max = mini_max.max(level);
        }
    }
    let min_gap = outlier_values
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    let degeneracy_multiplicities = cluster_multiplicities(&outlier_values, degeneracy_tolerance);
    Ok(SpectralDiagnostics {
        miniband_width: mini_max - mini_min,
        outlier_indices,
        outlier_values,
        min_gap,
        degeneracy_multiplicities,
    })
}

/// Indices (into the sorted spectrum) of the `count` levels whose Floquet
/// modes carry the most probability weight on the given sites (both spins),
/// returned in ascending index order.
///
/// This physical selector complements the median-distance outlier rule: the
/// 4 impurity-region levels split into 2 with dominant site-0 weight and 4
/// with dominant edge (±1) weight, which the caller can separate here.
pub fn levels_by_site_weight(
    spectrum: &QuasienergySpectrum,
    sites: &[i32],
    count: usize,
) -> Result<Vec<usize>> {
    let params = spectrum.params();
    let mut flat_indices = Vec::with_capacity(2 * sites.len());
    for &site in sites {
        for spin in [crate::lattice::Spin::Up, crate::lattice::Spin::Down] {
            let idx = params.state_index(site, spin).ok_or_else(|| {
                Error::OutOfRange(format!(
                    "site {site} outside chain of {} sites",
                    params.n_sites
                ))
            })?;
            flat_indices.push(idx);
        }
    }
    if count > spectrum.len() {
        return Err(Error::InvalidArgument(format!(
            "requested {count} levels from a spectrum of {}",
            spectrum.len()
        )));
    }
    let mut weighted: Vec<(f64, usize)> = (0..spectrum.len())
        .map(|j| {
            let w: f64 = flat_indices
                .iter()
                .map(|&i| spectrum.modes()[(i, j)].norm_sqr())
                .sum();
            (w, j)
        })
        .collect();
    weighted.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut chosen: Vec<usize> = weighted[..count].iter().map(|&(_, j)| j).collect();
    chosen.sort_unstable();
    Ok(chosen)
}

/// Which lattice parameter a spectral sweep varies; values are expressed as
/// ratios to the drive frequency ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// F/ω — the drive-amplitude ratio.
    DriveRatio,
    /// ε₀/ω — the impurity-strength ratio.
    ImpurityRatio,
}

impl SweepAxis {
    /// Column name used in CSV output.
    pub fn column_name(&self) -> &'static str {
        match self {
            SweepAxis::DriveRatio => "F_over_omega",
            SweepAxis::ImpurityRatio => "epsilon0_over_omega",
        }
    }

    /// Returns `params` with this axis set to `ratio`·ω.
    pub fn apply(&self, params: &LatticeParams, ratio: f64) -> LatticeParams {
        let mut p = *params;
        match self {
            SweepAxis::DriveRatio => p.drive_amplitude = ratio * p.drive_frequency,
            SweepAxis::ImpurityRatio => p.impurity = ratio * p.drive_frequency,
        }
        p
    }
}

/// One grid point of a sweep.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub axis_value: f64,
    pub spectrum: QuasienergySpectrum,
    pub diagnostics: SpectralDiagnostics,
}

/// A full spectral sweep in grid order.
#[derive(Debug, Clone)]
pub struct SweepTable {
    axis: SweepAxis,
    rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn axis(&self) -> SweepAxis {
        self.axis
    }

    pub fn rows(&self) -> &[SweepRow] {
        &self.rows
    }

    /// Grid indices (interior points only) where miniband_width has a local
    /// minimum.
    pub fn miniband_minima(&self) -> Vec<usize> {
        let widths: Vec<f64> = self
            .rows
            .iter()
            .map(|r| r.diagnostics.miniband_width())
            .collect();
        let mut minima = Vec::new();
        for i in 1..widths.len().saturating_sub(1) {
            if widths[i] <= widths[i - 1] && widths[i] <= widths[i + 1] {
                // Skip plateau duplicates: only the first point of a flat
                // stretch is reported.
                if widths[i] == widths[i - 1] && minima.last() == Some(&(i - 1)) {
                    continue;
                }
                minima.push(i);
            }
        }
        minima
    }
}

/// Sweeps one parameter ratio over an inclusive linear grid, computing a
/// monodromy, spectrum, and diagnostics per point. Points are independent
/// and run in parallel; rows are returned in grid order regardless of
/// scheduling.
pub fn spectrum_sweep(
    params: &LatticeParams,
    axis: SweepAxis,
    range: (f64, f64),
    n_points: usize,
    cfg: &IntegratorConfig,
) -> Result<SweepTable> {
    let (lo, hi) = range;
    if n_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "sweep needs at least 2 points, got {n_points}"
        )));
    }
    if !(hi > lo) {
        return Err(Error::InvalidArgument(format!(
            "sweep range must have hi > lo, got [{lo}, {hi}]"
        )));
    }
    let step = (hi - lo) / (n_points - 1) as f64;
    let rows: Result<Vec<SweepRow>> = (0..n_points)
        .into_par_iter()
        .map(|k| {
            let ratio = lo + step * k as f64;
            let point_params = axis.apply(params, ratio).validated()?;
            let u = monodromy(&point_params, cfg)?;
            let spectrum = quasienergies(&u)?;
            let diag = diagnostics(&spectrum, spectrum.default_degeneracy_tolerance())?;
            Ok(SweepRow {
                axis_value: ratio,
                spectrum,
                diagnostics: diag,
            })
        })
        .collect();
    Ok(SweepTable { axis, rows: rows? })
}

/// Propagates every Floquet mode over one period and measures the worst
/// deviation from λ_j·(mode j), i.e. how well the computed eigenpairs
/// satisfy their defining property under the actual integrator.
pub fn floquet_mode_check(
    u: &MonodromyMatrix,
    spectrum: &QuasienergySpectrum,
    cfg: &IntegratorConfig,
) -> Result<f64> {
    let params = *u.params();
    let period = params.period();
    let residuals: Result<Vec<f64>> = (0..spectrum.len())
        .into_par_iter()
        .map(|j| {
            let mode: Array1<C64> = spectrum.modes().column(j).to_owned();
            let psi = SpinorWavefunction::new(mode.clone())?;
            let traj = evolve(&psi, 0.0, period, cfg, &params)?;
            let lambda = C64::cis(-spectrum.levels()[j] * period);
            let residual = traj
                .final_state()
                .amplitudes()
                .iter()
                .zip(mode.iter())
                .map(|(got, m)| (got - lambda * m).norm_sqr())
                .sum::<f64>()
                .sqrt();
            Ok(residual)
        })
        .collect();
    Ok(residuals?.into_iter().fold(0.0, f64::max))
}

/// Reorders each sweep row's levels so they continue smooth branches across
/// the grid, by greedy overlap-maximal matching of Floquet modes between
/// adjacent points. Returns, for every row, the permutation `perm` such that
/// `perm[branch]` is the spectrum index continuing that branch (branches are
/// row 0's sorted order).
///
/// Sorted-order levels swap branches at avoided crossings; this post-process
/// resolves which level continues which physical branch.
pub fn track_by_overlap(table: &SweepTable) -> Vec<Vec<usize>> {
    let rows = table.rows();
    if rows.is_empty() {
        return Vec::new();
    }
    let n = rows[0].spectrum.len();
    let mut result = Vec::with_capacity(rows.len());
    result.push((0..n).collect::<Vec<usize>>());
    for k in 1..rows.len() {
        let prev_row = &rows[k - 1].spectrum;
        let this_row = &rows[k].spectrum;
        let prev_perm = &result[k - 1];
        let mut used = vec![false; n];
        let mut perm = vec![0usize; n];
        for branch in 0..n {
            let prev_mode = prev_row.modes().column(prev_perm[branch]);
            let mut best = (0.0f64, usize::MAX);
            for candidate in 0..n {
                if used[candidate] {
                    continue;
                }
                let overlap: C64 = prev_mode
                    .iter()
                    .zip(this_row.modes().column(candidate).iter())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let magnitude = overlap.norm();
                if magnitude > best.0 {
                    best = (magnitude, candidate);
                }
            }
            perm[branch] = best.1;
            used[best.1] = true;
        }
        result.push(perm);
    }
    result
}
