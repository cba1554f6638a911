//! Derived quantities of sampled trajectories: occupation probabilities,
//! mean-square displacement, and the time-averaged locality measures S₁ and
//! S₂ that gauge how well the dynamics stays confined to the impurity
//! region.

use crate::error::{Error, Result};
use crate::lattice::Spin;
use crate::propagator::Trajectory;

/// What an [`ObservableSeries`] contains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObservableKind {
    /// P_{n,σ}(t) = |a_{n,σ}(t)|².
    Occupation { site: i32, spin: Spin },
    /// ⟨n²⟩(t) = Σ_{n,σ} n²·P_{n,σ}(t).
    MeanSquareDisplacement,
    /// Running time average of P_{−1}+P_{0}+P_{1} (both spins).
    S1Running,
    /// Running time average of P_{−1}+P_{1} (both spins).
    S2Running,
}

/// A scalar observable sampled on a trajectory's time grid.
#[derive(Debug, Clone)]
pub struct ObservableSeries {
    kind: ObservableKind,
    times: Vec<f64>,
    values: Vec<f64>,
}

impl ObservableSeries {
    pub fn kind(&self) -> ObservableKind {
        self.kind
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Largest value in the series.
    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Occupation probability P_{n,σ}(t) along a trajectory.
pub fn occupation(trajectory: &Trajectory, site: i32, spin: Spin) -> Result<ObservableSeries> {
    let params = trajectory.params();
    let index = params.state_index(site, spin).ok_or_else(|| {
        Error::OutOfRange(format!(
            "site {site} outside chain of {} sites",
            params.n_sites
        ))
    })?;
    let values = trajectory
        .states()
        .iter()
        .map(|s| s.amplitudes()[index].norm_sqr())
        .collect();
    Ok(ObservableSeries {
        kind: ObservableKind::Occupation { site, spin },
        times: trajectory.times().to_vec(),
        values,
    })
}

/// Mean-square displacement ⟨n²⟩(t) = Σ_{n,σ} n²·|a_{n,σ}|².
pub fn mean_square_displacement(trajectory: &Trajectory) -> ObservableSeries {
    let params = trajectory.params();
    let values = trajectory
        .states()
        .iter()
        .map(|s| {
            s.amplitudes()
                .iter()
                .enumerate()
                .map(|(i, z)| {
                    let (site, _) = params.site_spin_of(i);
                    (site as f64).powi(2) * z.norm_sqr()
                })
                .sum()
        })
        .collect();
    ObservableSeries {
        kind: ObservableKind::MeanSquareDisplacement,
        times: trajectory.times().to_vec(),
        values,
    }
}

/// The summed occupation of the given sites (both spins) at every sample.
fn site_group_population(trajectory: &Trajectory, sites: &[i32]) -> Vec<f64> {
    let params = trajectory.params();
    let indices: Vec<usize> = sites
        .iter()
        .flat_map(|&n| {
            [
                params.state_index(n, Spin::Up).expect("site in range"),
                params.state_index(n, Spin::Down).expect("site in range"),
            ]
        })
        .collect();
    trajectory
        .states()
        .iter()
        .map(|s| indices.iter().map(|&i| s.amplitudes()[i].norm_sqr()).sum())
        .collect()
}

/// Trapezoidal integral of samples (t, f) from t[0] to t[0] + window,
/// linearly interpolating the final partial segment.
fn trapezoid_window(times: &[f64], values: &[f64], window: f64) -> f64 {
    let t_end = times[0] + window;
    let mut integral = 0.0;
    for i in 1..times.len() {
        let (t0, t1) = (times[i - 1], times[i]);
        if t0 >= t_end {
            break;
        }
        if t1 <= t_end {
            integral += 0.5 * (values[i - 1] + values[i]) * (t1 - t0);
        } else {
            // Clip the last segment at the window edge.
            let frac = (t_end - t0) / (t1 - t0);
            let v_end = values[i - 1] + frac * (values[i] - values[i - 1]);
            integral += 0.5 * (values[i - 1] + v_end) * (t_end - t0);
            break;
        }
    }
    integral
}

/// Time-averaged impurity-region populations over the first `window` time
/// units of the trajectory:
/// S₁ averages P_{−1}+P_{0}+P_{1} and S₂ averages P_{−1}+P_{1}, both summed
/// over spin, by trapezoidal quadrature on the sample grid.
pub fn validity_averages(trajectory: &Trajectory, window: f64) -> Result<(f64, f64)> {
    if !(window > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "averaging window must be positive, got {window}"
        )));
    }
    let times = trajectory.times();
    let span = trajectory.final_time() - times[0];
    if span + 1e-9 < window {
        return Err(Error::InvalidArgument(format!(
            "trajectory spans {span} time units, shorter than the averaging window {window}"
        )));
    }
    let inner = site_group_population(trajectory, &[-1, 0, 1]);
    let edges = site_group_population(trajectory, &[-1, 1]);
    let s1 = trapezoid_window(times, &inner, window) / window;
    let s2 = trapezoid_window(times, &edges, window) / window;
    Ok((s1, s2))
}

/// Running time-average series of the site group {−1, 0, 1} (S₁) or
/// {−1, 1} (S₂): value k is the average over [t₀, t_k]. The first sample,
/// where the window is empty, carries the instantaneous population.
fn running_average(trajectory: &Trajectory, sites: &[i32], kind: ObservableKind) -> ObservableSeries {
    let times = trajectory.times();
    let population = site_group_population(trajectory, sites);
    let mut values = Vec::with_capacity(times.len());
    values.push(population[0]);
    let mut integral = 0.0;
    for i in 1..times.len() {
        integral += 0.5 * (population[i - 1] + population[i]) * (times[i] - times[i - 1]);
        values.push(integral / (times[i] - times[0]));
    }
    ObservableSeries {
        kind,
        times: times.to_vec(),
        values,
    }
}

/// Running S₁(t): average of P_{−1}+P_{0}+P_{1} (both spins) up to each
/// sample. Lets a frequency sweep reuse one trajectory per point instead of
/// re-integrating for every averaging window.
pub fn s1_running(trajectory: &Trajectory) -> ObservableSeries {
    running_average(trajectory, &[-1, 0, 1], ObservableKind::S1Running)
}

/// Running S₂(t): average of P_{−1}+P_{1} (both spins) up to each sample.
pub fn s2_running(trajectory: &Trajectory) -> ObservableSeries {
    running_average(trajectory, &[-1, 1], ObservableKind::S2Running)
}
