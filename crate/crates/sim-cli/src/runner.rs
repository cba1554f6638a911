//! Executes a validated experiment description and writes its CSV
//! artifacts.
//!
//! [`execute`] produces the results in memory (the form the test suites
//! inspect); [`run`] additionally writes them to deterministic CSV files
//! and returns the paths. Sweep grids are computed in parallel where the
//! underlying library parallelizes, and rows are always collected in grid
//! order, so the emitted bytes do not depend on the worker count.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use floquet_lattice::effective::{
    analytic_quasienergies, chi_coefficients, decompose_resonance, resonant_three_site,
    second_order_model, three_site_evolve, SlowAmplitudes,
};
use floquet_lattice::floquet::{spectrum_sweep, SweepTable};
use floquet_lattice::lattice::Spin;
use floquet_lattice::observables::validity_averages;
use floquet_lattice::propagator::{evolve, Trajectory};

use crate::config::{ExperimentConfig, InitialState, RunSpec};
use crate::csv::{self, ChiRow};

/// Anything that can go wrong while running an experiment.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    /// An error surfaced by the simulation library.
    #[error("{0}")]
    Model(#[from] floquet_lattice::Error),
    /// A filesystem failure while writing artifacts.
    #[error("cannot write {path}: {message}")]
    Io { path: PathBuf, message: String },
    /// The run spec and the rest of the config do not fit together.
    #[error("{0}")]
    Unsupported(String),
}

impl RunError {
    /// Category tag used in the machine-readable error record.
    pub fn category(&self) -> &'static str {
        match self {
            RunError::Model(_) => "model",
            RunError::Io { .. } => "io",
            RunError::Unsupported(_) => "config",
        }
    }
}

/// Escapes a string for embedding in a JSON string literal.
pub fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// One-line machine-readable error record for stderr.
pub fn error_record(category: &str, message: &str) -> String {
    format!(
        "{{\"error\":\"{}\",\"message\":\"{}\"}}",
        json_escape(category),
        json_escape(message)
    )
}

/// In-memory results of one run.
pub enum Artifacts {
    Trajectory(Trajectory),
    EffectiveCompare {
        exact: Trajectory,
        basis: [(i32, Spin); 3],
        model_rows: Vec<(f64, [f64; 3])>,
    },
    Sweep {
        table: SweepTable,
        analytic: Option<Vec<(f64, [f64; 6])>>,
    },
    Chi(Vec<ChiRow>),
    Validity(Vec<(f64, f64, f64)>),
}

/// Runs the experiment and returns the results in memory.
pub fn execute(cfg: &ExperimentConfig) -> Result<Artifacts, RunError> {
    match &cfg.run {
        RunSpec::Evolve { t_max } => {
            let psi0 = cfg.initial_state();
            let trajectory = evolve(&psi0, 0.0, *t_max, &cfg.integrator, &cfg.params)?;
            Ok(Artifacts::Trajectory(trajectory))
        }
        RunSpec::EffectiveCompare { t_max } => effective_compare(cfg, *t_max),
        RunSpec::SpectrumSweep {
            axis,
            range,
            points,
            analytic_levels,
        } => {
            let table = spectrum_sweep(&cfg.params, *axis, *range, *points, &cfg.integrator)?;
            let analytic = if *analytic_levels {
                Some(analytic_level_rows(cfg, &table)?)
            } else {
                None
            };
            Ok(Artifacts::Sweep { table, analytic })
        }
        RunSpec::Chi { range, points } => {
            let dec = decompose_resonance(&cfg.params)?;
            let rows: Result<Vec<ChiRow>, floquet_lattice::Error> =
                grid(*range, *points)
                    .into_iter()
                    .map(|x| {
                        let chi = chi_coefficients(x, &dec)?;
                        Ok(ChiRow {
                            f_over_omega: x,
                            chi: chi.as_array(),
                            truncation: chi.truncation,
                            certificate: chi.last_term_magnitude,
                        })
                    })
                    .collect();
            Ok(Artifacts::Chi(rows?))
        }
        RunSpec::ValiditySweep {
            omega_range,
            points,
            window,
        } => {
            let psi0 = cfg.initial_state();
            let rows: Result<Vec<(f64, f64, f64)>, RunError> = grid(*omega_range, *points)
                .into_par_iter()
                .map(|omega| {
                    let params = cfg
                        .scaling
                        .params_at(&cfg.params, omega)
                        .validated()
                        .map_err(RunError::Model)?;
                    let trajectory = evolve(&psi0, 0.0, *window, &cfg.integrator, &params)?;
                    let (s1, s2) = validity_averages(&trajectory, *window)?;
                    Ok((omega, s1, s2))
                })
                .collect();
            Ok(Artifacts::Validity(rows?))
        }
    }
}

/// Runs the experiment and writes its artifacts under `out_dir`, returning
/// the written paths in a fixed order.
pub fn run(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let artifacts = execute(cfg)?;
    write_artifacts(cfg, &artifacts, out_dir)
}

/// Writes previously computed artifacts as CSV files.
pub fn write_artifacts(
    cfg: &ExperimentConfig,
    artifacts: &Artifacts,
    out_dir: &Path,
) -> Result<Vec<PathBuf>, RunError> {
    fs::create_dir_all(out_dir).map_err(|e| RunError::Io {
        path: out_dir.to_path_buf(),
        message: e.to_string(),
    })?;
    let write = |suffix: &str, content: String| -> Result<PathBuf, RunError> {
        let path = out_dir.join(format!("{}{suffix}.csv", cfg.output));
        fs::write(&path, content).map_err(|e| RunError::Io {
            path: path.clone(),
            message: e.to_string(),
        })?;
        Ok(path)
    };
    match artifacts {
        Artifacts::Trajectory(trajectory) => {
            Ok(vec![write("", csv::trajectory_csv(trajectory, &cfg.track_sites))?])
        }
        Artifacts::EffectiveCompare {
            exact,
            basis,
            model_rows,
        } => Ok(vec![
            write("", csv::trajectory_csv(exact, &cfg.track_sites))?,
            write("_model", csv::model_csv(basis, model_rows))?,
        ]),
        Artifacts::Sweep { table, analytic } => {
            let mut paths = vec![write("", csv::spectrum_csv(table))?];
            if let Some(rows) = analytic {
                paths.push(write(
                    "_analytic",
                    csv::analytic_levels_csv(table.axis().column_name(), rows),
                )?);
            }
            Ok(paths)
        }
        Artifacts::Chi(rows) => Ok(vec![write("", csv::chi_csv(rows))?]),
        Artifacts::Validity(rows) => Ok(vec![write("", csv::validity_csv(rows))?]),
    }
}

/// Inclusive linear grid with deterministic spacing.
fn grid((lo, hi): (f64, f64), points: usize) -> Vec<f64> {
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(|k| lo + step * k as f64).collect()
}

/// Exact dynamics next to its effective-model prediction, sampled on the
/// same time grid.
fn effective_compare(cfg: &ExperimentConfig, t_max: f64) -> Result<Artifacts, RunError> {
    let InitialState::Basis { site, spin } = cfg.initial else {
        return Err(RunError::Unsupported(
            "the effective comparison needs a (site, spin) basis initial state \
             inside the impurity region (sites -1, 0, 1)"
                .into(),
        ));
    };
    let init_index = match site {
        -1 => 0,
        0 => 1,
        1 => 2,
        other => {
            return Err(RunError::Unsupported(format!(
                "the effective comparison starts inside the impurity region \
                 (sites -1, 0, 1); initial_site {other} lies outside it"
            )))
        }
    };
    // The model basis is labelled by the spin of its edge states. A
    // spin-flipping drive stores the opposite spin on the center site, so a
    // center start belongs to the subspace with flipped edges.
    let edge_spin = if site == 0 && cfg.params.is_spin_flipping() {
        spin.flipped()
    } else {
        spin
    };

    let dec = decompose_resonance(&cfg.params)?;
    let psi0 = cfg.initial_state();
    let exact = evolve(&psi0, 0.0, t_max, &cfg.integrator, &cfg.params)?;

    let (basis, model_rows) = if dec.is_resonant() {
        let model = resonant_three_site(&cfg.params, &dec, edge_spin)?;
        let rows: Result<Vec<(f64, [f64; 3])>, floquet_lattice::Error> = exact
            .times()
            .iter()
            .map(|&t| Ok((t, three_site_evolve(&model, init_index, t)?)))
            .collect();
        (*model.basis(), rows?)
    } else {
        let chi = chi_coefficients(cfg.params.drive_ratio(), &dec)?;
        let model = second_order_model(&cfg.params, &dec, &chi, edge_spin)?;
        let slow0 = SlowAmplitudes::basis_state(init_index, 0.0)?;
        let omega = cfg.params.drive_frequency;
        let rows: Vec<(f64, [f64; 3])> = exact
            .times()
            .iter()
            .map(|&t| (t, model.evolve(&slow0, omega * t).probabilities()))
            .collect();
        (*model.basis(), rows)
    };
    debug_assert_eq!(basis[init_index], (site, spin));
    Ok(Artifacts::EffectiveCompare {
        exact,
        basis,
        model_rows,
    })
}

/// Closed-form impurity-region levels along a sweep grid, in the fixed
/// order the prediction routine returns them.
fn analytic_level_rows(
    cfg: &ExperimentConfig,
    table: &SweepTable,
) -> Result<Vec<(f64, [f64; 6])>, RunError> {
    let axis = table.axis();
    table
        .rows()
        .iter()
        .map(|row| {
            let params = axis.apply(&cfg.params, row.axis_value).validated()?;
            let dec = decompose_resonance(&params)?;
            let chi = chi_coefficients(params.drive_ratio(), &dec)?;
            let levels = analytic_quasienergies(&params, &dec, &chi)?;
            if levels.len() != 6 {
                return Err(RunError::Unsupported(format!(
                    "expected 6 closed-form levels, got {}",
                    levels.len()
                )));
            }
            let mut values = [0.0; 6];
            for (slot, level) in values.iter_mut().zip(levels.iter()) {
                *slot = level.value;
            }
            Ok((row.axis_value, values))
        })
        .collect()
}
