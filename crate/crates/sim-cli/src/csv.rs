//! Deterministic CSV emission.
//!
//! Every writer builds the complete file as a `String` with a mandatory
//! header row, LF line endings, `.` as the decimal separator, and every
//! float printed at 12 significant digits in scientific notation. Identical
//! inputs therefore produce byte-identical files, which the test suite
//! checks by comparing reruns.

use floquet_lattice::floquet::SweepTable;
use floquet_lattice::lattice::Spin;
use floquet_lattice::observables::mean_square_displacement;
use floquet_lattice::propagator::Trajectory;

/// Formats one float field: 12 significant digits, scientific notation.
/// Zero is pinned to a single representation so that `-0.0` produced by one
/// code path and `0.0` by another cannot break byte-level determinism.
pub fn float_field(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000000e0".to_string();
    }
    format!("{x:.11e}")
}

/// Column label for an occupation probability, e.g. `P_-1_up`.
pub fn probability_label(site: i32, spin: Spin) -> String {
    let sfx = match spin {
        Spin::Up => "up",
        Spin::Down => "dn",
    };
    format!("P_{site}_{sfx}")
}

/// Trajectory table: `t`, one occupation column per tracked (site, spin)
/// pair (both spins for every tracked site), then the mean-square
/// displacement.
pub fn trajectory_csv(trajectory: &Trajectory, track_sites: &[i32]) -> String {
    let params = trajectory.params();
    let msd = mean_square_displacement(trajectory);
    let mut out = String::from("t");
    for &site in track_sites {
        for spin in [Spin::Up, Spin::Down] {
            out.push(',');
            out.push_str(&probability_label(site, spin));
        }
    }
    out.push_str(",msd\n");
    for (k, &t) in trajectory.times().iter().enumerate() {
        let state = &trajectory.states()[k];
        out.push_str(&float_field(t));
        for &site in track_sites {
            for spin in [Spin::Up, Spin::Down] {
                out.push(',');
                // Tracked sites are validated against the chain when the
                // config is built, so the lookup cannot miss.
                let p = state
                    .probability(params, site, spin)
                    .expect("tracked site inside chain");
                out.push_str(&float_field(p));
            }
        }
        out.push(',');
        out.push_str(&float_field(msd.values()[k]));
        out.push('\n');
    }
    out
}

/// Spectrum table: the sweep axis, every quasienergy in ascending order
/// (`eps_1` … `eps_2N`), then the miniband width and the smallest outlier
/// gap of each grid point.
pub fn spectrum_csv(table: &SweepTable) -> String {
    let levels_per_row = table
        .rows()
        .first()
        .map(|r| r.spectrum.len())
        .unwrap_or(0);
    let mut out = String::from(table.axis().column_name());
    for j in 1..=levels_per_row {
        out.push_str(&format!(",eps_{j}"));
    }
    out.push_str(",miniband_width,min_gap\n");
    for row in table.rows() {
        out.push_str(&float_field(row.axis_value));
        for &eps in row.spectrum.levels() {
            out.push(',');
            out.push_str(&float_field(eps));
        }
        out.push(',');
        out.push_str(&float_field(row.diagnostics.miniband_width()));
        out.push(',');
        out.push_str(&float_field(row.diagnostics.min_gap()));
        out.push('\n');
    }
    out
}

/// Closed-form level table accompanying a spectrum sweep: the sweep axis and
/// the six predicted impurity-region quasienergies in a fixed order.
pub fn analytic_levels_csv(axis_name: &str, rows: &[(f64, [f64; 6])]) -> String {
    let mut out = String::from(axis_name);
    for j in 1..=6 {
        out.push_str(&format!(",eps_a{j}"));
    }
    out.push('\n');
    for (axis_value, levels) in rows {
        out.push_str(&float_field(*axis_value));
        for &eps in levels {
            out.push(',');
            out.push_str(&float_field(eps));
        }
        out.push('\n');
    }
    out
}

/// One row of a series-coefficient table.
#[derive(Debug, Clone, Copy)]
pub struct ChiRow {
    pub f_over_omega: f64,
    pub chi: [f64; 6],
    pub truncation: u32,
    pub certificate: f64,
}

/// Series-coefficient table: drive ratio, the six coefficients, the
/// symmetric truncation half-width `P`, and the magnitude of the outermost
/// included term (the convergence certificate).
pub fn chi_csv(rows: &[ChiRow]) -> String {
    let mut out = String::from("F_over_omega,chi1,chi2,chi3,chi4,chi5,chi6,P,certificate\n");
    for row in rows {
        out.push_str(&float_field(row.f_over_omega));
        for &chi in &row.chi {
            out.push(',');
            out.push_str(&float_field(chi));
        }
        out.push_str(&format!(",{}", row.truncation));
        out.push(',');
        out.push_str(&float_field(row.certificate));
        out.push('\n');
    }
    out
}

/// Validity table: drive frequency and the two time-averaged
/// impurity-region populations.
pub fn validity_csv(rows: &[(f64, f64, f64)]) -> String {
    let mut out = String::from("omega,s1,s2\n");
    for &(omega, s1, s2) in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            float_field(omega),
            float_field(s1),
            float_field(s2)
        ));
    }
    out
}

/// Effective-model table: time and the three model-state probabilities,
/// with columns labelled by the model's (site, spin) basis.
pub fn model_csv(basis: &[(i32, Spin); 3], rows: &[(f64, [f64; 3])]) -> String {
    let mut out = String::from("t");
    for &(site, spin) in basis {
        out.push(',');
        out.push_str(&probability_label(site, spin));
    }
    out.push('\n');
    for (t, probs) in rows {
        out.push_str(&float_field(*t));
        for &p in probs {
            out.push(',');
            out.push_str(&float_field(p));
        }
        out.push('\n');
    }
    out
}
