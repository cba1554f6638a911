//! Shared helpers for the integration suites: a deterministic pseudo-random
//! state generator and an independently assembled dense Hamiltonian matrix,
//! built entry by entry from the amplitude equations of motion rather than
//! from the library's stencil code.

#![allow(dead_code)]

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use floquet_lattice::{LatticeParams, Spin, SpinorWavefunction};

/// Deterministic normalized pseudo-random state (xorshift64 draws).
pub fn pseudo_random_state(dim: usize, seed: u64) -> SpinorWavefunction {
    let mut s = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).max(1);
    let mut next = move || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let mut amps: Array1<C64> = (0..dim).map(|_| C64::new(next(), next())).collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    amps.mapv_inplace(|z| z / norm);
    SpinorWavefunction::new(amps).unwrap()
}

/// A pseudo-random state supported entirely on one spin sector.
pub fn pseudo_random_spin_sector_state(
    params: &LatticeParams,
    spin: Spin,
    seed: u64,
) -> SpinorWavefunction {
    let full = pseudo_random_state(params.dim(), seed);
    let mut amps = full.amplitudes().clone();
    for site in params.sites() {
        let other = params.state_index(site, spin.flipped()).unwrap();
        amps[other] = C64::new(0.0, 0.0);
    }
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    amps.mapv_inplace(|z| z / norm);
    SpinorWavefunction::new(amps).unwrap()
}

/// Dense 2N×2N Hamiltonian assembled directly from the equations of motion:
/// on-site energies ε′(t)·n + ε₀δ_{n,0} ± Ω/2, spin-conserving hops
/// −v·cos α to both neighbors, and spin-flipping hops ±v·sin α whose sign
/// depends on direction and spin:
///
///   i·ȧ_{n,↑} = −v[cos α(a_{n+1,↑}+a_{n−1,↑}) + sin α(−a_{n+1,↓}+a_{n−1,↓})] + …
///   i·ȧ_{n,↓} = −v[cos α(a_{n+1,↓}+a_{n−1,↓}) + sin α(a_{n+1,↑}−a_{n−1,↑})] + …
pub fn dense_hamiltonian(params: &LatticeParams, t: f64) -> Array2<C64> {
    let dim = params.dim();
    let mut h = Array2::from_elem((dim, dim), C64::new(0.0, 0.0));
    let v = params.hopping;
    let (sin_a, cos_a) = params.soc_angle.sin_cos();
    let field = params.drive_amplitude * (params.drive_frequency * t).cos();
    for site in params.sites() {
        for spin in [Spin::Up, Spin::Down] {
            let row = params.state_index(site, spin).unwrap();
            let onsite = field * site as f64
                + if site == 0 { params.impurity } else { 0.0 }
                + spin.sign() * 0.5 * params.zeeman;
            h[(row, row)] = C64::new(onsite, 0.0);
            for (neighbor, forward) in [(site + 1, true), (site - 1, false)] {
                let Some(same) = params.state_index(neighbor, spin) else {
                    continue;
                };
                h[(row, same)] = C64::new(-v * cos_a, 0.0);
                let other = params.state_index(neighbor, spin.flipped()).unwrap();
                let sign = match (spin, forward) {
                    (Spin::Up, true) => 1.0,
                    (Spin::Up, false) => -1.0,
                    (Spin::Down, true) => -1.0,
                    (Spin::Down, false) => 1.0,
                };
                h[(row, other)] = C64::new(sign * v * sin_a, 0.0);
            }
        }
    }
    h
}
