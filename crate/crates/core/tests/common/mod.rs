//! Independent oracles shared by integration tests.

#![allow(dead_code)]

use num_complex::Complex64;
use photon_drag::pulse::{propagate, BarrierKind, BarrierSpec, PulseSpec, TimeProfile};

/// Magnitude transfer written out independently of the library.
pub fn transfer(b: &BarrierSpec, omega: f64) -> f64 {
    let g = b.beta * (omega / b.omega_ref - 1.0);
    match b.kind {
        BarrierKind::Amplifier => (g * b.length).exp(),
        BarrierKind::Absorber => {
            if omega < b.omega_ref {
                (-g.abs() * b.length).exp()
            } else {
                1.0
            }
        }
    }
}

/// Envelope `sum_k A_k exp(-i (omega_k - omega_0) t)` by direct summation.
pub fn direct_envelope(p: &PulseSpec, amps: &[Complex64], t: f64) -> Complex64 {
    let w0 = p.omega_grid[0];
    p.omega_grid
        .iter()
        .zip(amps)
        .map(|(w, a)| a * Complex64::from_polar(1.0, -(w - w0) * t))
        .sum()
}

/// Output envelope on `samples` evenly spaced grid positions, computed as the
/// circular convolution of the input envelope with the barrier's impulse
/// response on the same time grid.
pub fn convolution_oracle(p: &PulseSpec, b: &BarrierSpec, grid: &TimeProfile, samples: usize) -> Vec<(usize, Complex64)> {
    let m = grid.times.len();
    let dt = grid.step();
    let t0 = grid.times[0];
    let input: Vec<Complex64> = (0..m)
        .map(|j| direct_envelope(p, &p.amplitudes, t0 + j as f64 * dt))
        .collect();
    let gains: Vec<Complex64> = p.omega_grid.iter().map(|&w| Complex64::from(transfer(b, w))).collect();
    let impulse: Vec<Complex64> = (0..m)
        .map(|j| direct_envelope(p, &gains, j as f64 * dt) / m as f64)
        .collect();
    let stride = m / samples;
    (0..samples)
        .map(|s| {
            let pos = s * stride;
            let out: Complex64 = (0..m).map(|k| impulse[k] * input[(pos + m - k) % m]).sum();
            (pos, out)
        })
        .collect()
}

/// Largest output-envelope error of `propagate` relative to the envelope
/// peak, over at most 256 grid positions.
pub fn envelope_error(p: &PulseSpec, b: &BarrierSpec) -> f64 {
    let r = propagate(p, b).unwrap();
    let samples = 256.min(r.output_profile.times.len());
    let oracle = convolution_oracle(p, b, &r.input_profile, samples);
    let scale = oracle.iter().map(|(_, e)| e.norm()).fold(0.0, f64::max);
    let err = oracle
        .iter()
        .map(|&(pos, e)| (r.output_profile.envelope[pos].norm() - e.norm()).abs())
        .fold(0.0, f64::max);
    // The input synthesis itself against direct sums.
    for &(pos, _) in &oracle {
        let t = r.input_profile.times[pos];
        let direct = direct_envelope(p, &p.amplitudes, t);
        assert!((r.input_profile.envelope[pos] - direct).norm() < 1e-9);
        assert!((r.output_profile.times[pos] - t - b.length).abs() < 1e-12);
    }
    err / scale
}
