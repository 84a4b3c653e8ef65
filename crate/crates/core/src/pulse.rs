//! Spectral model of a light pulse crossing an absorbing barrier or an
//! amplifying medium.
//!
//! Each spectral component is scaled by the mode gain of the medium,
//! `g(omega) = (beta/c)(omega/omega_ref - 1)`, the same law that governs the
//! growth increment of a single photon mode with the drift parameter replaced
//! by `omega/omega_ref`. Components above `omega_ref` therefore gain (or pass
//! freely through an absorber) while those below are damped. Reshaping the
//! spectrum moves the envelope peak, which is what an apparent transit
//! velocity measures.
//!
//! Envelopes use the `e^{-i omega t}` convention and are synthesized on one
//! period `2 pi / d_omega` of the spectral grid, centred on `t = 0`.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{domain, require_non_negative, require_positive, Error, Result};

/// Minimum number of spectral samples in a pulse.
pub const MIN_SPECTRAL_POINTS: usize = 16;

/// Minimum number of time samples per pulse duration.
pub const MIN_SAMPLES_PER_DURATION: f64 = 16.0;

/// Largest time grid `propagate` will synthesize.
const MAX_TIME_POINTS: usize = 1 << 22;

/// Relative slack before a transit counts as faster than light; peak times
/// carry rounding from the transform.
pub const VELOCITY_TOLERANCE: f64 = 1e-9;

/// Relative tolerance for treating a frequency grid as uniform.
const UNIFORM_GRID_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PulseSpec {
    pub omega_grid: Vec<f64>,
    pub amplitudes: Vec<Complex64>,
    /// Mean (peak) frequency.
    pub omega_bar: f64,
    /// RMS width of the intensity envelope.
    pub duration: f64,
}

impl PulseSpec {
    pub fn new(
        omega_grid: Vec<f64>,
        amplitudes: Vec<Complex64>,
        omega_bar: f64,
        duration: f64,
    ) -> Result<Self> {
        let pulse = Self {
            omega_grid,
            amplitudes,
            omega_bar,
            duration,
        };
        pulse.validate()?;
        Ok(pulse)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.omega_grid.len();
        if n != self.amplitudes.len() {
            return Err(domain(format!(
                "grid has {n} samples but {} amplitudes",
                self.amplitudes.len()
            )));
        }
        if n < MIN_SPECTRAL_POINTS {
            return Err(domain(format!(
                "pulse needs at least {MIN_SPECTRAL_POINTS} spectral samples, got {n}"
            )));
        }
        if self.omega_grid.iter().any(|w| !w.is_finite())
            || self.omega_grid.windows(2).any(|w| w[1] <= w[0])
        {
            return Err(domain("frequency grid must be finite and strictly increasing"));
        }
        if !(self.omega_bar >= self.omega_grid[0] && self.omega_bar <= self.omega_grid[n - 1]) {
            return Err(domain("omega_bar lies outside the frequency grid"));
        }
        require_positive("duration", self.duration)?;
        let power = self.total_power();
        if !(power > 0.0 && power.is_finite()) {
            return Err(domain("pulse carries no spectral power"));
        }
        Ok(())
    }

    /// `sum |A_k|^2`.
    pub fn total_power(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Power-weighted RMS spectral width about `omega_bar`.
    pub fn spectral_width(&self) -> f64 {
        let power = self.total_power();
        let var: f64 = self
            .omega_grid
            .iter()
            .zip(&self.amplitudes)
            .map(|(w, a)| a.norm_sqr() * (w - self.omega_bar).powi(2))
            .sum::<f64>()
            / power;
        var.sqrt()
    }

    /// Applies a quadratic spectral phase `rate (omega - omega_bar)^2 / 2`.
    ///
    /// Component `omega` then peaks at `t = rate (omega - omega_bar)`, so a
    /// negative rate puts the high frequencies on the leading edge.
    pub fn with_chirp(mut self, rate: f64) -> Result<Self> {
        if !rate.is_finite() {
            return Err(domain("chirp rate must be finite"));
        }
        let sigma = self.spectral_width();
        for (w, a) in self.omega_grid.iter().zip(self.amplitudes.iter_mut()) {
            let d = w - self.omega_bar;
            *a *= Complex64::from_polar(1.0, 0.5 * rate * d * d);
        }
        self.duration = (self.duration.powi(2) + (rate * sigma).powi(2)).sqrt();
        Ok(self)
    }

    /// Grid spacing, or a domain error if the grid is not uniform.
    pub fn uniform_spacing(&self) -> Result<f64> {
        let n = self.omega_grid.len();
        let dw = (self.omega_grid[n - 1] - self.omega_grid[0]) / (n - 1) as f64;
        let uniform = self
            .omega_grid
            .windows(2)
            .all(|w| ((w[1] - w[0]) - dw).abs() <= UNIFORM_GRID_TOL * dw);
        if uniform {
            Ok(dw)
        } else {
            Err(domain("time synthesis needs a uniform frequency grid"))
        }
    }
}

/// Gaussian pulse with power spectrum `exp(-(omega - omega_bar)^2 / (2 width^2))`
/// sampled on `n` points spanning `omega_bar +/- 5 width`, normalized to unit power.
pub fn build_pulse_spectrum(omega_bar: f64, width: f64, n: usize) -> Result<PulseSpec> {
    require_positive("width", width)?;
    require_positive("omega_bar", omega_bar)?;
    if n < MIN_SPECTRAL_POINTS {
        return Err(domain(format!(
            "pulse needs at least {MIN_SPECTRAL_POINTS} spectral samples, got {n}"
        )));
    }
    let lo = omega_bar - 5.0 * width;
    if lo <= 0.0 {
        return Err(domain(format!(
            "grid would reach omega = {lo} <= 0; need omega_bar > 5 width"
        )));
    }
    let step = 10.0 * width / (n - 1) as f64;
    let omega_grid: Vec<f64> = (0..n).map(|k| lo + k as f64 * step).collect();
    let mut amplitudes: Vec<Complex64> = omega_grid
        .iter()
        .map(|w| Complex64::from((-(w - omega_bar).powi(2) / (4.0 * width * width)).exp()))
        .collect();
    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amplitudes {
        *a /= norm;
    }
    PulseSpec::new(omega_grid, amplitudes, omega_bar, 0.5 / width)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BarrierKind {
    /// Damps components below `omega_ref`, passes the rest without loss.
    Absorber,
    /// Applies `exp(g L)` to every component.
    Amplifier,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarrierSpec {
    /// Barrier length (c = 1).
    pub length: f64,
    /// Interaction rate inside the medium.
    pub beta: f64,
    pub kind: BarrierKind,
    /// Threshold frequency of the gain law.
    pub omega_ref: f64,
}

impl BarrierSpec {
    pub fn validate(&self) -> Result<()> {
        require_non_negative("length", self.length)?;
        require_non_negative("beta", self.beta)?;
        require_positive("omega_ref", self.omega_ref)
    }

    /// Mode gain per unit length, `(beta/c)(omega/omega_ref - 1)`.
    pub fn gain(&self, omega: f64) -> f64 {
        self.beta * (omega / self.omega_ref - 1.0)
    }

    /// Magnitude factor applied to component `omega`.
    pub fn magnitude_factor(&self, omega: f64) -> f64 {
        let g = self.gain(omega);
        match self.kind {
            BarrierKind::Amplifier => (g * self.length).exp(),
            BarrierKind::Absorber if omega < self.omega_ref => (-g.abs() * self.length).exp(),
            BarrierKind::Absorber => 1.0,
        }
    }

    /// Full transfer including the vacuum phase `omega L / c`.
    pub fn transfer(&self, omega: f64) -> Complex64 {
        Complex64::from_polar(self.magnitude_factor(omega), omega * self.length)
    }
}

/// Spectrum after crossing the barrier.
pub fn barrier_transfer(pulse: &PulseSpec, barrier: &BarrierSpec) -> Result<PulseSpec> {
    pulse.validate()?;
    barrier.validate()?;
    let amplitudes = pulse
        .omega_grid
        .iter()
        .zip(&pulse.amplitudes)
        .map(|(&w, &a)| a * barrier.transfer(w))
        .collect();
    Ok(PulseSpec {
        amplitudes,
        ..pulse.clone()
    })
}

/// Complex envelope sampled on a uniform time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeProfile {
    pub times: Vec<f64>,
    pub envelope: Vec<Complex64>,
}

impl TimeProfile {
    pub fn intensity(&self) -> Vec<f64> {
        self.envelope.iter().map(|e| e.norm_sqr()).collect()
    }

    pub fn step(&self) -> f64 {
        self.times[1] - self.times[0]
    }

    /// Time of the intensity maximum, refined by a parabola through the
    /// discrete maximum and its neighbours.
    pub fn peak_time(&self) -> Result<f64> {
        let intensity = self.intensity();
        let n = intensity.len();
        let (imax, &ymax) = intensity
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .ok_or_else(|| domain("empty time profile"))?;
        let ymin = intensity.iter().copied().fold(f64::INFINITY, f64::min);
        if !(ymax > 0.0) || ymax - ymin <= 1e-12 * ymax {
            return Err(Error::Numeric {
                what: "envelope is flat, peak not resolvable".into(),
                achieved: (ymax - ymin) / ymax.max(f64::MIN_POSITIVE),
            });
        }
        let y0 = intensity[(imax + n - 1) % n];
        let y2 = intensity[(imax + 1) % n];
        let curvature = y0 - 2.0 * ymax + y2;
        let offset = if curvature < 0.0 {
            0.5 * (y0 - y2) / curvature
        } else {
            0.0
        };
        Ok(self.times[imax] + offset * self.step())
    }
}

/// Maximum over circular lags of the normalized cross-correlation of the
/// envelope magnitudes. Both profiles must have the same length.
pub fn envelope_correlation(a: &TimeProfile, b: &TimeProfile) -> Result<f64> {
    let n = a.envelope.len();
    if n != b.envelope.len() || n == 0 {
        return Err(domain("profiles must have equal, non-zero length"));
    }
    let fa: Vec<f64> = a.envelope.iter().map(|e| e.norm()).collect();
    let fb: Vec<f64> = b.envelope.iter().map(|e| e.norm()).collect();
    let na = fa.iter().map(|v| v * v).sum::<f64>().sqrt();
    let nb = fb.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(na > 0.0 && nb > 0.0) {
        return Err(domain("cannot correlate an empty envelope"));
    }
    let mut planner = FftPlanner::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let mut sa: Vec<Complex64> = fa.iter().map(|&v| Complex64::from(v)).collect();
    let mut sb: Vec<Complex64> = fb.iter().map(|&v| Complex64::from(v)).collect();
    forward.process(&mut sa);
    forward.process(&mut sb);
    let mut cross: Vec<Complex64> = sa.iter().zip(&sb).map(|(x, y)| x * y.conj()).collect();
    inverse.process(&mut cross);
    let best = cross
        .iter()
        .map(|c| c.re / n as f64)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(best / (na * nb))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagateOptions {
    /// Time samples per pulse duration, at least [`MIN_SAMPLES_PER_DURATION`].
    pub samples_per_duration: f64,
}

impl Default for PropagateOptions {
    fn default() -> Self {
        Self {
            samples_per_duration: MIN_SAMPLES_PER_DURATION,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Propagation {
    pub output: PulseSpec,
    pub t_peak_in: f64,
    pub t_peak_out: f64,
    pub input_profile: TimeProfile,
    /// Output envelope; its time axis is the input axis delayed by `L/c`.
    pub output_profile: TimeProfile,
}

impl Propagation {
    pub fn correlation(&self) -> Result<f64> {
        envelope_correlation(&self.input_profile, &self.output_profile)
    }
}

struct Synthesizer {
    fft: Arc<dyn Fft<f64>>,
    points: usize,
    dt: f64,
}

impl Synthesizer {
    fn new(pulse: &PulseSpec, options: &PropagateOptions) -> Result<Self> {
        if !(options.samples_per_duration >= MIN_SAMPLES_PER_DURATION) {
            return Err(domain(format!(
                "need at least {MIN_SAMPLES_PER_DURATION} samples per duration"
            )));
        }
        let dw = pulse.uniform_spacing()?;
        let period = 2.0 * std::f64::consts::PI / dw;
        let wanted = (options.samples_per_duration * period / pulse.duration).ceil();
        if !(wanted <= MAX_TIME_POINTS as f64) {
            return Err(Error::Numeric {
                what: format!("time grid of {wanted} points exceeds {MAX_TIME_POINTS}"),
                achieved: wanted,
            });
        }
        let points = (wanted as usize).max(pulse.omega_grid.len()).next_power_of_two();
        let fft = FftPlanner::new().plan_fft_forward(points);
        Ok(Self {
            fft,
            points,
            dt: period / points as f64,
        })
    }

    /// `e(t) = sum_k A_k exp(-i (omega_k - omega_0) t)` on `[-P/2, P/2)`.
    fn profile(&self, amplitudes: &[Complex64], shift: f64) -> TimeProfile {
        let m = self.points;
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        buf[..amplitudes.len()].copy_from_slice(amplitudes);
        self.fft.process(&mut buf);
        let half = m / 2;
        let mut times = Vec::with_capacity(m);
        let mut envelope = Vec::with_capacity(m);
        for j in (half..m).chain(0..half) {
            let index = if j >= half { j as f64 - m as f64 } else { j as f64 };
            times.push(index * self.dt + shift);
            envelope.push(buf[j]);
        }
        TimeProfile { times, envelope }
    }
}

/// Synthesizes the input envelope on the default time grid.
pub fn input_profile(pulse: &PulseSpec) -> Result<TimeProfile> {
    pulse.validate()?;
    Ok(Synthesizer::new(pulse, &PropagateOptions::default())?.profile(&pulse.amplitudes, 0.0))
}

pub fn propagate(pulse: &PulseSpec, barrier: &BarrierSpec) -> Result<Propagation> {
    propagate_with(pulse, barrier, &PropagateOptions::default())
}

/// Applies the barrier, synthesizes input and output envelopes and locates
/// their peaks.
pub fn propagate_with(
    pulse: &PulseSpec,
    barrier: &BarrierSpec,
    options: &PropagateOptions,
) -> Result<Propagation> {
    let output = barrier_transfer(pulse, barrier)?;
    let synth = Synthesizer::new(pulse, options)?;
    let input_profile = synth.profile(&pulse.amplitudes, 0.0);
    // Strip the vacuum phase and delay the time axis instead, so the output
    // never wraps around the periodic window.
    let retarded: Vec<Complex64> = output
        .omega_grid
        .iter()
        .zip(&output.amplitudes)
        .map(|(&w, &a)| a * Complex64::from_polar(1.0, -w * barrier.length))
        .collect();
    let output_profile = synth.profile(&retarded, barrier.length);
    Ok(Propagation {
        t_peak_in: input_profile.peak_time()?,
        t_peak_out: output_profile.peak_time()?,
        output,
        input_profile,
        output_profile,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ApparentVelocity {
    /// `L / (t_out - t_in)` in units of `c`; may exceed 1 or be negative.
    Finite(f64),
    /// Zero transit time.
    Infinite,
}

impl ApparentVelocity {
    pub fn is_superluminal(&self) -> bool {
        match *self {
            ApparentVelocity::Finite(v) => !(0.0..=1.0 + VELOCITY_TOLERANCE).contains(&v),
            ApparentVelocity::Infinite => true,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(*self, ApparentVelocity::Finite(v) if v < 0.0)
    }

    /// Velocity as a float, `+inf` for zero transit.
    pub fn value(&self) -> f64 {
        match *self {
            ApparentVelocity::Finite(v) => v,
            ApparentVelocity::Infinite => f64::INFINITY,
        }
    }
}

/// Barrier length over peak-to-peak transit time.
pub fn apparent_velocity(t_peak_in: f64, t_peak_out: f64, length: f64) -> ApparentVelocity {
    let transit = t_peak_out - t_peak_in;
    if transit == 0.0 {
        ApparentVelocity::Infinite
    } else {
        ApparentVelocity::Finite(length / transit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmplifierRegime {
    ShapePreserving,
    Reshaping,
}

/// The pulse keeps its form only when the interval between successive gain
/// events exceeds the photon-photon relaxation time.
pub fn amplifier_regime(delta_t: f64, tau_phph: f64) -> Result<AmplifierRegime> {
    require_positive("delta_t", delta_t)?;
    require_positive("tau_phph", tau_phph)?;
    Ok(if delta_t > tau_phph {
        AmplifierRegime::ShapePreserving
    } else {
        AmplifierRegime::Reshaping
    })
}
