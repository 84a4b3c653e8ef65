//! Carrier-side quantities: heated temperatures in quantizing and classical
//! magnetic fields, drift velocities under AC and DC driving, the dressed
//! carrier mass, its cyclotron frequency and the resonance linewidth.
//!
//! Velocity amplitudes for AC driving refer to a field `E e^{-i omega t}`,
//! so the physical velocity is `Re(v e^{-i omega t})`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, require_non_negative, require_positive, Error, Result};
use crate::model::BathConfig;
use crate::occupancy::require_speed;

/// Default relative guard on `|Omega^2 - omega_H^2|` near cyclotron resonance.
pub const DEFAULT_RESONANCE_GUARD: f64 = 1e-9;

/// Default margin for the `omega >> nu_energy` validity condition.
pub const DEFAULT_VALIDITY_MARGIN: f64 = 10.0;

/// Below this `u/c` the `phi` corrections are taken from their power series.
const SERIES_CUTOFF: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChargeSign {
    /// Positron, charge `+e`.
    Positive,
    /// Electron, charge `-e`.
    Negative,
}

impl ChargeSign {
    pub fn value(self) -> f64 {
        match self {
            ChargeSign::Positive => 1.0,
            ChargeSign::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierSpecies {
    pub charge_sign: ChargeSign,
    /// Elementary charge magnitude `e` in the chosen unit system.
    pub charge: f64,
    /// Bare carrier mass `m_c`.
    pub m_c: f64,
    /// Carrier-photon collision frequency `nu_ph` at `T_i`.
    pub nu_ph: f64,
    /// Energy relaxation frequency `nu_eps`.
    pub nu_energy: f64,
    /// Concentration.
    pub n: f64,
}

impl CarrierSpecies {
    pub fn validate(&self) -> Result<()> {
        require_positive("charge", self.charge)?;
        require_positive("m_c", self.m_c)?;
        require_non_negative("nu_ph", self.nu_ph)?;
        require_non_negative("nu_energy", self.nu_energy)?;
        require_non_negative("n", self.n)
    }

    /// Signed `q / m_c`.
    fn charge_to_mass(&self) -> f64 {
        self.charge_sign.value() * self.charge / self.m_c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    /// `E` parallel to `H`.
    Parallel,
    /// `E` perpendicular to `H`.
    Transverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    pub e_field: f64,
    pub h_field: f64,
    /// Wave frequency, 0 for a static field.
    pub omega: f64,
    pub geometry: Geometry,
}

impl FieldConfig {
    pub fn validate(&self) -> Result<()> {
        require_non_negative("e_field", self.e_field)?;
        require_non_negative("h_field", self.h_field)?;
        require_non_negative("omega", self.omega)
    }

    /// Components of `E` along and across `h = H/H`.
    fn split(&self) -> (f64, f64) {
        match self.geometry {
            Geometry::Parallel => (self.e_field, 0.0),
            Geometry::Transverse => (0.0, self.e_field),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Validity {
    pub valid: bool,
    /// `omega / nu_energy`, infinite when `nu_energy = 0`.
    pub ratio: f64,
}

/// Checks the fast-wave condition `omega >> nu_energy` with the given margin.
pub fn validity_check(field: &FieldConfig, species: &CarrierSpecies, margin: f64) -> Validity {
    let ratio = if species.nu_energy == 0.0 {
        if field.omega > 0.0 {
            f64::INFINITY
        } else {
            f64::NAN
        }
    } else {
        field.omega / species.nu_energy
    };
    Validity {
        valid: ratio > margin,
        ratio,
    }
}

/// Fermi occupancy `1 / (1 + exp((eps - zeta) / T_c))`.
pub fn carrier_occupancy(epsilon: f64, zeta: f64, t_c: f64) -> Result<f64> {
    require_positive("T_c", t_c)?;
    let arg = (epsilon - zeta) / t_c;
    // exp(-arg)/(1+exp(-arg)) keeps precision in the tail.
    if arg > 0.0 {
        let e = (-arg).exp();
        Ok(e / (1.0 + e))
    } else {
        Ok(1.0 / (1.0 + arg.exp()))
    }
}

fn require_subluminal(u: f64) -> Result<()> {
    require_speed("u", u)?;
    if u >= 1.0 {
        return Err(domain(format!("u/c = {u} >= 1: heating formula invalid")));
    }
    Ok(())
}

/// `phi_1 - 1` with `phi_1 = (1 - u^2)^{-1/2}`, free of cancellation.
pub fn phi1_minus_one(u: f64) -> Result<f64> {
    require_subluminal(u)?;
    let s = (1.0 - u * u).sqrt();
    Ok(u * u / (s * (1.0 + s)))
}

pub fn phi1(u: f64) -> Result<f64> {
    require_subluminal(u)?;
    Ok(1.0 / (1.0 - u * u).sqrt())
}

/// `phi_2 - 1` with `phi_2 = (1/2u) ln((1+u)/(1-u)) = atanh(u)/u`.
pub fn phi2_minus_one(u: f64) -> Result<f64> {
    require_subluminal(u)?;
    if u < SERIES_CUTOFF {
        // sum_{k>=1} u^{2k} / (2k + 1)
        let u2 = u * u;
        let mut term = u2;
        let mut sum = 0.0f64;
        let mut k = 1.0;
        while term > 1e-18 * sum.max(f64::MIN_POSITIVE) || k < 2.0 {
            sum += term / (2.0 * k + 1.0);
            term *= u2;
            k += 1.0;
            if term == 0.0 {
                break;
            }
        }
        Ok(sum)
    } else {
        Ok(u.atanh() / u - 1.0)
    }
}

pub fn phi2(u: f64) -> Result<f64> {
    Ok(1.0 + phi2_minus_one(u)?)
}

/// Carrier temperature for an arbitrary degree of field quantization,
/// `T_c = T_i {1 + (V/u - 1)^2 (phi_1 - 1)}`.
pub fn temperature_quantizing(t_i: f64, v: f64, u: f64) -> Result<f64> {
    require_positive("T_i", t_i)?;
    require_subluminal(u)?;
    if !v.is_finite() {
        return Err(domain("V must be finite"));
    }
    if u == 0.0 {
        if v != 0.0 {
            return Err(domain("u = 0 with V != 0 makes V/u infinite"));
        }
        return Ok(t_i);
    }
    let bracket = v / u - 1.0;
    Ok(t_i * (1.0 + bracket * bracket * phi1_minus_one(u)?))
}

/// Carrier temperature in the classical strong-field region,
/// `T_c = T_i {1 + V^2/3 + (1 - V/u)(phi_2 - 1)}`.
pub fn temperature_classical(t_i: f64, v: f64, u: f64) -> Result<f64> {
    require_positive("T_i", t_i)?;
    require_subluminal(u)?;
    if !v.is_finite() {
        return Err(domain("V must be finite"));
    }
    // (1 - V/u)(phi_2 - 1) -> -V u / 3 -> 0 as u -> 0.
    let drag = if u == 0.0 {
        0.0
    } else {
        (1.0 - v / u) * phi2_minus_one(u)?
    };
    Ok(t_i * (1.0 + v * v / 3.0 + drag))
}

/// Hall drift speed `c E / H`.
pub fn hall_drift(field: &FieldConfig) -> Result<f64> {
    require_positive("h_field", field.h_field)?;
    require_non_negative("e_field", field.e_field)?;
    Ok(field.e_field / field.h_field)
}

/// `nu_ph(T_i) (1 - u / V)`, the carrier-photon collision frequency reduced
/// by the drag of the photon system.
pub fn drag_corrected_collision_frequency(nu_ph: f64, u: f64, v: f64) -> Result<f64> {
    require_non_negative("nu_ph", nu_ph)?;
    if u == 0.0 {
        return Ok(nu_ph);
    }
    if v == 0.0 || !v.is_finite() {
        return Err(domain("drag correction needs a finite non-zero carrier drift V"));
    }
    let nu = nu_ph * (1.0 - u / v);
    if !(nu > 0.0) {
        return Err(domain(format!(
            "drag-corrected collision frequency {nu} <= 0 (u = {u}, V = {v}): full-drag breakdown"
        )));
    }
    Ok(nu)
}

/// Complex drift velocity amplitude decomposed on the basis
/// `(h, e_perp, e_perp x h)` where `e_perp` is the unit vector of the
/// component of `E` across `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcDrift {
    pub parallel: Complex64,
    pub perpendicular: Complex64,
    pub hall: Complex64,
}

impl AcDrift {
    pub fn magnitude(&self) -> f64 {
        (self.parallel.norm_sqr() + self.perpendicular.norm_sqr() + self.hall.norm_sqr()).sqrt()
    }
}

/// Magnetized complex mobility with `Omega = omega + i nu`.
///
/// Parallel to `h`: `i (q/m) E_par / Omega`. Across `h`:
/// `(q/m)(i Omega E_perp - s omega_H E_perp x h) / (Omega^2 - omega_H^2)`.
pub fn drift_velocity_ac(
    species: &CarrierSpecies,
    field: &FieldConfig,
    omega_h: f64,
    nu: f64,
) -> Result<AcDrift> {
    drift_velocity_ac_with_guard(species, field, omega_h, nu, DEFAULT_RESONANCE_GUARD)
}

pub fn drift_velocity_ac_with_guard(
    species: &CarrierSpecies,
    field: &FieldConfig,
    omega_h: f64,
    nu: f64,
    guard: f64,
) -> Result<AcDrift> {
    species.validate()?;
    field.validate()?;
    require_non_negative("omega_H", omega_h)?;
    require_non_negative("nu", nu)?;
    let big_omega = Complex64::new(field.omega, nu);
    let denom = big_omega * big_omega - omega_h * omega_h;
    if denom.norm() <= guard * omega_h * omega_h || big_omega.norm() == 0.0 {
        return Err(Error::Resonance {
            detuning: denom.norm(),
        });
    }
    let a = species.charge_to_mass();
    let s = species.charge_sign.value();
    let i = Complex64::i();
    let (e_par, e_perp) = field.split();
    Ok(AcDrift {
        parallel: i * a * e_par / big_omega,
        perpendicular: i * a * big_omega * e_perp / denom,
        hall: Complex64::from(-a * s * omega_h * e_perp) / denom,
    })
}

/// Static drift of a carrier coupled to the photons, for `E || H` or `H = 0`:
/// `V = q E beta_c / (m_c nu_ph(1 - u/V) beta_ph_b)`.
///
/// `v_prev` is the carrier drift that enters the drag correction.
pub fn drift_velocity_dc(
    species: &CarrierSpecies,
    field: &FieldConfig,
    bath: &BathConfig,
    u: f64,
    v_prev: f64,
) -> Result<f64> {
    species.validate()?;
    field.validate()?;
    bath.validate()?;
    if field.h_field != 0.0 && field.geometry != Geometry::Parallel {
        return Err(domain("static drift formula needs E parallel to H or H = 0"));
    }
    let beta_ph_b = bath.beta_ph_b();
    if !(beta_ph_b > 0.0) {
        return Err(domain("beta_ph + beta_b must be > 0"));
    }
    let nu = drag_corrected_collision_frequency(species.nu_ph, u, v_prev)?;
    if nu == 0.0 {
        return Err(domain("collision frequency nu_ph is zero"));
    }
    Ok(species.charge_to_mass() * field.e_field * bath.beta_c() / (nu * beta_ph_b))
}

/// Drift of the coupled system, `u = (beta_e/beta) V+ + (beta_p/beta) V-`.
pub fn coupled_drift(bath: &BathConfig, v_plus: f64, v_minus: f64) -> Result<f64> {
    let beta = bath.total_beta();
    if !(beta > 0.0) {
        return Err(domain("total collision frequency beta must be > 0"));
    }
    Ok((bath.beta_e / beta) * v_plus + (bath.beta_p / beta) * v_minus)
}

/// Dressed carrier mass `m(T_i) = T_i / c^2`.
pub fn effective_mass(t_i: f64) -> Result<f64> {
    require_positive("T_i", t_i)?;
    Ok(t_i)
}

/// Cyclotron frequency of the dressed carrier, `e H / (m(T_i) c)`.
pub fn cyclotron_frequency(charge: f64, h_field: f64, t_i: f64) -> Result<f64> {
    require_non_negative("h_field", h_field)?;
    require_positive("charge", charge)?;
    Ok(charge * h_field / effective_mass(t_i)?)
}

/// Resonance linewidth `(3/2) (omega^2 / beta_c + beta_ph + beta_b)`.
pub fn resonance_linewidth(omega: f64, bath: &BathConfig) -> Result<f64> {
    let beta_c = bath.beta_c();
    if !(beta_c > 0.0) {
        return Err(domain("beta_c = beta_e + beta_p must be > 0"));
    }
    Ok(1.5 * (omega * omega / beta_c + bath.beta_ph_b()))
}
