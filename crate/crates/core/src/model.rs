//! Domain types shared by every module.
//!
//! All quantities are in natural units with `hbar = c = 1`: speeds are stored
//! as fractions of `c`, frequencies and temperatures share the energy unit,
//! and momenta are measured in energy units. [`UnitScale`] converts to and
//! from a caller-chosen time and energy unit at the I/O boundary.

use serde::{Deserialize, Serialize};

use crate::error::{domain, require_non_negative, require_positive, Result};

/// One electromagnetic mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonMode {
    /// Momentum magnitude `q`.
    pub q_mag: f64,
    /// Cosine of the angle between the drift velocity and `q`.
    pub cos_alpha: f64,
    /// Mode frequency `omega_q`.
    pub omega: f64,
    /// Occupancy `N >= 0`.
    pub occupancy: f64,
}

impl PhotonMode {
    /// Builds a vacuum photon mode (`omega = c q`) with zero occupancy.
    pub fn light_cone(q_mag: f64, cos_alpha: f64) -> Result<Self> {
        Self::new(q_mag, cos_alpha, q_mag, 0.0)
    }

    pub fn new(q_mag: f64, cos_alpha: f64, omega: f64, occupancy: f64) -> Result<Self> {
        let mode = Self {
            q_mag,
            cos_alpha,
            omega,
            occupancy,
        };
        mode.validate()?;
        Ok(mode)
    }

    pub fn with_occupancy(mut self, occupancy: f64) -> Result<Self> {
        require_non_negative("occupancy", occupancy)?;
        self.occupancy = occupancy;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        require_non_negative("q_mag", self.q_mag)?;
        require_positive("omega", self.omega)?;
        require_non_negative("occupancy", self.occupancy)?;
        if !(self.cos_alpha.is_finite() && self.cos_alpha.abs() <= 1.0) {
            return Err(domain(format!(
                "cos_alpha must lie in [-1, 1], got {}",
                self.cos_alpha
            )));
        }
        Ok(())
    }
}

/// Collision frequencies of photons with each scatterer and the bath
/// temperatures they relax towards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BathConfig {
    /// Photon-electron collision frequency.
    pub beta_e: f64,
    /// Photon-positron collision frequency (pair creation included).
    pub beta_p: f64,
    /// Photon-photon collision frequency.
    pub beta_ph: f64,
    /// Photon-boundary collision frequency.
    pub beta_b: f64,
    /// Heated carrier temperature.
    pub t_c: f64,
    /// Photon bath temperature.
    pub t_ph: f64,
    /// Boundary temperature.
    pub t_b: f64,
    /// Initial equilibrium temperature before the fields are switched on.
    pub t: f64,
}

impl BathConfig {
    pub fn validate(&self) -> Result<()> {
        require_non_negative("beta_e", self.beta_e)?;
        require_non_negative("beta_p", self.beta_p)?;
        require_non_negative("beta_ph", self.beta_ph)?;
        require_non_negative("beta_b", self.beta_b)?;
        require_positive("t_c", self.t_c)?;
        require_positive("t_ph", self.t_ph)?;
        require_positive("t_b", self.t_b)?;
        require_positive("t", self.t)?;
        if self.total_beta() <= 0.0 {
            return Err(domain("total collision frequency beta must be > 0"));
        }
        Ok(())
    }

    /// `beta = beta_e + beta_p + beta_ph + beta_b`.
    pub fn total_beta(&self) -> f64 {
        self.beta_e + self.beta_p + self.beta_ph + self.beta_b
    }

    /// Carrier share `beta_c = beta_e + beta_p`.
    pub fn beta_c(&self) -> f64 {
        self.beta_e + self.beta_p
    }

    /// Non-carrier share `beta_ph + beta_b`.
    pub fn beta_ph_b(&self) -> f64 {
        self.beta_ph + self.beta_b
    }

    /// Bath with a single total rate `beta` carried by photon-photon
    /// collisions and every temperature equal to `t`.
    pub fn uniform(beta: f64, t: f64) -> Self {
        Self {
            beta_e: 0.0,
            beta_p: 0.0,
            beta_ph: beta,
            beta_b: 0.0,
            t_c: t,
            t_ph: t,
            t_b: t,
            t,
        }
    }
}

/// Time dependence of the coupled drift velocity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DriftLaw {
    /// `u(t) = u`.
    Constant,
    /// `u(t) = u cos(omega_drive t)`.
    Cosine { omega_drive: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriftSpec {
    /// Peak drift speed as a fraction of `c`.
    pub u: f64,
    pub law: DriftLaw,
    /// Electric field magnitude (Gaussian units).
    #[serde(default)]
    pub e_field: f64,
    /// Magnetic field magnitude (Gaussian units).
    #[serde(default)]
    pub h_field: f64,
}

impl DriftSpec {
    pub fn constant(u: f64) -> Self {
        Self {
            u,
            law: DriftLaw::Constant,
            e_field: 0.0,
            h_field: 0.0,
        }
    }

    pub fn cosine(u: f64, omega_drive: f64) -> Self {
        Self {
            u,
            law: DriftLaw::Cosine { omega_drive },
            e_field: 0.0,
            h_field: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_non_negative("u", self.u)?;
        require_non_negative("e_field", self.e_field)?;
        require_non_negative("h_field", self.h_field)?;
        if let DriftLaw::Cosine { omega_drive } = self.law {
            require_positive("omega_drive", omega_drive)?;
        }
        Ok(())
    }
}

/// Conversion between internal natural units and an external unit system.
///
/// `time` is the external duration of one internal time unit (typically
/// `1/beta`), `energy` the external size of one internal energy unit
/// (typically `T`). Rates scale inversely to time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitScale {
    pub time: f64,
    pub energy: f64,
}

impl Default for UnitScale {
    fn default() -> Self {
        Self {
            time: 1.0,
            energy: 1.0,
        }
    }
}

impl UnitScale {
    pub fn new(time: f64, energy: f64) -> Result<Self> {
        require_positive("time unit", time)?;
        require_positive("energy unit", energy)?;
        Ok(Self { time, energy })
    }

    pub fn time_to_internal(&self, t: f64) -> f64 {
        t / self.time
    }

    pub fn time_from_internal(&self, t: f64) -> f64 {
        t * self.time
    }

    pub fn rate_to_internal(&self, r: f64) -> f64 {
        r * self.time
    }

    pub fn rate_from_internal(&self, r: f64) -> f64 {
        r / self.time
    }

    pub fn energy_to_internal(&self, e: f64) -> f64 {
        e / self.energy
    }

    pub fn energy_from_internal(&self, e: f64) -> f64 {
        e * self.energy
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn light_cone_sets_frequency_from_momentum() {
        let m = PhotonMode::light_cone(2.5, -0.3).unwrap();
        assert_eq!(m.omega, 2.5);
        assert_eq!(m.occupancy, 0.0);
    }

    #[test]
    fn mode_rejects_bad_cosine_and_occupancy() {
        assert!(PhotonMode::new(1.0, 1.0 + 1e-12, 1.0, 0.0).is_err());
        assert!(PhotonMode::new(1.0, 0.5, 1.0, -1.0).is_err());
        assert!(PhotonMode::new(1.0, f64::NAN, 1.0, 0.0).is_err());
        assert!(PhotonMode::light_cone(0.0, 0.0).is_err());
    }

    #[test]
    fn bath_requires_some_collisions() {
        let mut bath = BathConfig::uniform(1.0, 1.0);
        assert!(bath.validate().is_ok());
        bath.beta_ph = 0.0;
        assert!(bath.validate().is_err());
        let mut bath = BathConfig::uniform(1.0, 1.0);
        bath.t_b = 0.0;
        assert!(bath.validate().is_err());
    }

    #[test]
    fn cosine_drift_needs_positive_frequency() {
        assert!(DriftSpec::cosine(0.5, 0.0).validate().is_err());
        assert!(DriftSpec::cosine(0.5, 1.0).validate().is_ok());
        assert!(DriftSpec::constant(-0.1).validate().is_err());
    }

    #[test]
    fn unit_scale_round_trips() {
        let s = UnitScale::new(2.0e-9, 0.025).unwrap();
        let t = 3.7e-9;
        assert!((s.time_from_internal(s.time_to_internal(t)) - t).abs() < 1e-24);
        assert!((s.rate_to_internal(s.rate_from_internal(0.4)) - 0.4).abs() < 1e-15);
        assert!((s.energy_from_internal(2.0) - 0.05).abs() < 1e-15);
        assert!(UnitScale::new(0.0, 1.0).is_err());
    }
}
