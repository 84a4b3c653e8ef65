//! Quantities derived from the stationary and growing photon distributions:
//! the isotropic/anisotropic split, the mass and energy carried by one mode,
//! relaxation-time dilation and the Doppler relations.

use serde::{Deserialize, Serialize};

use crate::error::{divergence, domain, require_non_negative, require_positive, Result};
use crate::model::PhotonMode;
use crate::occupancy::{drift_parameter, require_speed};

/// Stationary occupancy split into an even and an odd part in `cos(alpha)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    pub isotropic: f64,
    pub anisotropic: f64,
}

/// `N_s = N_source / (1 - x^2)`, `N_alpha = x N_s`, summing to `N_source / (1 - x)`.
pub fn decompose(mode: &PhotonMode, u: f64, n_source: f64) -> Result<Decomposition> {
    mode.validate()?;
    require_speed("u", u)?;
    require_non_negative("N_source", n_source)?;
    let x = drift_parameter(mode, u);
    if x.abs() >= 1.0 {
        return Err(divergence(format!("|x| = {} >= 1: no stationary split", x.abs())));
    }
    let isotropic = n_source / (1.0 - x * x);
    Ok(Decomposition {
        isotropic,
        anisotropic: x * isotropic,
    })
}

/// Energy and mass carried by one stationary mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeMassReport {
    /// Mode energy `<eps> = M c^2`.
    pub avg_energy: f64,
    /// Mode mass `M`.
    pub mode_mass: f64,
    /// Mass of one photon in the mode.
    pub per_photon_mass: f64,
    /// Rest mass `m_0 = T / c^2`.
    pub rest_mass: f64,
    /// Photon number of the heated mode, `<N> T_i / T`.
    pub occupancy: f64,
    pub heated: bool,
}

/// Mode energy and masses for drift `u < c`.
///
/// `n_mode` is the unheated mode occupancy `<N(omega, T)>`, so
/// `M_0 c^2 = T <N>` and `m_0 = T`. Heating by `T_i` multiplies the photon
/// number by `T_i / T` (classical limit of the Planck occupancy), which
/// gives `M = M_0 (T_i/T)^2 / (1 - u^2)` and `m = m_0 (T_i/T) / (1 - u^2)`.
pub fn renormalized_mass_energy(t: f64, t_i: f64, u: f64, n_mode: f64) -> Result<ModeMassReport> {
    require_positive("T", t)?;
    require_positive("T_i", t_i)?;
    require_speed("u", u)?;
    require_positive("<N>", n_mode)?;
    if u >= 1.0 {
        return Err(domain(format!(
            "u/c = {u} >= 1: use supercritical_mass for the growing regime"
        )));
    }
    let lorentz = 1.0 - u * u;
    let rest_mass = t;
    let m0 = t * n_mode;
    if t_i == t {
        let mode_mass = m0 / lorentz;
        return Ok(ModeMassReport {
            avg_energy: mode_mass,
            mode_mass,
            per_photon_mass: rest_mass / lorentz,
            rest_mass,
            occupancy: n_mode,
            heated: false,
        });
    }
    let heating = t_i / t;
    let mode_mass = m0 * heating * heating / lorentz;
    Ok(ModeMassReport {
        avg_energy: mode_mass,
        mode_mass,
        per_photon_mass: rest_mass * heating / lorentz,
        rest_mass,
        occupancy: n_mode * heating,
        heated: true,
    })
}

/// Mass of one mode in the growing regime `u > c` after time `t`:
/// `M_0/(u - 1) {(e^{gamma t} - 1) + (T/T_i) e^{gamma t}}`, which is
/// `M_0/(u - 1) (2 e^{gamma t} - 1)` without heating.
pub fn supercritical_mass(m0: f64, u: f64, gamma_q: f64, t: f64, temp: f64, t_i: f64) -> Result<f64> {
    require_non_negative("M0", m0)?;
    require_positive("T", temp)?;
    require_positive("T_i", t_i)?;
    require_non_negative("t", t)?;
    require_speed("u", u)?;
    if u <= 1.0 {
        return Err(domain(format!("u/c = {u} <= 1: mode mass is stationary")));
    }
    require_positive("gamma_q", gamma_q)?;
    let growth = (gamma_q * t).exp();
    let bracket = if t_i == temp {
        2.0 * growth - 1.0
    } else {
        (gamma_q * t).exp_m1() + (temp / t_i) * growth
    };
    Ok(m0 / (u - 1.0) * bracket)
}

/// Relaxation time and free path of a heated, drifting mode:
/// `tau_i = tau_0 (1 - u^2)(T/T_i)`, `l_i = u tau_i`.
pub fn time_dilation(tau0: f64, u: f64, temp: f64, t_i: f64) -> Result<(f64, f64)> {
    require_positive("tau0", tau0)?;
    require_positive("T", temp)?;
    require_positive("T_i", t_i)?;
    require_speed("u", u)?;
    if u >= 1.0 {
        return Err(domain(format!("u/c = {u} >= 1: no stationary relaxation time")));
    }
    let tau = tau0 * (1.0 - u * u) * (temp / t_i);
    Ok((tau, u * tau))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DopplerDirection {
    EmitToObs,
    ObsToEmit,
}

/// `omega_obs = omega_em / (1 - u cos(alpha))` and its inverse.
///
/// `u cos(alpha) > 0` is a receding source.
pub fn doppler_shift(omega: f64, u: f64, cos_alpha: f64, direction: DopplerDirection) -> Result<f64> {
    let factor = doppler_factor(u, cos_alpha)?;
    Ok(match direction {
        DopplerDirection::EmitToObs => omega / factor,
        DopplerDirection::ObsToEmit => omega * factor,
    })
}

/// Wavelengths transform reciprocally: `lambda_obs = lambda_em (1 - u cos(alpha))`.
pub fn doppler_wavelength(lambda: f64, u: f64, cos_alpha: f64, direction: DopplerDirection) -> Result<f64> {
    let factor = doppler_factor(u, cos_alpha)?;
    Ok(match direction {
        DopplerDirection::EmitToObs => lambda * factor,
        DopplerDirection::ObsToEmit => lambda / factor,
    })
}

fn doppler_factor(u: f64, cos_alpha: f64) -> Result<f64> {
    if !(u.is_finite() && cos_alpha.is_finite()) {
        return Err(domain("Doppler inputs must be finite"));
    }
    let factor = 1.0 - u * cos_alpha;
    if factor == 0.0 {
        return Err(divergence("u cos(alpha) = 1: Doppler factor diverges"));
    }
    Ok(factor)
}
