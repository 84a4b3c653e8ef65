//! Equilibrium and drifted Planck occupancies, the bath mixture temperature
//! and the dimensionless drift parameter that separates damped from
//! amplified modes.

use crate::error::{divergence, domain, require_positive, Result};
use crate::model::{BathConfig, PhotonMode};

/// Bose-Einstein occupancy `1 / (exp(omega/T) - 1)`.
pub fn planck_occupancy(omega: f64, temperature: f64) -> Result<f64> {
    require_positive("omega", omega)?;
    require_positive("temperature", temperature)?;
    Ok(1.0 / (omega / temperature).exp_m1())
}

/// Planck occupancy at the drift-shifted energy `omega - u0 q cos(alpha)`.
pub fn drifted_planck_occupancy(mode: &PhotonMode, u0: f64, temperature: f64) -> Result<f64> {
    mode.validate()?;
    require_positive("temperature", temperature)?;
    let shifted = mode.omega - u0 * mode.q_mag * mode.cos_alpha;
    if !(shifted > 0.0) {
        return Err(divergence(format!(
            "drifted energy omega* = {shifted} <= 0 (u0 = {u0}, cos_alpha = {})",
            mode.cos_alpha
        )));
    }
    Ok(1.0 / (shifted / temperature).exp_m1())
}

/// Collision-weighted temperature `T_i` of the coupled carrier-photon system.
///
/// The carrier weight uses the aggregated `beta_c = beta_e + beta_p`.
pub fn mixture_temperature(bath: &BathConfig) -> Result<f64> {
    bath.validate()?;
    let beta = bath.total_beta();
    Ok((bath.beta_c() / beta) * bath.t_c
        + (bath.beta_ph / beta) * bath.t_ph
        + (bath.beta_b / beta) * bath.t_b)
}

/// Drift parameter `x = u q cos(alpha) / omega_q`.
///
/// `x < 1` damped, `x = 1` threshold, `x > 1` amplified.
pub fn drift_parameter(mode: &PhotonMode, u: f64) -> f64 {
    u * mode.q_mag * mode.cos_alpha / mode.omega
}

/// Validates that a drift speed is usable as a fraction of `c`.
pub(crate) fn require_speed(name: &str, u: f64) -> Result<()> {
    if u.is_finite() && u >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite and >= 0, got {u}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mode(q: f64, cos_alpha: f64) -> PhotonMode {
        PhotonMode::light_cone(q, cos_alpha).unwrap()
    }

    #[test]
    fn planck_spot_values() {
        let t = 1.7;
        assert!((planck_occupancy(t * 2f64.ln(), t).unwrap() - 1.0).abs() < 1e-14);
        assert!(planck_occupancy(40.0 * t, t).unwrap() < 1e-17);

        // Laurent series of 1/(e^x - 1) about x = 0, four terms.
        let x: f64 = 0.1;
        let series = 1.0 / x - 0.5 + x / 12.0 - x.powi(3) / 720.0;
        let direct = planck_occupancy(0.1 * t, t).unwrap();
        assert!((direct - series).abs() < 1e-9);
        assert!((direct - 9.50833194477505).abs() < 1e-12);
    }

    #[test]
    fn planck_rejects_non_positive_arguments() {
        assert!(matches!(planck_occupancy(0.0, 1.0), Err(crate::Error::Domain(_))));
        assert!(planck_occupancy(1.0, -1.0).is_err());
    }

    #[test]
    fn planck_is_positive_and_decreasing_on_log_grid() {
        let t = 1.0;
        let mut prev = f64::INFINITY;
        for k in 0..=400 {
            let ratio = 10f64.powf(-3.0 + k as f64 * (50f64.log10() + 3.0) / 400.0);
            let n = planck_occupancy(ratio * t, t).unwrap();
            assert!(n > 0.0 && n < prev, "at omega/T = {ratio}");
            prev = n;
        }
    }

    #[test]
    fn planck_increases_with_temperature() {
        let a = planck_occupancy(1.0, 0.5).unwrap();
        let b = planck_occupancy(1.0, 0.6).unwrap();
        assert!(b > a);
    }

    #[test]
    fn drifted_planck_spot_values() {
        let t = 1.3;
        let m = mode(2.0, 0.7);
        assert_eq!(
            drifted_planck_occupancy(&m, 0.0, t).unwrap(),
            planck_occupancy(m.omega, t).unwrap()
        );
        let transverse = mode(2.0, 0.0);
        assert_eq!(
            drifted_planck_occupancy(&transverse, 0.9, t).unwrap(),
            planck_occupancy(2.0, t).unwrap()
        );
        let collinear = mode(1.0, 1.0);
        let n = drifted_planck_occupancy(&collinear, 0.5, 1.0).unwrap();
        assert!((n - 1.5414940825367982).abs() < 1e-14);
    }

    #[test]
    fn drifted_planck_diverges_past_pole() {
        let m = mode(1.0, 1.0);
        assert!(matches!(
            drifted_planck_occupancy(&m, 1.0, 1.0),
            Err(crate::Error::Divergence(_))
        ));
        assert!(drifted_planck_occupancy(&m, 1.5, 1.0).is_err());
    }

    #[test]
    fn mixture_temperature_spot_values() {
        let mut bath = BathConfig::uniform(1.0, 2.5);
        assert!((mixture_temperature(&bath).unwrap() - 2.5).abs() < 1e-15);

        bath.t_ph = 0.7;
        bath.t_c = 9.0;
        assert_eq!(mixture_temperature(&bath).unwrap(), 0.7);

        // beta_c = beta_e + beta_p = 1, beta_ph = 1, beta_b = 1.
        let bath = BathConfig {
            beta_e: 0.4,
            beta_p: 0.6,
            beta_ph: 1.0,
            beta_b: 1.0,
            t_c: 3.0,
            t_ph: 2.0,
            t_b: 1.0,
            t: 1.0,
        };
        let hand = (1.0 / 3.0) * 3.0 + (1.0 / 3.0) * 2.0 + (1.0 / 3.0) * 1.0;
        assert!((mixture_temperature(&bath).unwrap() - hand).abs() < 1e-15);
        assert!((hand - 2.0).abs() < 1e-15);
    }

    #[test]
    fn drift_parameter_spot_values() {
        assert_eq!(drift_parameter(&mode(1.0, 0.3), 0.0), 0.0);
        assert_eq!(drift_parameter(&mode(1.0, 1.0), 1.0), 1.0);
        assert!((drift_parameter(&mode(3.0, 0.8), 1.5) - 1.2).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn mixture_temperature_is_convex(
            be in 0.0..5.0f64, bp in 0.0..5.0f64, bph in 0.0..5.0f64, bb in 0.0..5.0f64,
            tc in 0.01..10.0f64, tph in 0.01..10.0f64, tb in 0.01..10.0f64,
        ) {
            prop_assume!(be + bp + bph + bb > 1e-9);
            let bath = BathConfig { beta_e: be, beta_p: bp, beta_ph: bph, beta_b: bb,
                t_c: tc, t_ph: tph, t_b: tb, t: 1.0 };
            let ti = mixture_temperature(&bath).unwrap();
            let lo = tc.min(tph).min(tb);
            let hi = tc.max(tph).max(tb);
            prop_assert!(ti >= lo * (1.0 - 1e-14) && ti <= hi * (1.0 + 1e-14));
        }

        #[test]
        fn drifted_reduces_to_planck_at_zero_drift(q in 0.01..50.0f64, c in -1.0..1.0f64, t in 0.05..20.0f64) {
            let m = mode(q, c);
            prop_assert_eq!(drifted_planck_occupancy(&m, 0.0, t).unwrap(), planck_occupancy(q, t).unwrap());
        }

        #[test]
        fn drift_parameter_is_linear(u in 0.0..3.0f64, a in 0.0..4.0f64, c in -1.0..1.0f64, q in 0.1..10.0f64) {
            let m = mode(q, c);
            let lhs = drift_parameter(&m, a * u);
            let rhs = a * drift_parameter(&m, u);
            prop_assert!((lhs - rhs).abs() <= 1e-14 * rhs.abs().max(1e-300));
            let m2 = mode(q, c * 0.5);
            prop_assert!((drift_parameter(&m2, u) - 0.5 * drift_parameter(&m, u)).abs() < 1e-14);
        }
    }
}
