//! Non-stationary photon occupancy under a drifting carrier system.
//!
//! Every mode obeys the linear rate equation
//!
//! ```text
//! dN/dt = gamma_q(t) N + beta N_source,   gamma_q(t) = beta (x(t) - 1)
//! ```
//!
//! with `x` the drift parameter. For constant drift the solution is closed
//! form and relaxes to `N_source / (1 - x)` when `x < 1`, grows linearly at
//! `x = 1` and exponentially above it. Cosine drift is solved with the
//! integrating factor and adaptive quadrature. [`ode_oracle`] integrates
//! the rate equation directly and is independent of both closed forms.

mod oracle;
pub mod quadrature;

use serde::{Deserialize, Serialize};

pub use oracle::{ode_oracle, ode_oracle_with_tolerance, DEFAULT_ORACLE_TOLERANCE};

use crate::error::{divergence, domain, require_non_negative, Error, Result};
use crate::model::{BathConfig, DriftLaw, DriftSpec, PhotonMode};
use crate::occupancy::drift_parameter;

/// Half-width of the band `|x - 1| <= THRESHOLD_BAND` treated as threshold.
pub const THRESHOLD_BAND: f64 = 1e-6;

/// Default relative tolerance of the AC quadrature.
pub const DEFAULT_AC_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Damped,
    Threshold,
    Amplified,
}

impl Regime {
    pub fn from_drift_parameter(x: f64) -> Self {
        if (x - 1.0).abs() <= THRESHOLD_BAND {
            Regime::Threshold
        } else if x < 1.0 {
            Regime::Damped
        } else {
            Regime::Amplified
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Damped => "damped",
            Regime::Threshold => "threshold",
            Regime::Amplified => "amplified",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionProblem {
    pub mode: PhotonMode,
    pub bath: BathConfig,
    pub drift: DriftSpec,
    /// Initial occupancy `N(q, 0)`.
    pub n0: f64,
    /// Bath source occupancy `N(q, T_i)`.
    pub n_source: f64,
    /// Strictly increasing, non-negative sample times.
    pub t_grid: Vec<f64>,
}

impl EvolutionProblem {
    pub fn validate(&self) -> Result<()> {
        self.mode.validate()?;
        self.bath.validate()?;
        self.drift.validate()?;
        require_non_negative("N0", self.n0)?;
        require_non_negative("N_source", self.n_source)?;
        if self.t_grid.is_empty() {
            return Err(domain("time grid is empty"));
        }
        if !(self.t_grid[0] >= 0.0) {
            return Err(domain("time grid must start at t >= 0"));
        }
        if self.t_grid.iter().any(|t| !t.is_finite()) {
            return Err(domain("time grid contains non-finite values"));
        }
        if self.t_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(domain("time grid must be strictly increasing"));
        }
        Ok(())
    }

    /// Drift parameter at the peak drift speed.
    pub fn drift_parameter(&self) -> f64 {
        drift_parameter(&self.mode, self.drift.u)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionResult {
    pub times: Vec<f64>,
    pub occupancies: Vec<f64>,
    pub regime: Regime,
    /// Growth increment at the peak drift speed.
    pub gamma_q: f64,
}

impl EvolutionResult {
    fn checked(self) -> Result<Self> {
        if let Some((t, n)) = self
            .times
            .iter()
            .zip(&self.occupancies)
            .find(|(_, n)| !(**n >= 0.0))
        {
            return Err(Error::Internal(format!(
                "occupancy {n} at t = {t} violates N >= 0"
            )));
        }
        Ok(self)
    }
}

/// Growth increment `gamma_q = beta (x - 1)`.
pub fn growth_increment(mode: &PhotonMode, bath: &BathConfig, u: f64) -> f64 {
    bath.total_beta() * (drift_parameter(mode, u) - 1.0)
}

/// Spatial amplification coefficient `Gamma_q = gamma_q / c`.
pub fn amplification_coefficient(gamma_q: f64) -> f64 {
    gamma_q
}

/// Occupancy at time `t` for constant drift.
///
/// Outside the threshold band this is
/// `N0 e^{gamma t} + beta N_s (e^{gamma t} - 1) / gamma`, algebraically
/// `(N0 - N_st) e^{gamma t} + N_st` with `N_st = N_s / (1 - x)`. Inside the
/// band the second-order expansion in `gamma t` is used.
pub fn constant_field_occupancy(n0: f64, n_source: f64, beta: f64, x: f64, t: f64) -> f64 {
    let gamma = beta * (x - 1.0);
    let gt = gamma * t;
    if (x - 1.0).abs() <= THRESHOLD_BAND {
        n0 * (1.0 + gt + 0.5 * gt * gt) + n_source * beta * t * (1.0 + 0.5 * gt)
    } else {
        n0 * gt.exp() + n_source * beta * gt.exp_m1() / gamma
    }
}

/// Closed-form evolution for a static driving field.
pub fn evolve_constant_field(problem: &EvolutionProblem) -> Result<EvolutionResult> {
    problem.validate()?;
    if problem.drift.law != DriftLaw::Constant {
        return Err(domain("evolve_constant_field needs a constant drift law"));
    }
    let beta = problem.bath.total_beta();
    let x = problem.drift_parameter();
    let occupancies = problem
        .t_grid
        .iter()
        .map(|&t| constant_field_occupancy(problem.n0, problem.n_source, beta, x, t))
        .collect();
    EvolutionResult {
        times: problem.t_grid.clone(),
        occupancies,
        regime: Regime::from_drift_parameter(x),
        gamma_q: beta * (x - 1.0),
    }
    .checked()
}

/// Evolution of an initial photon stream: identical closed form with the
/// initial occupancy replaced by the drifted-Planck value at the
/// observation point.
pub fn evolve_stream(problem: &EvolutionProblem, n_init_drifted: f64) -> Result<EvolutionResult> {
    require_non_negative("drifted initial occupancy", n_init_drifted)?;
    let stream = EvolutionProblem {
        n0: n_init_drifted,
        ..problem.clone()
    };
    evolve_constant_field(&stream)
}

/// Damping exponent `beta [t - x sin(omega t) / omega]` of the AC solution.
pub fn ac_damping_exponent(beta: f64, x: f64, omega: f64, t: f64) -> f64 {
    beta * (t - x * (omega * t).sin() / omega)
}

/// `Phi(b) - Phi(tau)` for `Phi(t) = -beta [t - x sin(omega t)/omega]`,
/// with the sine difference taken in product form.
fn ac_log_propagator(beta: f64, x: f64, omega: f64, b: f64, tau: f64) -> f64 {
    let dt = b - tau;
    let dsin = 2.0 * (0.5 * omega * (b + tau)).cos() * (0.5 * omega * dt).sin();
    -beta * (dt - x * dsin / omega)
}

/// Evolution under cosine drift `u(t) = u cos(omega t)`.
pub fn evolve_ac_field(problem: &EvolutionProblem) -> Result<EvolutionResult> {
    evolve_ac_field_with_tolerance(problem, DEFAULT_AC_TOLERANCE)
}

pub fn evolve_ac_field_with_tolerance(
    problem: &EvolutionProblem,
    rel_tol: f64,
) -> Result<EvolutionResult> {
    problem.validate()?;
    let omega = match problem.drift.law {
        DriftLaw::Cosine { omega_drive } => omega_drive,
        DriftLaw::Constant => return Err(domain("evolve_ac_field needs a cosine drift law")),
    };
    let beta = problem.bath.total_beta();
    let x = problem.drift_parameter();
    let half_period = std::f64::consts::PI / omega;

    // I(t) = int_0^t exp(Phi(t) - Phi(tau)) dtau, advanced grid point by grid point.
    let mut integral = 0.0;
    let mut prev = 0.0;
    let mut occupancies = Vec::with_capacity(problem.t_grid.len());
    for &t in &problem.t_grid {
        if t > prev {
            let carried = integral * ac_log_propagator(beta, x, omega, t, prev).exp();
            let pieces = ((t - prev) / half_period).ceil().max(1.0) as usize;
            let h = (t - prev) / pieces as f64;
            let mut fresh = 0.0;
            for k in 0..pieces {
                let a = prev + k as f64 * h;
                let b = if k + 1 == pieces { t } else { a + h };
                fresh += quadrature::integrate(
                    |tau| ac_log_propagator(beta, x, omega, t, tau).exp(),
                    a,
                    b,
                    rel_tol,
                    0.0,
                )?;
            }
            integral = carried + fresh;
            prev = t;
        }
        let decay = (-ac_damping_exponent(beta, x, omega, t)).exp();
        occupancies.push(problem.n0 * decay + beta * problem.n_source * integral);
    }
    EvolutionResult {
        times: problem.t_grid.clone(),
        occupancies,
        regime: Regime::from_drift_parameter(x),
        gamma_q: beta * (x - 1.0),
    }
    .checked()
}

/// Stationary occupancy `N_source / (1 - x)`, defined only below threshold.
pub fn stationary_limit(mode: &PhotonMode, u: f64, n_source: f64) -> Result<f64> {
    mode.validate()?;
    require_non_negative("N_source", n_source)?;
    let x = drift_parameter(mode, u);
    if x >= 1.0 {
        return Err(divergence(format!(
            "no stationary limit for x = {x} >= 1: occupancy grows without bound"
        )));
    }
    Ok(n_source / (1.0 - x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(x: f64, beta: f64, n0: f64, n_source: f64, t_grid: Vec<f64>) -> EvolutionProblem {
        EvolutionProblem {
            mode: PhotonMode::light_cone(1.0, 1.0).unwrap(),
            bath: BathConfig::uniform(beta, 1.0),
            drift: DriftSpec::constant(x),
            n0,
            n_source,
            t_grid,
        }
    }

    #[test]
    fn growth_increment_examples() {
        let m = PhotonMode::light_cone(1.0, 1.0).unwrap();
        assert_eq!(growth_increment(&m, &BathConfig::uniform(3.0, 1.0), 1.0), 0.0);
        assert_eq!(growth_increment(&m, &BathConfig::uniform(3.0, 1.0), 0.0), -3.0);
        assert_eq!(growth_increment(&m, &BathConfig::uniform(2.0, 1.0), 1.5), 1.0);
    }

    #[test]
    fn amplification_coefficient_examples() {
        let m = PhotonMode::light_cone(1.0, 1.0).unwrap();
        let b = BathConfig::uniform(1.0, 1.0);
        assert_eq!(amplification_coefficient(0.0), 0.0);
        assert_eq!(amplification_coefficient(growth_increment(&m, &b, 2.0)), 1.0);
        let transverse = PhotonMode::light_cone(1.0, 0.0).unwrap();
        let b = BathConfig::uniform(2.5, 1.0);
        assert_eq!(amplification_coefficient(growth_increment(&transverse, &b, 7.0)), -2.5);
    }

    #[test]
    fn constant_field_examples() {
        let r = evolve_constant_field(&problem(0.5, 1.0, 1.0, 1.0, vec![0.0, 2.0])).unwrap();
        assert_eq!(r.occupancies[0], 1.0);
        assert!((r.occupancies[1] - 1.6321205588285577).abs() < 1e-14);
        assert_eq!(r.regime, Regime::Damped);

        let r = evolve_constant_field(&problem(1.0, 1.0, 1.0, 2.0, vec![3.0])).unwrap();
        assert_eq!(r.occupancies[0], 7.0);
        assert_eq!(r.regime, Regime::Threshold);
        assert_eq!(r.gamma_q, 0.0);
    }

    #[test]
    fn constant_field_rejects_bad_inputs() {
        assert!(evolve_constant_field(&problem(0.5, 1.0, -1.0, 1.0, vec![0.0])).is_err());
        assert!(evolve_constant_field(&problem(0.5, 1.0, 1.0, -1.0, vec![0.0])).is_err());
        assert!(evolve_constant_field(&problem(0.5, 1.0, 1.0, 1.0, vec![1.0, 1.0])).is_err());
        assert!(evolve_constant_field(&problem(0.5, 1.0, 1.0, 1.0, vec![-1.0])).is_err());
        let mut p = problem(0.5, 1.0, 1.0, 1.0, vec![0.0]);
        p.drift = DriftSpec::cosine(0.5, 1.0);
        assert!(evolve_constant_field(&p).is_err());
        assert!(evolve_ac_field(&problem(0.5, 1.0, 1.0, 1.0, vec![0.0])).is_err());
    }

    #[test]
    fn threshold_seam_is_continuous() {
        for side in [-1.0, 1.0] {
            let x = 1.0 + side * THRESHOLD_BAND;
            let x_out = 1.0 + side * THRESHOLD_BAND * (1.0 + 1e-9);
            for &t in &[0.5, 3.0, 10.0] {
                let inside = constant_field_occupancy(1.3, 2.0, 1.0, x, t);
                let outside = constant_field_occupancy(1.3, 2.0, 1.0, x_out, t);
                assert!((inside - outside).abs() < 1e-9, "t = {t}: {inside} vs {outside}");
            }
        }
    }

    #[test]
    fn regime_classification() {
        assert_eq!(Regime::from_drift_parameter(0.0), Regime::Damped);
        assert_eq!(Regime::from_drift_parameter(1.0 - 0.5e-6), Regime::Threshold);
        assert_eq!(Regime::from_drift_parameter(1.0 + 2e-6), Regime::Amplified);
    }

    #[test]
    fn stream_examples() {
        let p = problem(0.5, 1.0, 1.0, 1.0, vec![0.0, 2.0]);
        let r = evolve_stream(&p, 1.5414940825367982).unwrap();
        assert_eq!(r.occupancies[0], 1.5414940825367982);
        assert!((r.occupancies[1] - 1.8313250993098378).abs() < 1e-14);
        let same = evolve_stream(&p, p.n0).unwrap();
        assert_eq!(same, evolve_constant_field(&p).unwrap());
    }

    #[test]
    fn stationary_examples() {
        let m = PhotonMode::light_cone(1.0, 1.0).unwrap();
        assert_eq!(stationary_limit(&m, 0.0, 0.7).unwrap(), 0.7);
        assert_eq!(stationary_limit(&m, 0.5, 0.7).unwrap(), 1.4);
        assert!(matches!(stationary_limit(&m, 1.0, 0.7), Err(Error::Divergence(_))));
        assert!(stationary_limit(&m, 1.3, 0.7).is_err());
    }

    #[test]
    fn ac_pure_relaxation_is_independent_of_frequency() {
        let times: Vec<f64> = (0..=20).map(|k| 0.25 * k as f64).collect();
        for omega in [0.1, 1.0, 7.0] {
            let mut p = problem(0.0, 1.3, 2.0, 0.5, times.clone());
            p.drift = DriftSpec::cosine(0.0, omega);
            let r = evolve_ac_field(&p).unwrap();
            assert_eq!(r.occupancies[0], 2.0);
            for (t, n) in r.times.iter().zip(&r.occupancies) {
                let e = (-1.3 * t).exp();
                let exact = 2.0 * e + 0.5 * (1.0 - e);
                assert!((n - exact).abs() < 1e-12 * exact, "omega {omega} t {t}");
            }
        }
    }

    #[test]
    fn ac_grid_may_start_after_zero() {
        let mut p = problem(0.8, 1.0, 1.0, 1.0, vec![0.0, 1.0, 4.0]);
        p.drift = DriftSpec::cosine(0.8, 2.0);
        let full = evolve_ac_field(&p).unwrap();
        p.t_grid = vec![4.0];
        let late = evolve_ac_field(&p).unwrap();
        assert!((full.occupancies[2] - late.occupancies[0]).abs() < 1e-11 * late.occupancies[0]);
    }

    #[test]
    fn ac_exponent_is_linear_at_half_periods() {
        let omega = 0.7;
        for k in 0..20 {
            let t = k as f64 * std::f64::consts::PI / omega;
            let e = ac_damping_exponent(1.9, 0.6, omega, t);
            assert!((e - 1.9 * t).abs() <= 1e-12 * (1.9 * t).max(1.0));
        }
    }
}
