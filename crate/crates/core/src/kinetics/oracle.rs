//! Direct RK4 integration of the photon rate equation, used as ground truth
//! for the closed-form and quadrature solutions.

use super::{EvolutionProblem, EvolutionResult, Regime};
use crate::error::{require_positive, Error, Result};
use crate::model::DriftLaw;

/// Default step-halving tolerance (max relative difference over the grid).
pub const DEFAULT_ORACLE_TOLERANCE: f64 = 1e-10;

struct RateEquation {
    beta: f64,
    x: f64,
    omega: Option<f64>,
    source: f64,
}

impl RateEquation {
    fn rhs(&self, t: f64, n: f64) -> f64 {
        let x = match self.omega {
            Some(w) => self.x * (w * t).cos(),
            None => self.x,
        };
        self.beta * (x - 1.0) * n + self.beta * self.source
    }

    fn rk4(&self, t: f64, n: f64, h: f64) -> f64 {
        let k1 = self.rhs(t, n);
        let k2 = self.rhs(t + 0.5 * h, n + 0.5 * h * k1);
        let k3 = self.rhs(t + 0.5 * h, n + 0.5 * h * k2);
        let k4 = self.rhs(t + h, n + h * k3);
        n + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    }

    fn solve(&self, n0: f64, grid: &[f64], step: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(grid.len());
        let mut t = 0.0;
        let mut n = n0;
        for &target in grid {
            let span = target - t;
            if span > 0.0 {
                let steps = (span / step).ceil().max(1.0) as usize;
                let h = span / steps as f64;
                for k in 0..steps {
                    n = self.rk4(t + k as f64 * h, n, h);
                }
                t = target;
            }
            out.push(n);
        }
        out
    }
}

/// Integrates `dN/dt = gamma_q(t) N + beta N_source` with classic RK4.
pub fn ode_oracle(problem: &EvolutionProblem, step: f64) -> Result<EvolutionResult> {
    ode_oracle_with_tolerance(problem, step, DEFAULT_ORACLE_TOLERANCE)
}

/// As [`ode_oracle`], failing when a run at `step / 2` differs from the run
/// at `step` by more than `tol` (relative) anywhere on the grid.
pub fn ode_oracle_with_tolerance(
    problem: &EvolutionProblem,
    step: f64,
    tol: f64,
) -> Result<EvolutionResult> {
    problem.validate()?;
    require_positive("step", step)?;
    let eq = RateEquation {
        beta: problem.bath.total_beta(),
        x: problem.drift_parameter(),
        omega: match problem.drift.law {
            DriftLaw::Constant => None,
            DriftLaw::Cosine { omega_drive } => Some(omega_drive),
        },
        source: problem.n_source,
    };
    let coarse = eq.solve(problem.n0, &problem.t_grid, step);
    let fine = eq.solve(problem.n0, &problem.t_grid, 0.5 * step);
    let worst = coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| (a - b).abs() / b.abs().max(f64::MIN_POSITIVE))
        .filter(|r| !r.is_nan())
        .fold(0.0, f64::max);
    if worst > tol || fine.iter().any(|n| !n.is_finite()) {
        return Err(Error::Numeric {
            what: format!("RK4 step halving from {step} did not converge"),
            achieved: worst,
        });
    }
    Ok(EvolutionResult {
        times: problem.t_grid.clone(),
        occupancies: fine,
        regime: Regime::from_drift_parameter(eq.x),
        gamma_q: eq.beta * (eq.x - 1.0),
    })
}
