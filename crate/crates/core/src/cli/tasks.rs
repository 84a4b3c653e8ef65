//! Evaluation of each task into a [`Report`].

use rayon::prelude::*;

use super::config::{
    DopplerConfig, EvolveConfig, ObservablesConfig, PulseConfig, RunConfig, SweepConfig, Task,
    DEFAULT_MAX_POINTS,
};
use super::output::{Cell, Report};
use super::CliError;
use crate::error::Error;
use crate::kinetics::{
    amplification_coefficient, evolve_ac_field, evolve_constant_field, evolve_stream,
    growth_increment, stationary_limit, EvolutionProblem, Regime,
};
use crate::model::{DriftLaw, PhotonMode};
use crate::observables::{
    decompose, doppler_shift, doppler_wavelength, renormalized_mass_energy, supercritical_mass,
    time_dilation, DopplerDirection,
};
use crate::occupancy::{drift_parameter, drifted_planck_occupancy, mixture_temperature, planck_occupancy};
use crate::pulse::{self, ApparentVelocity, PropagateOptions};

/// Runs the task named in `config` on the current rayon pool.
pub fn execute(config: &RunConfig) -> Result<Report, CliError> {
    let missing = || CliError::Config(format!("missing `{}` block", config.task.as_str()));
    match config.task {
        Task::Evolve => evolve(config.evolve.as_ref().ok_or_else(missing)?, config),
        Task::Sweep => sweep(config.sweep.as_ref().ok_or_else(missing)?, config),
        Task::Pulse => pulse_task(config.pulse.as_ref().ok_or_else(missing)?),
        Task::Doppler => doppler(config.doppler.as_ref().ok_or_else(missing)?),
        Task::Observables => observables(config.observables.as_ref().ok_or_else(missing)?),
    }
}

fn evolve(cfg: &EvolveConfig, run: &RunConfig) -> Result<Report, CliError> {
    let mode = cfg.mode.to_mode()?;
    cfg.bath.validate()?;
    let t_i = mixture_temperature(&cfg.bath)?;
    let n_source = match cfg.n_source {
        Some(n) => n,
        None => planck_occupancy(mode.omega, t_i)?,
    };
    let n0 = match (cfg.n0, cfg.stream_u0) {
        (Some(_), Some(_)) => {
            return Err(CliError::Config("give at most one of `n0` and `stream_u0`".into()))
        }
        (Some(n), None) => n,
        (None, Some(u0)) => drifted_planck_occupancy(&mode, u0, cfg.bath.t)?,
        (None, None) => planck_occupancy(mode.omega, cfg.bath.t)?,
    };
    let t_grid = cfg.times.materialize("evolve.times", &mut run.rng())?;
    let problem = EvolutionProblem {
        mode,
        bath: cfg.bath,
        drift: cfg.drift,
        n0,
        n_source,
        t_grid,
    };
    let result = match (cfg.drift.law, cfg.stream_u0) {
        (DriftLaw::Constant, Some(_)) => evolve_stream(&problem, n0)?,
        (DriftLaw::Constant, None) => evolve_constant_field(&problem)?,
        (DriftLaw::Cosine { .. }, _) => evolve_ac_field(&problem)?,
    };

    let x = problem.drift_parameter();
    let mut report = Report::new(&["t", "N", "regime"]);
    report.note("x", x);
    report.note("regime", result.regime.as_str());
    report.note("gamma_q", result.gamma_q);
    report.note("Gamma_q", amplification_coefficient(result.gamma_q));
    report.note("T_i", t_i);
    report.note("n0", n0);
    report.note("n_source", n_source);
    if cfg.drift.law == DriftLaw::Constant {
        report.note("n_stationary", stationary_limit(&mode, cfg.drift.u, n_source).ok());
    }
    for (t, n) in result.times.iter().zip(&result.occupancies) {
        report.push(vec![(*t).into(), (*n).into(), result.regime.as_str().into()]);
    }
    Ok(report)
}

fn sweep(cfg: &SweepConfig, run: &RunConfig) -> Result<Report, CliError> {
    let cap = cfg.max_points.unwrap_or(DEFAULT_MAX_POINTS);
    let total = [&cfg.u, &cfg.cos_alpha, &cfg.q]
        .iter()
        .try_fold(1u64, |acc, axis| acc.checked_mul(axis.len() as u64))
        .unwrap_or(u64::MAX);
    if total > cap {
        return Err(CliError::Config(format!(
            "sweep has {total} grid points, above the cap of {cap} (raise `max_points`)"
        )));
    }
    cfg.bath.validate()?;
    let t_i = mixture_temperature(&cfg.bath)?;
    let mut rng = run.rng();
    let us = cfg.u.materialize("sweep.u", &mut rng)?;
    let cosines = cfg.cos_alpha.materialize("sweep.cos_alpha", &mut rng)?;
    let qs = cfg.q.materialize("sweep.q", &mut rng)?;

    let (nc, nq) = (cosines.len(), qs.len());
    let rows: Vec<Vec<Cell>> = (0..us.len() * nc * nq)
        .into_par_iter()
        .map(|k| {
            let u = us[k / (nc * nq)];
            let cos_alpha = cosines[(k / nq) % nc];
            let q = qs[k % nq];
            sweep_point(&cfg.bath, t_i, cfg.n_source, u, cos_alpha, q)
        })
        .collect::<Result<_, Error>>()?;

    let mut report = Report::new(&[
        "u",
        "cos_alpha",
        "omega",
        "x",
        "regime",
        "gamma_q",
        "Gamma_q",
        "n_source",
        "n_stationary",
        "divergent",
    ]);
    report.note("T_i", t_i);
    report.note("points", total.to_string().as_str());
    report.rows = rows;
    Ok(report)
}

/// One sweep row; the mode sits on the light cone, `omega = q`.
pub fn sweep_point(
    bath: &crate::model::BathConfig,
    t_i: f64,
    fixed_source: Option<f64>,
    u: f64,
    cos_alpha: f64,
    q: f64,
) -> crate::Result<Vec<Cell>> {
    crate::occupancy::require_speed("u", u)?;
    let mode = PhotonMode::light_cone(q, cos_alpha)?;
    let x = drift_parameter(&mode, u);
    let gamma = growth_increment(&mode, bath, u);
    let n_source = match fixed_source {
        Some(n) => n,
        None => planck_occupancy(mode.omega, t_i)?,
    };
    let stationary = match stationary_limit(&mode, u, n_source) {
        Ok(n) => Some(n),
        Err(Error::Divergence(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(vec![
        u.into(),
        cos_alpha.into(),
        mode.omega.into(),
        x.into(),
        Regime::from_drift_parameter(x).as_str().into(),
        gamma.into(),
        amplification_coefficient(gamma).into(),
        n_source.into(),
        stationary.into(),
        stationary.is_none().into(),
    ])
}

fn pulse_task(cfg: &PulseConfig) -> Result<Report, CliError> {
    let mut spec = pulse::build_pulse_spectrum(cfg.omega_bar, cfg.width, cfg.points)?;
    if cfg.chirp != 0.0 {
        spec = spec.with_chirp(cfg.chirp)?;
    }
    let options = PropagateOptions {
        samples_per_duration: cfg
            .samples_per_duration
            .unwrap_or(PropagateOptions::default().samples_per_duration),
    };
    let result = pulse::propagate_with(&spec, &cfg.barrier, &options)?;
    let velocity = pulse::apparent_velocity(result.t_peak_in, result.t_peak_out, cfg.barrier.length);

    let mut report = Report::new(&["t_in", "intensity_in", "t_out", "intensity_out"]);
    report.note("t_peak_in", result.t_peak_in);
    report.note("t_peak_out", result.t_peak_out);
    report.note("transit", result.t_peak_out - result.t_peak_in);
    report.note("v_app", velocity.value());
    report.note("infinite_velocity", velocity == ApparentVelocity::Infinite);
    report.note("superluminal", velocity.is_superluminal());
    report.note("negative_velocity", velocity.is_negative());
    report.note("correlation", result.correlation()?);
    report.note("power_in", spec.total_power());
    report.note("power_out", result.output.total_power());
    report.note("duration", spec.duration);
    report.note("time_step", result.input_profile.step());
    let input = &result.input_profile;
    let output = &result.output_profile;
    for j in 0..input.times.len() {
        report.push(vec![
            input.times[j].into(),
            input.envelope[j].norm_sqr().into(),
            output.times[j].into(),
            output.envelope[j].norm_sqr().into(),
        ]);
    }
    Ok(report)
}

fn doppler(cfg: &DopplerConfig) -> Result<Report, CliError> {
    let mut report = Report::new(&[
        "omega_in",
        "u",
        "cos_alpha",
        "direction",
        "omega_out",
        "wavelength_in",
        "wavelength_out",
    ]);
    for case in &cfg.cases {
        let omega_out = doppler_shift(case.omega, case.u, case.cos_alpha, case.direction)?;
        let lambda_in = 2.0 * std::f64::consts::PI / case.omega;
        let lambda_out = doppler_wavelength(lambda_in, case.u, case.cos_alpha, case.direction)?;
        let direction = match case.direction {
            DopplerDirection::EmitToObs => "emit_to_obs",
            DopplerDirection::ObsToEmit => "obs_to_emit",
        };
        report.push(vec![
            case.omega.into(),
            case.u.into(),
            case.cos_alpha.into(),
            direction.into(),
            omega_out.into(),
            lambda_in.into(),
            lambda_out.into(),
        ]);
    }
    Ok(report)
}

fn observables(cfg: &ObservablesConfig) -> Result<Report, CliError> {
    let mut report = Report::new(&["quantity", "value"]);
    let mut add = |name: &str, value: f64| report.push(vec![name.into(), value.into()]);

    if let Some(n_mode) = cfg.n_mode {
        let mass = renormalized_mass_energy(cfg.t, cfg.t_i, cfg.u, n_mode)?;
        add("avg_energy", mass.avg_energy);
        add("mode_mass", mass.mode_mass);
        add("per_photon_mass", mass.per_photon_mass);
        add("rest_mass", mass.rest_mass);
        add("heated_occupancy", mass.occupancy);
        add("heated", if mass.heated { 1.0 } else { 0.0 });
    }
    if let Some(tau0) = cfg.tau0 {
        let (tau, length) = time_dilation(tau0, cfg.u, cfg.t, cfg.t_i)?;
        add("proper_time", tau);
        add("path_length", length);
    }
    match (&cfg.mode, cfg.n_source) {
        (Some(mode), Some(n_source)) => {
            let d = decompose(&mode.to_mode()?, cfg.u, n_source)?;
            add("n_isotropic", d.isotropic);
            add("n_anisotropic", d.anisotropic);
            add("n_total", d.isotropic + d.anisotropic);
        }
        (None, None) => {}
        _ => {
            return Err(CliError::Config(
                "decomposition needs both `mode` and `n_source`".into(),
            ))
        }
    }
    if let Some(sc) = cfg.supercritical {
        let m = supercritical_mass(sc.m0, cfg.u, sc.gamma_q, sc.time, cfg.t, cfg.t_i)?;
        add("supercritical_mass", m);
    }
    Ok(report)
}
