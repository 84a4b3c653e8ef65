//! Run configuration as read from JSON.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::model::{BathConfig, DriftSpec, PhotonMode};
use crate::observables::DopplerDirection;
use crate::pulse::BarrierSpec;

/// Grid points a sweep may evaluate unless the config raises the cap.
pub const DEFAULT_MAX_POINTS: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Evolve,
    Sweep,
    Pulse,
    Doppler,
    Observables,
}

impl Task {
    pub fn as_str(self) -> &'static str {
        match self {
            Task::Evolve => "evolve",
            Task::Sweep => "sweep",
            Task::Pulse => "pulse",
            Task::Doppler => "doppler",
            Task::Observables => "observables",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Destination file; standard output when absent.
    #[serde(default)]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub task: Task,
    #[serde(default)]
    pub evolve: Option<EvolveConfig>,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub pulse: Option<PulseConfig>,
    #[serde(default)]
    pub doppler: Option<DopplerConfig>,
    #[serde(default)]
    pub observables: Option<ObservablesConfig>,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub seed: u64,
}

/// A photon mode; `omega` defaults to the vacuum value `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeConfig {
    pub q: f64,
    pub cos_alpha: f64,
    #[serde(default)]
    pub omega: Option<f64>,
}

impl ModeConfig {
    pub fn to_mode(&self) -> crate::Result<PhotonMode> {
        PhotonMode::new(self.q, self.cos_alpha, self.omega.unwrap_or(self.q), 0.0)
    }
}

/// A one-dimensional grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Axis {
    Values(Vec<f64>),
    Linspace { start: f64, stop: f64, points: usize },
    /// Uniform draws from `[min, max)`, sorted ascending.
    Random { min: f64, max: f64, points: usize },
}

impl Axis {
    pub fn len(&self) -> usize {
        match self {
            Axis::Values(v) => v.len(),
            Axis::Linspace { points, .. } | Axis::Random { points, .. } => *points,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_random(&self) -> bool {
        matches!(self, Axis::Random { .. })
    }

    pub fn materialize(&self, name: &str, rng: &mut ChaCha8Rng) -> Result<Vec<f64>, CliError> {
        let values = match self {
            Axis::Values(v) => v.clone(),
            &Axis::Linspace { start, stop, points } => {
                if points == 1 {
                    vec![start]
                } else {
                    let step = (stop - start) / (points - 1) as f64;
                    (0..points)
                        .map(|k| if k + 1 == points { stop } else { start + k as f64 * step })
                        .collect()
                }
            }
            &Axis::Random { min, max, points } => {
                if !(min < max) {
                    return Err(CliError::Config(format!("{name}: random axis needs min < max")));
                }
                let mut v: Vec<f64> = (0..points).map(|_| rng.gen_range(min..max)).collect();
                v.sort_by(f64::total_cmp);
                v
            }
        };
        if values.is_empty() {
            return Err(CliError::Config(format!("{name}: grid must have at least one point")));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(CliError::Config(format!("{name}: non-finite grid value {bad}")));
        }
        Ok(values)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveConfig {
    pub mode: ModeConfig,
    pub bath: BathConfig,
    pub drift: DriftSpec,
    /// Initial occupancy; Planck at the bath temperature `t` when absent.
    #[serde(default)]
    pub n0: Option<f64>,
    /// Source occupancy; Planck at the mixture temperature when absent.
    #[serde(default)]
    pub n_source: Option<f64>,
    /// Start from the drifted Planck occupancy at this drift speed.
    #[serde(default)]
    pub stream_u0: Option<f64>,
    pub times: Axis,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub bath: BathConfig,
    pub u: Axis,
    pub cos_alpha: Axis,
    /// Momentum magnitudes; each mode sits on the light cone.
    pub q: Axis,
    /// Fixed source occupancy; per-mode Planck at the mixture temperature when absent.
    #[serde(default)]
    pub n_source: Option<f64>,
    #[serde(default)]
    pub max_points: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseConfig {
    pub omega_bar: f64,
    pub width: f64,
    pub points: usize,
    #[serde(default)]
    pub chirp: f64,
    pub barrier: BarrierSpec,
    #[serde(default)]
    pub samples_per_duration: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DopplerCase {
    pub omega: f64,
    pub u: f64,
    pub cos_alpha: f64,
    pub direction: DopplerDirection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DopplerConfig {
    pub cases: Vec<DopplerCase>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupercriticalConfig {
    pub m0: f64,
    pub gamma_q: f64,
    pub time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservablesConfig {
    /// Equilibrium temperature.
    pub t: f64,
    /// Effective (heated) temperature.
    pub t_i: f64,
    pub u: f64,
    /// Unheated mode occupancy; enables the mass report (needs `u < 1`).
    #[serde(default)]
    pub n_mode: Option<f64>,
    #[serde(default)]
    pub tau0: Option<f64>,
    #[serde(default)]
    pub mode: Option<ModeConfig>,
    #[serde(default)]
    pub n_source: Option<f64>,
    #[serde(default)]
    pub supercritical: Option<SupercriticalConfig>,
}

impl RunConfig {
    /// Parses and checks structure; parse failures name the line and column.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let config: RunConfig =
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.check_blocks()?;
        Ok(config)
    }

    fn check_blocks(&self) -> Result<(), CliError> {
        let present = [
            (Task::Evolve, self.evolve.is_some()),
            (Task::Sweep, self.sweep.is_some()),
            (Task::Pulse, self.pulse.is_some()),
            (Task::Doppler, self.doppler.is_some()),
            (Task::Observables, self.observables.is_some()),
        ];
        for (task, is_present) in present {
            if task == self.task && !is_present {
                return Err(CliError::Config(format!(
                    "task `{}` needs a `{}` block",
                    task.as_str(),
                    task.as_str()
                )));
            }
            if task != self.task && is_present {
                return Err(CliError::Config(format!(
                    "block `{}` given but task is `{}`",
                    task.as_str(),
                    self.task.as_str()
                )));
            }
        }
        Ok(())
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}
