//! TOML experiment configs for the batch runner.
//!
//! ```toml
//! [grid]
//! halfwidth = 16.0
//! step = 0.0078125
//!
//! [weights]
//! epsilon_t = 0.5
//! epsilon_omega = 0.5
//! w_t = { kind = "constant", level = 1.0 }
//! w_omega = { kind = "sobolev-omega", order = 1 }
//!
//! [target]
//! preset = "gaussian"    # or preset = "bump", or csv = "path/to/signal.csv"
//! alpha = 1.0
//! tau = 0.0
//!
//! [dictionary]
//! alpha_grid = [1.0, 2.0, 4.0]
//! tau_grid = [-1.0, 0.0, 1.0]
//! # window_csv = "window.csv"   # windowed atoms instead of Gaussians
//!
//! [schedule]
//! alphas = [1.0, 4.0, 16.0, 64.0, 256.0]
//!
//! [outputs]
//! dir = "out"
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::grid::{Grid, Signal};
use crate::io;
use crate::weights::{WeightKind, WeightSpec};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub grid: GridConfig,
    pub weights: WeightsConfig,
    #[serde(default)]
    pub target: Option<TargetConfig>,
    #[serde(default)]
    pub dictionary: Option<DictionaryConfig>,
    #[serde(default)]
    pub window: Option<WindowConfig>,
    #[serde(default)]
    pub schedule: ScheduleConfig,
    pub outputs: OutputsConfig,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub halfwidth: f64,
    pub step: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsConfig {
    pub w_t: WeightConfig,
    pub w_omega: WeightConfig,
    #[serde(default = "default_epsilon")]
    pub epsilon_t: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon_omega: f64,
}

fn default_epsilon() -> f64 {
    0.5
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightConfig {
    pub kind: String,
    #[serde(default)]
    pub level: Option<f64>,
    #[serde(default)]
    pub exponent: Option<f64>,
    #[serde(default)]
    pub rate: Option<f64>,
    #[serde(default)]
    pub order: Option<u32>,
    #[serde(default)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetConfig {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub tau: Option<f64>,
    #[serde(default)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DictionaryConfig {
    #[serde(default)]
    pub alpha_grid: Vec<f64>,
    #[serde(default)]
    pub tau_grid: Vec<f64>,
    #[serde(default)]
    pub window_csv: Option<PathBuf>,
    #[serde(default)]
    pub atoms_csv: Option<PathBuf>,
    #[serde(default = "default_n_atoms")]
    pub greedy_atoms: usize,
    #[serde(default)]
    pub ridge: Option<f64>,
}

fn default_n_atoms() -> usize {
    8
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub csv: Option<PathBuf>,
    #[serde(default = "default_window_delta")]
    pub delta: f64,
}

fn default_window_delta() -> f64 {
    0.5
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleConfig {
    #[serde(default = "default_alphas")]
    pub alphas: Vec<f64>,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        ScheduleConfig { alphas: default_alphas() }
    }
}

fn default_alphas() -> Vec<f64> {
    vec![1.0, 4.0, 16.0, 64.0, 256.0]
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputsConfig {
    pub dir: PathBuf,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::config(format!("{}: {e}", path.display())))
    }

    pub fn build_grid(&self) -> Result<Grid> {
        Grid::new(self.grid.halfwidth, self.grid.step)
    }

    /// Resolve a weight config against the halfwidth of the grid it lives on.
    pub fn build_weight(
        &self,
        which: &WeightConfig,
        halfwidth: f64,
        base_dir: &Path,
    ) -> Result<WeightSpec> {
        let kind = which.kind.as_str();
        match kind {
            "constant" => WeightSpec::new(
                WeightKind::Constant { level: which.level.unwrap_or(1.0) },
                halfwidth,
            ),
            "power" => WeightSpec::new(
                WeightKind::Power {
                    exponent: which
                        .exponent
                        .ok_or_else(|| Error::config("power weight needs `exponent`"))?,
                },
                halfwidth,
            ),
            "exp-abs" => WeightSpec::new(
                WeightKind::ExpAbs {
                    rate: which.rate.ok_or_else(|| Error::config("exp-abs weight needs `rate`"))?,
                },
                halfwidth,
            ),
            "gauss-square" => WeightSpec::new(
                WeightKind::GaussSquare { rate: which.rate.unwrap_or(1.0) },
                halfwidth,
            ),
            "sobolev-omega" => WeightSpec::new(
                WeightKind::SobolevOmega {
                    order: which
                        .order
                        .ok_or_else(|| Error::config("sobolev-omega weight needs `order`"))?,
                },
                halfwidth,
            ),
            "table" => {
                let rel = which
                    .csv
                    .as_ref()
                    .ok_or_else(|| Error::config("table weight needs `csv`"))?;
                io::read_weight_table_csv(&base_dir.join(rel), halfwidth)
            }
            other => Err(Error::config(format!("unknown weight kind {other:?}"))),
        }
    }

    /// Materialize the target signal on the grid.
    pub fn build_target(&self, grid: &Grid, base_dir: &Path) -> Result<Signal> {
        let Some(target) = &self.target else {
            return Err(Error::config("this subcommand needs a [target] section"));
        };
        if let Some(csv) = &target.csv {
            let signal = io::read_signal_csv(&base_dir.join(csv))?;
            if signal.grid != *grid {
                return Err(Error::config("target csv grid disagrees with [grid]"));
            }
            return Ok(signal);
        }
        match target.preset.as_deref() {
            Some("gaussian") | None => {
                let atom = crate::atoms::GaussianAtom::new(
                    target.alpha.unwrap_or(1.0),
                    target.tau.unwrap_or(0.0),
                )?;
                atom.validate_on(grid)?;
                Ok(atom.signal(grid))
            }
            Some("bump") => Ok(Signal::from_real_fn(*grid, |t| {
                if t.abs() < 1.0 { (1.0 - t * t).powi(2) } else { 0.0 }
            })),
            Some(other) => Err(Error::config(format!("unknown target preset {other:?}"))),
        }
    }
}
