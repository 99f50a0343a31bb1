//! Run configuration: JSON file values overridden by command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use hardy_core::hermite_basis::{DEFAULT_HALF_WIDTH, DEFAULT_NUM_POINTS};
use hardy_core::verify::VerifyConfig;
use hardy_core::Grid;
use serde::Deserialize;

use crate::error::CliError;
use crate::output::Format;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridOverrides {
    pub half_width: Option<f64>,
    pub num_points: Option<usize>,
}

/// Contents of `--config PATH`. Every field is optional.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub grid: GridOverrides,
    pub kmax: Option<usize>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    pub t_grid_size: Option<usize>,
    pub output_format: Option<Format>,
    pub output_path: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("config {}: {e}", path.display())))
    }
}

/// Flag values; `None` means "not given".
#[derive(Debug, Clone, Default)]
pub struct FlagOverrides {
    pub half_width: Option<f64>,
    pub num_points: Option<usize>,
    pub kmax: Option<usize>,
    pub t_grid_size: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid: Grid,
    pub kmax: usize,
    /// Named tolerances from the config file, echoed into reports.
    pub tolerances: BTreeMap<String, f64>,
    pub t_grid_size: usize,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(file: FileConfig, flags: FlagOverrides) -> Result<Self, CliError> {
        let defaults = VerifyConfig::default();
        let half_width = flags.half_width.or(file.grid.half_width).unwrap_or(DEFAULT_HALF_WIDTH);
        let num_points = flags.num_points.or(file.grid.num_points).unwrap_or(DEFAULT_NUM_POINTS);
        let grid = Grid::new(half_width, num_points).map_err(|e| CliError::Parse(e.to_string()))?;
        let kmax = flags.kmax.or(file.kmax).unwrap_or(defaults.kmax);
        if kmax < 1 {
            return Err(CliError::Parse("kmax must be at least 1".into()));
        }
        let t_grid_size = flags.t_grid_size.or(file.t_grid_size).unwrap_or(defaults.t_samples);
        if t_grid_size < 1 {
            return Err(CliError::Parse("t-grid must have at least one sample".into()));
        }
        if let Some((name, v)) = file.tolerances.iter().find(|(_, v)| !(**v > 0.0 && v.is_finite())) {
            return Err(CliError::Parse(format!("tolerance `{name}` must be positive, got {v}")));
        }
        Ok(Self {
            grid,
            kmax,
            tolerances: file.tolerances,
            t_grid_size,
            output_format: flags.format.or(file.output_format).unwrap_or_default(),
            output_path: flags.out.or(file.output_path),
        })
    }

    pub fn verify_config(&self) -> VerifyConfig {
        VerifyConfig { grid: self.grid, kmax: self.kmax, t_samples: self.t_grid_size }
    }

    /// `t_grid_size` uniform times on `[0, π/2)`.
    pub fn t_grid(&self) -> Vec<f64> {
        let n = self.t_grid_size;
        (0..n).map(|j| std::f64::consts::FRAC_PI_2 * j as f64 / n as f64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file: FileConfig =
            serde_json::from_str(r#"{"grid": {"half_width": 12.0}, "kmax": 30, "output_format": "json"}"#).unwrap();
        let cfg = RunConfig::resolve(file, FlagOverrides { kmax: Some(40), ..Default::default() }).unwrap();
        assert_eq!(cfg.grid.half_width(), 12.0);
        assert_eq!(cfg.grid.num_points(), DEFAULT_NUM_POINTS);
        assert_eq!(cfg.kmax, 40);
        assert_eq!(cfg.output_format, Format::Json);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(serde_json::from_str::<FileConfig>(r#"{"kmaxx": 3}"#).is_err());
        let file: FileConfig = serde_json::from_str(r#"{"tolerances": {"edge": -1.0}}"#).unwrap();
        assert!(RunConfig::resolve(file, FlagOverrides::default()).is_err());
        let flags = FlagOverrides { kmax: Some(0), ..Default::default() };
        assert!(RunConfig::resolve(FileConfig::default(), flags).is_err());
    }
}
