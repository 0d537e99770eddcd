//! Experiment configuration: one JSON document per run.

use crate::error::{Error, Result};
use crate::oracle::Boundary;
use crate::phys::{PacketParams, PhysParams, SpatialGrid};
use crate::quadrature::QuadratureSpec;
use crate::series::{EnvelopeReading, KappaVariant, Regime};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Stationary,
    Propagate,
    Oracle,
    Series,
    Compare,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stationary" => Ok(Mode::Stationary),
            "propagate" => Ok(Mode::Propagate),
            "oracle" => Ok(Mode::Oracle),
            "series" => Ok(Mode::Series),
            "compare" => Ok(Mode::Compare),
            other => Err(Error::Config(format!("unknown mode '{other}'"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Mode::Stationary => "stationary",
            Mode::Propagate => "propagate",
            Mode::Oracle => "oracle",
            Mode::Series => "series",
            Mode::Compare => "compare",
        };
        f.write_str(s)
    }
}

/// Grid-solver section; the spatial grid is shared with the analytic fields.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleSection {
    pub dt: f64,
    /// Defaults to four grid spacings.
    #[serde(default)]
    pub delta_width: Option<f64>,
    #[serde(default)]
    pub boundary: Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesSection {
    pub regime: Regime,
    #[serde(default = "default_n_terms")]
    pub n_terms: usize,
    /// Evaluation point; defaults to the junction.
    #[serde(default)]
    pub x: f64,
    /// Evaluation time; defaults to the last output time.
    #[serde(default)]
    pub t: Option<f64>,
    #[serde(default)]
    pub kappa_variant: KappaVariant,
    #[serde(default)]
    pub envelope: EnvelopeReading,
}

fn default_n_terms() -> usize {
    12
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanSection {
    #[serde(default = "default_k_min")]
    pub k_min: f64,
    #[serde(default = "default_k_max")]
    pub k_max: f64,
    #[serde(default = "default_scan_points")]
    pub n_points: usize,
}

fn default_k_min() -> f64 {
    0.1
}
fn default_k_max() -> f64 {
    10.0
}
fn default_scan_points() -> usize {
    200
}

impl Default for ScanSection {
    fn default() -> Self {
        Self { k_min: 0.1, k_max: 10.0, n_points: 200 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub phys: PhysParams,
    pub packet: PacketParams,
    pub grid: SpatialGrid,
    pub times: Vec<f64>,
    #[serde(default)]
    pub mode: Option<Mode>,
    #[serde(default)]
    pub quad: QuadratureSpec,
    #[serde(default)]
    pub oracle: Option<OracleSection>,
    #[serde(default)]
    pub series: Option<SeriesSection>,
    #[serde(default)]
    pub scan: Option<ScanSection>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{e}")))
    }

    /// Collect every violated invariant for the requested mode.
    pub fn violations(&self, mode: Mode) -> Vec<String> {
        let mut v = Vec::new();
        let mut push_err = |r: Result<()>| {
            if let Err(e) = r {
                v.push(e.to_string());
            }
        };
        push_err(self.phys.validate());
        push_err(self.packet.validate());
        push_err(self.grid.validate());
        push_err(self.quad.validate());
        if let Some(m) = self.mode {
            if m != mode {
                v.push(format!("config mode '{m}' conflicts with requested mode '{mode}'"));
            }
        }
        if self.times.is_empty() && matches!(mode, Mode::Propagate | Mode::Oracle | Mode::Compare) {
            v.push("times: at least one output time is required".into());
        }
        let mut prev = -1.0;
        for &t in &self.times {
            if t < 0.0 {
                v.push(format!("times: negative time {t}"));
            }
            if t < prev {
                v.push("times: must be sorted ascending".into());
                break;
            }
            prev = t;
        }
        match mode {
            Mode::Oracle | Mode::Compare => {
                if let Some(o) = &self.oracle {
                    let cfg = self.oracle_config(o, self.times.last().copied().unwrap_or(0.0));
                    if let Err(e) = cfg.validate(&self.phys) {
                        v.push(e.to_string());
                    }
                } else {
                    v.push(format!("oracle: section required for mode '{mode}'"));
                }
            }
            Mode::Series => {
                if let Some(s) = &self.series {
                    if s.n_terms == 0 {
                        v.push("series.n_terms must be >= 1".into());
                    }
                } else {
                    v.push("series: section required for mode 'series'".into());
                }
            }
            Mode::Stationary => {
                let scan = self.scan.unwrap_or_default();
                if !(scan.k_min > 0.0 && scan.k_max > scan.k_min) {
                    v.push(format!(
                        "scan: need 0 < k_min < k_max, got [{}, {}]",
                        scan.k_min, scan.k_max
                    ));
                }
                if scan.n_points < 2 {
                    v.push("scan.n_points must be >= 2".into());
                }
            }
            Mode::Propagate => {}
        }
        v
    }

    /// Build the oracle configuration: steps to reach the last output time.
    pub fn oracle_config(&self, section: &OracleSection, t_max: f64) -> crate::oracle::OracleConfig {
        let delta_width = section.delta_width.unwrap_or(4.0 * self.grid.dx());
        let n_steps = if section.dt > 0.0 { (t_max / section.dt).round() as usize } else { 0 };
        crate::oracle::OracleConfig {
            grid: self.grid,
            dt: section.dt,
            n_steps,
            delta_width,
            boundary: section.boundary,
        }
    }
}
