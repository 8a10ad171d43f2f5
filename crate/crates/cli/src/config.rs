//! Run configuration: a flat JSON document whose keys mirror the flags.
//! Flags win over file values, file values win over defaults.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use dspec_core::geometry::PhysicalParams;
use dspec_core::spectrum::Spin;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    Omega,
    Zeta,
    K,
    Mass,
}

impl SweepParam {
    /// Column holding this parameter in level tables.
    pub fn column(self) -> &'static str {
        match self {
            SweepParam::Omega => "omega",
            SweepParam::Zeta => "zeta",
            SweepParam::K => "k_axial",
            SweepParam::Mass => "mass",
        }
    }
}

/// Spin given as `+1`, `-1` or `both` (also accepted as a JSON number).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum SpinValue {
    Number(i64),
    Text(String),
}

impl SpinValue {
    fn text(&self) -> String {
        match self {
            SpinValue::Number(n) => n.to_string(),
            SpinValue::Text(s) => s.clone(),
        }
    }
}

pub fn parse_spins(s: &str) -> Result<Vec<Spin>, String> {
    match s.trim() {
        "+1" | "1" | "up" => Ok(vec![Spin::Up]),
        "-1" | "down" => Ok(vec![Spin::Down]),
        "both" => Ok(Spin::BOTH.to_vec()),
        other => Err(format!("spin must be +1, -1 or both, got {other:?}")),
    }
}

pub fn parse_spin(s: &str) -> Result<Spin, String> {
    match parse_spins(s)?.as_slice() {
        [one] => Ok(*one),
        _ => Err("a single spin (+1 or -1) is required here".into()),
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub mass: Option<f64>,
    pub omega: Option<f64>,
    pub zeta: Option<f64>,
    pub k_axial: Option<f64>,
    pub l_min: Option<i64>,
    pub l_max: Option<i64>,
    pub n_max: Option<u32>,
    spin: Option<SpinValue>,
    pub sweep_param: Option<SweepParam>,
    pub sweep_from: Option<f64>,
    pub sweep_to: Option<f64>,
    pub sweep_steps: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn spin(&self) -> Option<String> {
        self.spin.as_ref().map(SpinValue::text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub param: SweepParam,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

impl Sweep {
    /// `steps` evenly spaced values; the last one is `to` exactly.
    pub fn values(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.to
                } else {
                    self.from + (self.to - self.from) * i as f64 / last as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mass: f64,
    pub omega: f64,
    pub zeta: f64,
    pub k_axial: f64,
    pub l_min: i64,
    pub l_max: i64,
    pub n_max: u32,
    pub spins: Vec<Spin>,
    pub sweep: Option<Sweep>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mass: 1.0,
            omega: 0.1,
            zeta: 0.0,
            k_axial: 0.0,
            l_min: 0,
            l_max: 0,
            n_max: 0,
            spins: Spin::BOTH.to_vec(),
            sweep: None,
            format: Format::Csv,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn params(&self) -> CliResult<PhysicalParams> {
        Ok(PhysicalParams::new(
            self.mass,
            self.omega,
            self.zeta,
            self.k_axial,
        )?)
    }

    /// Parameters with one of them replaced by a sweep value.
    pub fn params_with(&self, param: SweepParam, value: f64) -> CliResult<PhysicalParams> {
        let mut c = self.clone();
        match param {
            SweepParam::Omega => c.omega = value,
            SweepParam::Zeta => c.zeta = value,
            SweepParam::K => c.k_axial = value,
            SweepParam::Mass => c.mass = value,
        }
        c.params()
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.l_min > self.l_max {
            return Err(CliError::Config(format!(
                "l_min = {} exceeds l_max = {}",
                self.l_min, self.l_max
            )));
        }
        if let Some(s) = &self.sweep {
            if s.steps < 2 {
                return Err(CliError::Config(format!(
                    "sweep needs at least 2 steps, got {}",
                    s.steps
                )));
            }
            if !(s.from.is_finite() && s.to.is_finite()) {
                return Err(CliError::Config("sweep endpoints must be finite".into()));
            }
        }
        Ok(())
    }
}
