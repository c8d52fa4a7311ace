//! Run configuration: TOML file named by `ZETASCOPE_CONFIG`, overridden by flags.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use zetascope::convergence::SweepPlan;
use zetascope::euler_maclaurin::EulerMaclaurinConfig;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub em: EmSection,
    pub sweep: SweepSection,
    pub zeros: ZerosSection,
    pub output: OutputSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EmSection {
    pub depth: usize,
    pub n_base: u64,
    pub target_rel_error: f64,
    #[serde(rename = "window_C")]
    pub window_c: f64,
}

impl Default for EmSection {
    fn default() -> Self {
        let d = EulerMaclaurinConfig::default();
        Self {
            depth: d.bernoulli_depth,
            n_base: d.n_base,
            target_rel_error: d.target_rel_error,
            window_c: d.window.c(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub n0: u64,
    pub doublings: u32,
    pub identity_ns: Vec<u64>,
}

impl Default for SweepSection {
    fn default() -> Self {
        let p = SweepPlan::default();
        Self {
            n0: p.n0,
            doublings: p.doublings,
            identity_ns: p.identity_ns,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ZerosSection {
    pub t_min: f64,
    pub t_max: f64,
    pub step: f64,
}

impl Default for ZerosSection {
    fn default() -> Self {
        Self {
            t_min: 10.0,
            t_max: 50.0,
            step: zetascope::zeros::DEFAULT_STEP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    #[default]
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub zeros: PathBuf,
    pub report: PathBuf,
    pub format: Format,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            zeros: "zeros.csv".into(),
            report: "report.json".into(),
            format: Format::Json,
        }
    }
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Input(format!("invalid config {}: {e}", path.display())))
    }

    pub fn em_config(&self) -> Result<EulerMaclaurinConfig, CliError> {
        let em = &self.em;
        Ok(EulerMaclaurinConfig::new(
            em.depth,
            em.n_base,
            em.target_rel_error,
            em.window_c,
        )?)
    }

    pub fn sweep_plan(&self) -> Result<SweepPlan, CliError> {
        let plan = SweepPlan {
            n0: self.sweep.n0,
            doublings: self.sweep.doublings,
            identity_ns: self.sweep.identity_ns.clone(),
        };
        plan.validate()?;
        Ok(plan)
    }
}
