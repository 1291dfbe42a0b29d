//! Experiment configuration files (TOML).
//!
//! ```toml
//! problem = "homogeneous"
//! alpha = 0.5
//! gamma = 1.0
//! phi = 0.2617993877991494
//! t = 0.10132118364233778
//! N_list = [4, 8, 16, 32, 64]
//! output_path = "table1.csv"
//! initial_data = { mode = 1 }
//!
//! [operator]
//! diagonal = [9.869604401089358]
//! ```
//!
//! Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use fracsinc_core::operator::DEFAULT_SECTOR_ANGLE;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Homogeneous,
    Inhomogeneous,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum OperatorSpec {
    /// Eigenvalue list.
    Diagonal(Vec<f64>),
    /// Number of interior grid points of the Dirichlet Laplacian on (0, 1).
    Laplacian(usize),
}

/// A vector given explicitly or as the `mode`-th eigenvector (1-based).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum VectorSpec {
    Values(Vec<f64>),
    Mode { mode: usize },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForcingSpec {
    pub c: f64,
    pub direction: VectorSpec,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: Problem,
    pub operator: OperatorSpec,
    pub alpha: f64,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default = "default_phi")]
    pub phi: f64,
    pub t: f64,
    #[serde(rename = "N_list")]
    pub n_list: Vec<usize>,
    pub output_path: PathBuf,
    #[serde(default)]
    pub forcing: Option<ForcingSpec>,
    /// Defaults to all ones for diagonal operators and to the first
    /// eigenmode for the Laplacian.
    #[serde(default)]
    pub initial_data: Option<VectorSpec>,
}

fn default_gamma() -> f64 {
    1.0
}

fn default_phi() -> f64 {
    DEFAULT_SECTOR_ANGLE
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            HarnessError::Config(msg) => HarnessError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }
}
