use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fermion::check_modes;
use crate::tomography::CONVENTION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum AngleUnit {
    Radians,
    Degrees,
}

impl AngleUnit {
    pub fn to_radians(self, x: f64) -> f64 {
        match self {
            AngleUnit::Radians => x,
            AngleUnit::Degrees => x.to_radians(),
        }
    }

    pub fn from_radians(self, x: f64) -> f64 {
        match self {
            AngleUnit::Radians => x,
            AngleUnit::Degrees => x.to_degrees(),
        }
    }
}

/// Settings shared by every command; echoed verbatim into output metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub modes: usize,
    pub quadrature_degree: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub output_format: OutputFormat,
    pub angle_unit: AngleUnit,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            modes: 2,
            quadrature_degree: 2,
            tolerance: 1e-10,
            seed: 0,
            output_format: OutputFormat::Json,
            angle_unit: AngleUnit::Radians,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        check_modes(self.modes)?;
        if self.quadrature_degree < 2 {
            return Err(Error::InsufficientQuadrature {
                degree: self.quadrature_degree,
                required: 2,
            });
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be a positive number, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }

    pub fn meta(&self) -> Meta {
        Meta {
            generator: concat!("fermitomo ", env!("CARGO_PKG_VERSION")).to_string(),
            convention: CONVENTION.to_string(),
            config: self.clone(),
        }
    }
}

/// Metadata block written at the head of every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub generator: String,
    pub convention: String,
    pub config: RunConfig,
}
