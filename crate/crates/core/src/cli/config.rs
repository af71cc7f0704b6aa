//! TOML run configurations, one per subcommand. Every field has a default,
//! so an empty file (or no file) is a valid configuration.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bcs::{Fault, MAX_PAIRS_PER_SIDE};
use crate::dicke_ed::{CouplingModel, MAX_ATOMS, MAX_PHOTON_CUTOFF};
use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::linalg::LanczosOptions;
use crate::phase::Range;

/// Seed for Lanczos start vectors unless a config overrides it.
pub const DEFAULT_SEED: u64 = LanczosOptions::DEFAULT_SEED;

pub fn load<C: DeserializeOwned + Default>(path: Option<&Path>) -> Result<C> {
    match path {
        None => Ok(C::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            toml::from_str(&text).map_err(|e| Error::validation("config", e.message().to_string()))
        }
    }
}

pub fn to_toml<C: Serialize>(config: &C) -> String {
    toml::to_string(config).expect("configs always serialize to TOML")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumConfig {
    pub omega_r: f64,
    pub omega_j: f64,
    pub kappa: f64,
    pub gamma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub untied_d: Option<f64>,
    pub omega_big: Range,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig {
            omega_r: 1.0,
            omega_j: 1.0,
            kappa: 0.0,
            gamma: 1.0,
            untied_d: None,
            omega_big: Range::new(0.0, 1.0, 101),
        }
    }
}

impl SpectrumConfig {
    pub fn validate(&self) -> Result<()> {
        require_positive("omega_r", self.omega_r)?;
        require_positive("omega_j", self.omega_j)?;
        require_non_negative("kappa", self.kappa)?;
        require_non_negative("gamma", self.gamma)?;
        if let Some(d) = self.untied_d {
            require_non_negative("untied_d", d)?;
        }
        self.omega_big.validate("omega_big")
    }

    pub fn d_coef(&self, omega_big: f64) -> f64 {
        self.untied_d.unwrap_or(self.kappa * self.gamma * omega_big * omega_big / self.omega_j)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EdScanConfig {
    pub n_atoms: Vec<usize>,
    pub kappa: f64,
    pub gamma: f64,
    pub omega_r: f64,
    pub omega_j: f64,
    /// Fixed cutoff for every run; chosen per point when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub photon_cutoff: Option<usize>,
    pub seed: u64,
    pub omega_big: Range,
}

impl Default for EdScanConfig {
    fn default() -> Self {
        EdScanConfig {
            n_atoms: vec![4, 8, 16, 32],
            kappa: 0.0,
            gamma: 1.0,
            omega_r: 1.0,
            omega_j: 1.0,
            photon_cutoff: None,
            seed: DEFAULT_SEED,
            omega_big: Range::new(0.2, 1.0, 81),
        }
    }
}

impl EdScanConfig {
    pub fn model(&self) -> CouplingModel {
        CouplingModel { kappa: self.kappa, gamma: self.gamma, omega_r: self.omega_r, omega_j: self.omega_j }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_atoms.is_empty() {
            return Err(Error::validation("n_atoms", "must list at least one size"));
        }
        for &n in &self.n_atoms {
            if n == 0 {
                return Err(Error::validation("n_atoms", "sizes must be at least 1"));
            }
            if n > MAX_ATOMS {
                return Err(Error::DimensionCap { what: "n_atoms", value: n, cap: MAX_ATOMS });
            }
        }
        if let Some(c) = self.photon_cutoff {
            if c == 0 {
                return Err(Error::validation("photon_cutoff", "must be at least 1"));
            }
            if c > MAX_PHOTON_CUTOFF {
                return Err(Error::DimensionCap { what: "photon_cutoff", value: c, cap: MAX_PHOTON_CUTOFF });
            }
        }
        require_non_negative("kappa", self.kappa)?;
        require_non_negative("gamma", self.gamma)?;
        require_positive("omega_r", self.omega_r)?;
        require_positive("omega_j", self.omega_j)?;
        self.omega_big.validate("omega_big")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FaultName {
    /// Add a cos(Δφ) component to the measured current.
    SinLaw,
}

impl From<FaultName> for Fault {
    fn from(f: FaultName) -> Self {
        match f {
            FaultName::SinLaw => Fault::SinLaw,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyBcsConfig {
    /// Pairs per side, 𝒩.
    pub n_pairs: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault: Option<FaultName>,
}

impl Default for VerifyBcsConfig {
    fn default() -> Self {
        VerifyBcsConfig { n_pairs: vec![1, 2, 3], fault: None }
    }
}

impl VerifyBcsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_pairs.is_empty() {
            return Err(Error::validation("n_pairs", "must list at least one size"));
        }
        for &n in &self.n_pairs {
            if n == 0 {
                return Err(Error::validation("n_pairs", "sizes must be at least 1"));
            }
            if n > MAX_PAIRS_PER_SIDE {
                return Err(Error::DimensionCap { what: "n_pairs", value: n, cap: MAX_PAIRS_PER_SIDE });
            }
        }
        Ok(())
    }
}
