//! DCT and the five end-to-end feature assemblies.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use ndarray::Array2;

use crate::audio::Waveform;
use crate::energy_norm::{self, MeanPowerConfig, PcenConfig, LOG_FLOOR};
use crate::error::{Error, Result};
use crate::frontend::{self, FrontendConfig};
use crate::medium_time::{self, MediumTimeConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeatureType {
    Mfcc,
    Pncc,
    /// PNCC without medium-time processing.
    Spncc,
    /// Mean power normalization followed by PCEN in place of the power law.
    Cpncc,
    /// PCEN in place of both mean power normalization and the power law.
    Scpncc,
}

/// One processing step applied after mel integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Log,
    MediumTime,
    MeanPowerNorm,
    PowerLaw,
    Pcen,
}

impl FeatureType {
    pub const ALL: [FeatureType; 5] = [
        FeatureType::Mfcc,
        FeatureType::Pncc,
        FeatureType::Spncc,
        FeatureType::Cpncc,
        FeatureType::Scpncc,
    ];

    /// Stages between mel integration and the DCT, in order.
    pub fn stages(self) -> &'static [Stage] {
        use Stage::*;
        match self {
            FeatureType::Mfcc => &[Log],
            FeatureType::Pncc => &[MediumTime, MeanPowerNorm, PowerLaw],
            FeatureType::Spncc => &[MeanPowerNorm, PowerLaw],
            FeatureType::Cpncc => &[MeanPowerNorm, Pcen],
            FeatureType::Scpncc => &[Pcen],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureType::Mfcc => "mfcc",
            FeatureType::Pncc => "pncc",
            FeatureType::Spncc => "spncc",
            FeatureType::Cpncc => "cpncc",
            FeatureType::Scpncc => "scpncc",
        }
    }

    /// Stable one-byte tag used in serialized feature files.
    pub fn code(self) -> u8 {
        match self {
            FeatureType::Mfcc => 0,
            FeatureType::Pncc => 1,
            FeatureType::Spncc => 2,
            FeatureType::Cpncc => 3,
            FeatureType::Scpncc => 4,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.code() == code)
    }
}

impl fmt::Display for FeatureType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FeatureType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown feature type '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub frontend: FrontendConfig,
    pub medium_time: MediumTimeConfig,
    pub mean_power: MeanPowerConfig,
    pub pcen: PcenConfig,
    pub num_ceps: usize,
    pub power_exponent: f64,
    /// When false the compressed channel energies are returned as-is.
    pub apply_dct: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            frontend: FrontendConfig::default(),
            medium_time: MediumTimeConfig::default(),
            mean_power: MeanPowerConfig::default(),
            pcen: PcenConfig::default(),
            num_ceps: 30,
            power_exponent: 1.0 / 15.0,
            apply_dct: true,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self, sample_rate_hz: u32) -> Result<()> {
        self.frontend.validate(sample_rate_hz)?;
        self.medium_time.validate()?;
        self.mean_power.validate()?;
        self.pcen.validate()?;
        if !(1..=self.frontend.num_filters).contains(&self.num_ceps) {
            return Err(Error::InvalidParameter(format!(
                "num_ceps {} must lie in [1, {}]",
                self.num_ceps, self.frontend.num_filters
            )));
        }
        if !(self.power_exponent > 0.0 && self.power_exponent.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "power exponent {} must be positive",
                self.power_exponent
            )));
        }
        Ok(())
    }

    /// Number of columns `extract` produces.
    pub fn output_dim(&self) -> usize {
        if self.apply_dct {
            self.num_ceps
        } else {
            self.frontend.num_filters
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    /// `T x C`, where `C` is `num_ceps`, or `num_filters` without the DCT.
    pub values: Array2<f64>,
    pub feature_type: FeatureType,
    /// [`PipelineConfig::fingerprint`] of the config that produced this.
    pub fingerprint: u64,
}

impl FeatureMatrix {
    pub fn num_frames(&self) -> usize {
        self.values.nrows()
    }

    pub fn dim(&self) -> usize {
        self.values.ncols()
    }
}

/// Rows `0..num_ceps` of the orthonormal DCT-II matrix of size `n`.
pub fn dct_basis(n: usize, num_ceps: usize) -> Array2<f64> {
    let w0 = (1.0 / n as f64).sqrt();
    let wn = (2.0 / n as f64).sqrt();
    Array2::from_shape_fn((num_ceps, n), |(k, f)| {
        let w = if k == 0 { w0 } else { wn };
        w * (PI * k as f64 * (2 * f + 1) as f64 / (2 * n) as f64).cos()
    })
}

/// Orthonormal DCT-II of each row, truncated to the first `num_ceps`
/// coefficients.
pub fn dct_ii(x: &Array2<f64>, num_ceps: usize) -> Result<Array2<f64>> {
    let n = x.ncols();
    if num_ceps == 0 || num_ceps > n {
        return Err(Error::InvalidParameter(format!(
            "num_ceps {num_ceps} must lie in [1, {n}]"
        )));
    }
    Ok(x.dot(&dct_basis(n, num_ceps).t()))
}

/// Extracts features of type `kind` from `wave`.
pub fn extract(wave: &Waveform, kind: FeatureType, cfg: &PipelineConfig) -> Result<FeatureMatrix> {
    cfg.validate(wave.sample_rate_hz())?;
    let energies = frontend::mel_energies(wave, &cfg.frontend)?;
    let compressed = compress(energies, kind, cfg)?;
    let values = if cfg.apply_dct {
        dct_ii(&compressed, cfg.num_ceps)?
    } else {
        compressed
    };
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "{kind} extraction produced non-finite values under this config"
        )));
    }
    Ok(FeatureMatrix {
        values,
        feature_type: kind,
        fingerprint: cfg.fingerprint(),
    })
}

/// Applies the type's stage list to mel energies, yielding the matrix that
/// goes into the DCT.
pub fn compress(
    energies: frontend::MelEnergies,
    kind: FeatureType,
    cfg: &PipelineConfig,
) -> Result<Array2<f64>> {
    let mut e = energies;
    for stage in kind.stages() {
        match stage {
            Stage::Log => return energy_norm::log_compress(&e, LOG_FLOOR),
            Stage::MediumTime => e = medium_time::medium_time_process(&e, &cfg.medium_time)?,
            Stage::MeanPowerNorm => e = energy_norm::mean_power_normalize(&e, &cfg.mean_power)?,
            Stage::PowerLaw => e = energy_norm::power_law(&e, cfg.power_exponent)?,
            Stage::Pcen => e = energy_norm::pcen(&e, &cfg.pcen)?,
        }
    }
    Ok(e.into_inner())
}
