//! Gain normalization and compressive nonlinearities applied to channel
//! energies: running mean power normalization, per-channel energy
//! normalization (PCEN), the power law and the logarithm.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::frontend::MelEnergies;

/// Lower bound on the running mean power before dividing by it.
pub const MEAN_POWER_FLOOR: f64 = 1e-12;

/// Default floor for [`log_compress`].
pub const LOG_FLOOR: f64 = 1e-10;

/// Starting value `μ[-1]` of the mean power recursion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MuInit {
    /// Mean over channels of the first frame, so a stationary input is
    /// normalized to one from the first frame on.
    FirstFrameMean,
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeanPowerConfig {
    /// Forgetting factor of the running mean.
    pub lambda_mu: f64,
    pub mu_init: MuInit,
}

impl Default for MeanPowerConfig {
    fn default() -> Self {
        Self {
            lambda_mu: 0.999,
            mu_init: MuInit::FirstFrameMean,
        }
    }
}

impl MeanPowerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda_mu > 0.0 && self.lambda_mu < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda_mu {} must lie in (0, 1)",
                self.lambda_mu
            )));
        }
        if let MuInit::Fixed(v) = self.mu_init {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("fixed mu init {v} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PcenConfig {
    /// Gain-control exponent, in `(0, 1]`.
    pub alpha: f64,
    /// Bias added before root compression.
    pub delta: f64,
    /// Root-compression exponent.
    pub r: f64,
    pub epsilon: f64,
    /// Smoother coefficient; `None` uses `1 / F` for `F` channels.
    pub s: Option<f64>,
}

impl Default for PcenConfig {
    fn default() -> Self {
        Self {
            alpha: 0.98,
            delta: 2.0,
            r: 0.5,
            epsilon: 1e-6,
            s: None,
        }
    }
}

impl PcenConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return bad(format!("pcen alpha {} must lie in (0, 1]", self.alpha));
        }
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return bad(format!("pcen delta {} must be >= 0", self.delta));
        }
        if !(self.r > 0.0 && self.r <= 1.0) {
            return bad(format!("pcen r {} must lie in (0, 1]", self.r));
        }
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return bad(format!("pcen epsilon {} must be > 0", self.epsilon));
        }
        if let Some(s) = self.s {
            if !(s > 0.0 && s <= 1.0) {
                return bad(format!("pcen s {s} must lie in (0, 1]"));
            }
        }
        Ok(())
    }

    pub fn smoothing_coeff(&self, channels: usize) -> f64 {
        self.s.unwrap_or(1.0 / channels.max(1) as f64)
    }
}

/// The running mean power `μ[t] = λ μ[t-1] + (1-λ) mean_f E[t, f]`.
pub fn mean_power_track(e: &MelEnergies, cfg: &MeanPowerConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let x = e.values();
    let channels = x.ncols().max(1) as f64;
    let frame_means: Vec<f64> = x.outer_iter().map(|row| row.sum() / channels).collect();
    let mut mu = match cfg.mu_init {
        MuInit::FirstFrameMean => frame_means.first().copied().unwrap_or(0.0),
        MuInit::Fixed(v) => v,
    };
    let lambda = cfg.lambda_mu;
    Ok(frame_means
        .into_iter()
        .map(|m| {
            mu = lambda * mu + (1.0 - lambda) * m;
            mu
        })
        .collect())
}

/// `Ẽ[t, f] = E[t, f] / max(μ[t], 1e-12)`.
pub fn mean_power_normalize(e: &MelEnergies, cfg: &MeanPowerConfig) -> Result<MelEnergies> {
    let mu = mean_power_track(e, cfg)?;
    let mut out = e.values().clone();
    for (mut row, m) in out.outer_iter_mut().zip(mu) {
        let denom = m.max(MEAN_POWER_FLOOR);
        row.mapv_inplace(|v| v / denom);
    }
    Ok(MelEnergies::from_array(out))
}

/// Per-channel AR smoother `M[t] = (1-s) M[t-1] + s E[t]` with `M[0] = E[0]`.
pub fn pcen_smoother(e: &MelEnergies, s: f64) -> Array2<f64> {
    let x = e.values();
    let mut m = Array2::zeros(x.dim());
    if x.nrows() == 0 {
        return m;
    }
    m.row_mut(0).assign(&x.row(0));
    for t in 1..x.nrows() {
        for f in 0..x.ncols() {
            m[[t, f]] = (1.0 - s) * m[[t - 1, f]] + s * x[[t, f]];
        }
    }
    m
}

/// `(E / (M + ε)^α + δ)^r - δ^r` for given energy and smoothed energy.
pub fn pcen_value(energy: f64, smoothed: f64, cfg: &PcenConfig) -> f64 {
    let agc = energy / (smoothed + cfg.epsilon).powf(cfg.alpha);
    (agc + cfg.delta).powf(cfg.r) - cfg.delta.powf(cfg.r)
}

/// Per-channel energy normalization. Output is non-negative for
/// non-negative input.
pub fn pcen(e: &MelEnergies, cfg: &PcenConfig) -> Result<MelEnergies> {
    cfg.validate()?;
    let s = cfg.smoothing_coeff(e.num_channels());
    let smoothed = pcen_smoother(e, s);
    let mut out = e.values().clone();
    ndarray::Zip::from(&mut out)
        .and(&smoothed)
        .for_each(|o, &m| *o = pcen_value(*o, m, cfg).max(0.0));
    Ok(MelEnergies::from_array(out))
}

/// `E^exponent`, elementwise.
pub fn power_law(e: &MelEnergies, exponent: f64) -> Result<MelEnergies> {
    if !(exponent > 0.0 && exponent.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "power-law exponent {exponent} must be positive"
        )));
    }
    Ok(MelEnergies::from_array(e.values().mapv(|v| v.powf(exponent))))
}

/// `ln(max(E, floor))`, elementwise. The result may be negative, so it is a
/// plain matrix rather than [`MelEnergies`].
pub fn log_compress(e: &MelEnergies, floor: f64) -> Result<Array2<f64>> {
    if floor.is_nan() || floor <= 0.0 {
        return Err(Error::InvalidParameter(format!("log floor {floor} must be positive")));
    }
    Ok(e.values().mapv(|v| v.max(floor).ln()))
}
