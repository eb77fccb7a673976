//! Medium-time processing of full PNCC.
//!
//! Four steps over the mel energies `E`:
//!
//! 1. medium-time power `Q̃`: per-channel moving average over `2M+1` frames;
//! 2. asymmetric noise suppression and temporal masking, giving `R`;
//! 3. weight smoothing of the gain `R / Q̃` across `2N+1` channels, giving `S̃`;
//! 4. time-frequency normalization `Ẽ = E ⊙ S̃`.
//!
//! All constants live in [`MediumTimeConfig`].

use ndarray::{Array2, Zip};

use crate::error::{Error, Result};
use crate::frontend::MelEnergies;

/// Division guard for `R / Q̃`.
pub const RATIO_FLOOR: f64 = 1e-12;

/// Initial noise-floor estimate as a fraction of the first frame's power.
const NOISE_FLOOR_INIT: f64 = 0.9;

#[derive(Debug, Clone, PartialEq)]
pub struct MediumTimeConfig {
    /// `M`: frames on each side of the medium-time average.
    pub window_halfwidth: usize,
    /// Attack coefficient of the asymmetric lowpass (rising input).
    pub ans_lambda_a: f64,
    /// Decay coefficient of the asymmetric lowpass (falling input).
    pub ans_lambda_b: f64,
    /// `c`: a frame is an excitation frame when `Q̃ >= c * Q_le`.
    pub floor_factor: f64,
    /// Peak-tracker forgetting factor for temporal masking.
    pub masking_lambda_t: f64,
    /// Level of masked frames relative to the tracked peak.
    pub masking_mu_t: f64,
    /// `N`: channels on each side of the weight-smoothing window.
    pub smoothing_halfwidth: usize,
    /// Pin the transfer function to unity, which removes the stage's effect
    /// entirely. PNCC with this set is SPNCC.
    pub bypass: bool,
}

impl Default for MediumTimeConfig {
    fn default() -> Self {
        Self {
            window_halfwidth: 2,
            ans_lambda_a: 0.999,
            ans_lambda_b: 0.5,
            floor_factor: 2.0,
            masking_lambda_t: 0.85,
            masking_mu_t: 0.2,
            smoothing_halfwidth: 4,
            bypass: false,
        }
    }
}

impl MediumTimeConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(0.0 < self.ans_lambda_b && self.ans_lambda_b <= self.ans_lambda_a && self.ans_lambda_a < 1.0) {
            return bad(format!(
                "need 0 < lambda_b ({}) <= lambda_a ({}) < 1",
                self.ans_lambda_b, self.ans_lambda_a
            ));
        }
        if !(0.0 < self.masking_lambda_t && self.masking_lambda_t < 1.0) {
            return bad(format!("masking lambda_t {} must lie in (0, 1)", self.masking_lambda_t));
        }
        if !(0.0..=1.0).contains(&self.masking_mu_t) {
            return bad(format!("masking mu_t {} must lie in [0, 1]", self.masking_mu_t));
        }
        if self.floor_factor.is_nan() || self.floor_factor < 1.0 {
            return bad(format!("floor factor {} must be >= 1", self.floor_factor));
        }
        Ok(())
    }
}

/// Dimensionless `T x F` gains `S̃`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferFunction {
    pub values: Array2<f64>,
}

impl TransferFunction {
    pub fn unity(frames: usize, channels: usize) -> Self {
        Self {
            values: Array2::ones((frames, channels)),
        }
    }
}

/// Edge-clipped moving average over frames `t-M ..= t+M`, divided by the
/// number of frames actually inside the utterance.
pub fn medium_time_power(e: &MelEnergies, halfwidth: usize) -> MelEnergies {
    let x = e.values();
    let (frames, channels) = x.dim();
    if halfwidth == 0 || frames == 0 {
        return e.clone();
    }
    let mut out = Array2::zeros((frames, channels));
    for f in 0..channels {
        let col = x.column(f);
        // Prefix sums keep this O(T) per channel.
        let mut prefix = Vec::with_capacity(frames + 1);
        prefix.push(0.0);
        for &v in col.iter() {
            prefix.push(prefix.last().unwrap() + v);
        }
        for t in 0..frames {
            let lo = t.saturating_sub(halfwidth);
            let hi = (t + halfwidth).min(frames - 1);
            out[[t, f]] = ((prefix[hi + 1] - prefix[lo]) / (hi - lo + 1) as f64).max(0.0);
        }
    }
    MelEnergies::from_array(out)
}

/// First-order lowpass with separate coefficients for rising and falling input:
/// `y[t] = λa y[t-1] + (1-λa) x[t]` when `x[t] >= y[t-1]`, otherwise with `λb`.
/// `y[0] = init`.
pub fn asymmetric_lowpass(x: &[f64], lambda_a: f64, lambda_b: f64, init: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len());
    if x.is_empty() {
        return out;
    }
    let mut y = init;
    out.push(y);
    for &v in &x[1..] {
        let lambda = if v >= y { lambda_a } else { lambda_b };
        y = lambda * y + (1.0 - lambda) * v;
        out.push(y);
    }
    out
}

/// Intermediate per-channel signals of noise suppression, kept for
/// inspection and testing.
#[derive(Debug, Clone, PartialEq)]
pub struct SuppressionTrace {
    /// `Q_le`: lower envelope (noise floor) of `Q̃`.
    pub noise_floor: Vec<f64>,
    /// `Q0 = max(Q̃ - Q_le, 0)`.
    pub rectified: Vec<f64>,
    /// `Q_f`: lower envelope of `Q0`.
    pub rectified_floor: Vec<f64>,
    /// `Q0` after temporal masking.
    pub masked: Vec<f64>,
    /// `R`.
    pub output: Vec<f64>,
}

/// Temporal masking with a decaying peak tracker. Frames that fall below
/// `λt` times the previous peak are replaced by `μt` times that peak.
pub fn temporal_mask(q0: &[f64], lambda_t: f64, mu_t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(q0.len());
    let Some(&first) = q0.first() else {
        return out;
    };
    let mut peak = first;
    out.push(first);
    for &v in &q0[1..] {
        let decayed = lambda_t * peak;
        out.push(if v >= decayed { v } else { mu_t * peak });
        peak = decayed.max(v);
    }
    out
}

/// Runs noise suppression and masking on one channel of `Q̃`.
pub fn suppress_channel(q: &[f64], cfg: &MediumTimeConfig) -> SuppressionTrace {
    let (la, lb) = (cfg.ans_lambda_a, cfg.ans_lambda_b);
    let init = q.first().map_or(0.0, |&v| NOISE_FLOOR_INIT * v);
    let noise_floor = asymmetric_lowpass(q, la, lb, init);
    let rectified: Vec<f64> = q
        .iter()
        .zip(&noise_floor)
        .map(|(&v, &le)| (v - le).max(0.0))
        .collect();
    let rectified_floor =
        asymmetric_lowpass(&rectified, la, lb, rectified.first().copied().unwrap_or(0.0));
    let masked = temporal_mask(&rectified, cfg.masking_lambda_t, cfg.masking_mu_t);
    let output = (0..q.len())
        .map(|t| {
            if q[t] >= cfg.floor_factor * noise_floor[t] {
                masked[t].max(rectified_floor[t])
            } else {
                rectified_floor[t]
            }
        })
        .collect();
    SuppressionTrace {
        noise_floor,
        rectified,
        rectified_floor,
        masked,
        output,
    }
}

/// Asymmetric noise suppression with temporal masking, channel by channel.
pub fn noise_suppress_and_mask(q: &MelEnergies, cfg: &MediumTimeConfig) -> MelEnergies {
    let x = q.values();
    let mut out = Array2::zeros(x.dim());
    for (src, mut dst) in x.columns().into_iter().zip(out.columns_mut()) {
        let trace = suppress_channel(&src.to_vec(), cfg);
        for (d, v) in dst.iter_mut().zip(trace.output) {
            *d = v.max(0.0);
        }
    }
    MelEnergies::from_array(out)
}

/// `S̃[t, f]`: mean of `R / max(Q̃, floor)` over channels `f-N ..= f+N`,
/// clipped to the band.
pub fn weight_smoothing(r: &MelEnergies, q: &MelEnergies, halfwidth: usize) -> Result<TransferFunction> {
    if r.shape() != q.shape() {
        return Err(Error::DimensionMismatch {
            expected: q.shape(),
            found: r.shape(),
        });
    }
    let mut ratio = Array2::zeros(r.shape());
    Zip::from(&mut ratio)
        .and(r.values())
        .and(q.values())
        .for_each(|o, &rv, &qv| *o = rv / qv.max(RATIO_FLOOR));

    let (frames, channels) = r.shape();
    let mut values = Array2::zeros((frames, channels));
    for t in 0..frames {
        let row = ratio.row(t);
        for f in 0..channels {
            let lo = f.saturating_sub(halfwidth);
            let hi = (f + halfwidth).min(channels - 1);
            let sum: f64 = (lo..=hi).map(|k| row[k]).sum();
            values[[t, f]] = sum / (hi - lo + 1) as f64;
        }
    }
    Ok(TransferFunction { values })
}

/// `Ẽ = E ⊙ S̃`, elementwise.
pub fn time_frequency_normalize(e: &MelEnergies, gain: &TransferFunction) -> Result<MelEnergies> {
    if e.shape() != gain.values.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.shape(),
            found: gain.values.dim(),
        });
    }
    let mut out = e.values() * &gain.values;
    out.mapv_inplace(|v| v.max(0.0));
    Ok(MelEnergies::from_array(out))
}

/// The transfer function `S̃` for `e` under `cfg`.
pub fn transfer_function(e: &MelEnergies, cfg: &MediumTimeConfig) -> Result<TransferFunction> {
    cfg.validate()?;
    if cfg.bypass {
        let (t, f) = e.shape();
        return Ok(TransferFunction::unity(t, f));
    }
    let q = medium_time_power(e, cfg.window_halfwidth);
    let r = noise_suppress_and_mask(&q, cfg);
    weight_smoothing(&r, &q, cfg.smoothing_halfwidth)
}

/// All four medium-time steps: `E -> Ẽ`.
pub fn medium_time_process(e: &MelEnergies, cfg: &MediumTimeConfig) -> Result<MelEnergies> {
    let gain = transfer_function(e, cfg)?;
    time_frequency_normalize(e, &gain)
}
