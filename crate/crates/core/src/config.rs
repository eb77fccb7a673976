//! Flat `key = value` serialization of [`PipelineConfig`].
//!
//! Keys carry a dotted section prefix (`frontend.`, `medium_time.`,
//! `mean_power.`, `pcen.`); pipeline-level keys have none. Blank lines and
//! `#` comments are ignored. Unknown keys are errors.
//!
//! The canonical rendering (every key, fixed order, shortest round-trip
//! float formatting) is also what [`PipelineConfig::fingerprint`] hashes.

use std::fmt::Write as _;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::energy_norm::MuInit;
use crate::error::{Error, Result};
use crate::pipeline::PipelineConfig;

pub const KEYS: &[&str] = &[
    "frontend.frame_length_ms",
    "frontend.hop_ms",
    "frontend.preemphasis",
    "frontend.window",
    "frontend.fft_size",
    "frontend.num_filters",
    "frontend.fmin_hz",
    "frontend.fmax_hz",
    "medium_time.window_halfwidth",
    "medium_time.ans_lambda_a",
    "medium_time.ans_lambda_b",
    "medium_time.floor_factor",
    "medium_time.masking_lambda_t",
    "medium_time.masking_mu_t",
    "medium_time.smoothing_halfwidth",
    "medium_time.bypass",
    "mean_power.lambda_mu",
    "mean_power.mu_init",
    "pcen.alpha",
    "pcen.delta",
    "pcen.r",
    "pcen.epsilon",
    "pcen.s",
    "num_ceps",
    "power_exponent",
    "apply_dct",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad value '{value}' for {key}")))
}

impl PipelineConfig {
    /// Value of `key` in canonical text form.
    pub fn get(&self, key: &str) -> Result<String> {
        let f = &self.frontend;
        let m = &self.medium_time;
        let p = &self.pcen;
        Ok(match key {
            "frontend.frame_length_ms" => format!("{:?}", f.frame_length_ms),
            "frontend.hop_ms" => format!("{:?}", f.hop_ms),
            "frontend.preemphasis" => format!("{:?}", f.preemphasis),
            "frontend.window" => f.window.to_string(),
            "frontend.fft_size" => f.fft_size.to_string(),
            "frontend.num_filters" => f.num_filters.to_string(),
            "frontend.fmin_hz" => format!("{:?}", f.fmin_hz),
            "frontend.fmax_hz" => f.fmax_hz.map_or("nyquist".into(), |v| format!("{v:?}")),
            "medium_time.window_halfwidth" => m.window_halfwidth.to_string(),
            "medium_time.ans_lambda_a" => format!("{:?}", m.ans_lambda_a),
            "medium_time.ans_lambda_b" => format!("{:?}", m.ans_lambda_b),
            "medium_time.floor_factor" => format!("{:?}", m.floor_factor),
            "medium_time.masking_lambda_t" => format!("{:?}", m.masking_lambda_t),
            "medium_time.masking_mu_t" => format!("{:?}", m.masking_mu_t),
            "medium_time.smoothing_halfwidth" => m.smoothing_halfwidth.to_string(),
            "medium_time.bypass" => m.bypass.to_string(),
            "mean_power.lambda_mu" => format!("{:?}", self.mean_power.lambda_mu),
            "mean_power.mu_init" => match self.mean_power.mu_init {
                MuInit::FirstFrameMean => "first_frame_mean".into(),
                MuInit::Fixed(v) => format!("{v:?}"),
            },
            "pcen.alpha" => format!("{:?}", p.alpha),
            "pcen.delta" => format!("{:?}", p.delta),
            "pcen.r" => format!("{:?}", p.r),
            "pcen.epsilon" => format!("{:?}", p.epsilon),
            "pcen.s" => p.s.map_or("auto".into(), |v| format!("{v:?}")),
            "num_ceps" => self.num_ceps.to_string(),
            "power_exponent" => format!("{:?}", self.power_exponent),
            "apply_dct" => self.apply_dct.to_string(),
            other => return Err(Error::InvalidParameter(format!("unknown config key '{other}'"))),
        })
    }

    /// Sets `key` from its text form. Range checks are left to `validate`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let f = &mut self.frontend;
        let m = &mut self.medium_time;
        let p = &mut self.pcen;
        match key {
            "frontend.frame_length_ms" => f.frame_length_ms = parse(key, value)?,
            "frontend.hop_ms" => f.hop_ms = parse(key, value)?,
            "frontend.preemphasis" => f.preemphasis = parse(key, value)?,
            "frontend.window" => f.window = value.parse()?,
            "frontend.fft_size" => f.fft_size = parse(key, value)?,
            "frontend.num_filters" => f.num_filters = parse(key, value)?,
            "frontend.fmin_hz" => f.fmin_hz = parse(key, value)?,
            "frontend.fmax_hz" => {
                f.fmax_hz = match value {
                    "nyquist" => None,
                    v => Some(parse(key, v)?),
                }
            }
            "medium_time.window_halfwidth" => m.window_halfwidth = parse(key, value)?,
            "medium_time.ans_lambda_a" => m.ans_lambda_a = parse(key, value)?,
            "medium_time.ans_lambda_b" => m.ans_lambda_b = parse(key, value)?,
            "medium_time.floor_factor" => m.floor_factor = parse(key, value)?,
            "medium_time.masking_lambda_t" => m.masking_lambda_t = parse(key, value)?,
            "medium_time.masking_mu_t" => m.masking_mu_t = parse(key, value)?,
            "medium_time.smoothing_halfwidth" => m.smoothing_halfwidth = parse(key, value)?,
            "medium_time.bypass" => m.bypass = parse(key, value)?,
            "mean_power.lambda_mu" => self.mean_power.lambda_mu = parse(key, value)?,
            "mean_power.mu_init" => {
                self.mean_power.mu_init = match value {
                    "first_frame_mean" => MuInit::FirstFrameMean,
                    v => MuInit::Fixed(parse(key, v)?),
                }
            }
            "pcen.alpha" => p.alpha = parse(key, value)?,
            "pcen.delta" => p.delta = parse(key, value)?,
            "pcen.r" => p.r = parse(key, value)?,
            "pcen.epsilon" => p.epsilon = parse(key, value)?,
            "pcen.s" => {
                p.s = match value {
                    "auto" => None,
                    v => Some(parse(key, v)?),
                }
            }
            "num_ceps" => self.num_ceps = parse(key, value)?,
            "power_exponent" => self.power_exponent = parse(key, value)?,
            "apply_dct" => self.apply_dct = parse(key, value)?,
            other => return Err(Error::InvalidParameter(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Parses a config file, starting from defaults. Errors carry the
    /// 1-based line number.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Config { line: i + 1, msg };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected 'key = value', got '{line}'")))?;
            cfg.set(key.trim(), value.trim()).map_err(|e| err(e.to_string()))?;
        }
        Ok(cfg)
    }

    /// Every key in canonical order, one `key = value` per line.
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        for key in KEYS {
            let value = self.get(key).expect("KEYS only lists known keys");
            let _ = writeln!(out, "{key} = {value}");
        }
        out
    }

    /// First eight bytes (little-endian) of the SHA-256 of the canonical
    /// rendering.
    pub fn fingerprint(&self) -> u64 {
        let digest = Sha256::digest(self.to_config_string().as_bytes());
        u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
    }
}
