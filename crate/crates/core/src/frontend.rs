//! Short-time front end: pre-emphasis, framing, power spectrum and mel
//! integration. Produces the channel energies `E[t, f]` that every feature
//! type starts from.
//!
//! Power is `|X_k|^2` with no `1/N` normalization. Every downstream stage is
//! either scale-invariant or absorbs the scale into its compression.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use ndarray::{Array2, Axis};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::audio::Waveform;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WindowKind {
    Hamming,
    Hann,
    Rectangular,
}

impl WindowKind {
    /// Symmetric window of length `n`.
    pub fn coefficients(self, n: usize) -> Vec<f64> {
        if n == 1 {
            return vec![1.0];
        }
        let denom = (n - 1) as f64;
        (0..n)
            .map(|i| {
                let phase = 2.0 * PI * i as f64 / denom;
                match self {
                    WindowKind::Hamming => 0.54 - 0.46 * phase.cos(),
                    WindowKind::Hann => 0.5 - 0.5 * phase.cos(),
                    WindowKind::Rectangular => 1.0,
                }
            })
            .collect()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            WindowKind::Hamming => "hamming",
            WindowKind::Hann => "hann",
            WindowKind::Rectangular => "rectangular",
        }
    }
}

impl fmt::Display for WindowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WindowKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hamming" => Ok(WindowKind::Hamming),
            "hann" => Ok(WindowKind::Hann),
            "rectangular" => Ok(WindowKind::Rectangular),
            other => Err(Error::InvalidParameter(format!("unknown window '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontendConfig {
    pub frame_length_ms: f64,
    pub hop_ms: f64,
    pub preemphasis: f64,
    pub window: WindowKind,
    pub fft_size: usize,
    pub num_filters: usize,
    pub fmin_hz: f64,
    /// `None` means the Nyquist frequency of the input.
    pub fmax_hz: Option<f64>,
}

impl Default for FrontendConfig {
    fn default() -> Self {
        Self {
            frame_length_ms: 25.0,
            hop_ms: 10.0,
            preemphasis: 0.97,
            window: WindowKind::Hamming,
            fft_size: 512,
            num_filters: 60,
            fmin_hz: 20.0,
            fmax_hz: None,
        }
    }
}

impl FrontendConfig {
    pub fn frame_len(&self, sample_rate_hz: u32) -> usize {
        (self.frame_length_ms * sample_rate_hz as f64 / 1000.0).round() as usize
    }

    pub fn hop_len(&self, sample_rate_hz: u32) -> usize {
        (self.hop_ms * sample_rate_hz as f64 / 1000.0).round() as usize
    }

    pub fn fmax(&self, sample_rate_hz: u32) -> f64 {
        self.fmax_hz.unwrap_or(sample_rate_hz as f64 / 2.0)
    }

    pub fn validate(&self, sample_rate_hz: u32) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        let nyquist = sample_rate_hz as f64 / 2.0;
        let frame_len = self.frame_len(sample_rate_hz);
        if !self.fft_size.is_power_of_two() {
            return bad(format!("fft size {} is not a power of two", self.fft_size));
        }
        if frame_len == 0 || frame_len > self.fft_size {
            return bad(format!(
                "frame length {frame_len} samples must be in [1, fft size {}]",
                self.fft_size
            ));
        }
        if self.hop_len(sample_rate_hz) == 0 {
            return bad(format!("hop of {} ms is shorter than one sample", self.hop_ms));
        }
        if !(0.0..1.0).contains(&self.preemphasis) {
            return bad(format!("pre-emphasis {} must lie in [0, 1)", self.preemphasis));
        }
        if self.num_filters < 2 {
            return bad(format!("need at least 2 mel filters, got {}", self.num_filters));
        }
        let fmax = self.fmax(sample_rate_hz);
        if !(self.fmin_hz >= 0.0 && self.fmin_hz < fmax && fmax <= nyquist) {
            return bad(format!(
                "band edges must satisfy 0 <= fmin ({}) < fmax ({fmax}) <= {nyquist}",
                self.fmin_hz
            ));
        }
        Ok(())
    }
}

/// Windowed analysis frames, one per row.
#[derive(Debug, Clone, PartialEq)]
pub struct Frames {
    pub values: Array2<f64>,
    pub hop_samples: usize,
    pub sample_rate_hz: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSpectrogram {
    /// `T x (fft_size/2 + 1)`.
    pub values: Array2<f64>,
    pub hop_samples: usize,
    pub sample_rate_hz: u32,
}

/// Non-negative `T x F` channel energies.
#[derive(Debug, Clone, PartialEq)]
pub struct MelEnergies {
    values: Array2<f64>,
}

impl MelEnergies {
    pub fn new(values: Array2<f64>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "energy {v} is negative or non-finite"
            )));
        }
        Ok(Self { values })
    }

    /// Callers guarantee non-negative finite entries.
    pub(crate) fn from_array(values: Array2<f64>) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite() && *v >= 0.0));
        Self { values }
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn into_inner(self) -> Array2<f64> {
        self.values
    }

    pub fn num_frames(&self) -> usize {
        self.values.nrows()
    }

    pub fn num_channels(&self) -> usize {
        self.values.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.values.dim()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Filterbank {
    /// `F x K` triangular weights in `[0, 1]`.
    pub weights: Array2<f64>,
    /// Strictly increasing filter peaks in Hz.
    pub center_freqs_hz: Vec<f64>,
}

pub fn hz_to_mel(hz: f64) -> f64 {
    2595.0 * (1.0 + hz / 700.0).log10()
}

pub fn mel_to_hz(mel: f64) -> f64 {
    700.0 * (10f64.powf(mel / 2595.0) - 1.0)
}

/// `out[0] = x[0]`, `out[n] = x[n] - coeff * x[n-1]`.
pub fn pre_emphasize(samples: &[f64], coeff: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(samples.len());
    if let Some(&first) = samples.first() {
        out.push(first);
    }
    out.extend(samples.windows(2).map(|w| w[1] - coeff * w[0]));
    out
}

/// Splits `samples` into `1 + (len - N) / hop` windowed frames of `N`
/// samples, with frame `t` starting at `t * hop`. Trailing samples that do
/// not fill a frame are dropped.
pub fn frame_signal(samples: &[f64], sample_rate_hz: u32, cfg: &FrontendConfig) -> Result<Frames> {
    cfg.validate(sample_rate_hz)?;
    let n = cfg.frame_len(sample_rate_hz);
    let hop = cfg.hop_len(sample_rate_hz);
    if samples.len() < n {
        return Err(Error::InputTooShort {
            needed: n,
            got: samples.len(),
        });
    }
    let num_frames = 1 + (samples.len() - n) / hop;
    let window = cfg.window.coefficients(n);
    let values = Array2::from_shape_fn((num_frames, n), |(t, i)| samples[t * hop + i] * window[i]);
    Ok(Frames {
        values,
        hop_samples: hop,
        sample_rate_hz,
    })
}

/// `|DFT_k(frame)|^2` for `k = 0..=fft_size/2`, zero-padding each frame.
pub fn power_spectrum(frames: &Frames, fft_size: usize) -> Result<PowerSpectrogram> {
    let frame_len = frames.values.ncols();
    if !fft_size.is_power_of_two() || frame_len > fft_size {
        return Err(Error::InvalidParameter(format!(
            "fft size {fft_size} must be a power of two no smaller than the frame length {frame_len}"
        )));
    }
    let fft = FftPlanner::<f64>::new().plan_fft_forward(fft_size);
    let bins = fft_size / 2 + 1;
    let mut values = Array2::zeros((frames.values.nrows(), bins));
    let mut buf = vec![Complex::new(0.0, 0.0); fft_size];
    let mut scratch = vec![Complex::new(0.0, 0.0); fft.get_inplace_scratch_len()];

    for (frame, mut row) in frames.values.outer_iter().zip(values.outer_iter_mut()) {
        for (b, &x) in buf.iter_mut().zip(frame.iter()) {
            *b = Complex::new(x, 0.0);
        }
        buf[frame_len..].fill(Complex::new(0.0, 0.0));
        fft.process_with_scratch(&mut buf, &mut scratch);
        for (r, c) in row.iter_mut().zip(&buf[..bins]) {
            *r = c.norm_sqr();
        }
    }
    Ok(PowerSpectrogram {
        values,
        hop_samples: frames.hop_samples,
        sample_rate_hz: frames.sample_rate_hz,
    })
}

/// Triangular filters with peaks equally spaced on the mel scale
/// `m = 2595 log10(1 + f/700)` between `fmin` and `fmax`. Filter `f` rises
/// linearly from mel point `f` to `f+1` and falls to zero at `f+2`.
pub fn build_mel_filterbank(cfg: &FrontendConfig, sample_rate_hz: u32) -> Result<Filterbank> {
    cfg.validate(sample_rate_hz)?;
    let num_filters = cfg.num_filters;
    let bins = cfg.fft_size / 2 + 1;
    let mel_lo = hz_to_mel(cfg.fmin_hz);
    let mel_hi = hz_to_mel(cfg.fmax(sample_rate_hz));
    let edges: Vec<f64> = (0..num_filters + 2)
        .map(|i| mel_to_hz(mel_lo + (mel_hi - mel_lo) * i as f64 / (num_filters + 1) as f64))
        .collect();
    let bin_hz = sample_rate_hz as f64 / cfg.fft_size as f64;

    let mut weights = Array2::zeros((num_filters, bins));
    for (f, mut row) in weights.outer_iter_mut().enumerate() {
        let (lo, center, hi) = (edges[f], edges[f + 1], edges[f + 2]);
        for (k, w) in row.iter_mut().enumerate() {
            let hz = k as f64 * bin_hz;
            *w = if hz > lo && hz <= center {
                (hz - lo) / (center - lo)
            } else if hz > center && hz < hi {
                (hi - hz) / (hi - center)
            } else {
                0.0
            };
        }
        if row.sum() <= 0.0 {
            return Err(Error::DegenerateFilter { index: f });
        }
    }
    Ok(Filterbank {
        weights,
        center_freqs_hz: edges[1..=num_filters].to_vec(),
    })
}

/// `E[t, f] = sum_k W[f, k] * P[t, k]`.
pub fn apply_filterbank(ps: &PowerSpectrogram, fb: &Filterbank) -> Result<MelEnergies> {
    if ps.values.ncols() != fb.weights.ncols() {
        return Err(Error::DimensionMismatch {
            expected: (ps.values.nrows(), fb.weights.ncols()),
            found: ps.values.dim(),
        });
    }
    let mut energies = ps.values.dot(&fb.weights.t());
    // Summation of non-negative terms cannot go negative, but keep the type
    // invariant exact against -0.0.
    energies.mapv_inplace(|v| v.max(0.0));
    Ok(MelEnergies::from_array(energies))
}

/// Full front end: pre-emphasis, framing, power spectrum, mel integration.
pub fn mel_energies(wave: &Waveform, cfg: &FrontendConfig) -> Result<MelEnergies> {
    let sr = wave.sample_rate_hz();
    let fb = build_mel_filterbank(cfg, sr)?;
    let emphasized = pre_emphasize(wave.samples(), cfg.preemphasis);
    let frames = frame_signal(&emphasized, sr, cfg)?;
    let ps = power_spectrum(&frames, cfg.fft_size)?;
    apply_filterbank(&ps, &fb)
}

/// Number of frames the front end yields for `len` samples, or `None` when
/// the input is shorter than one frame.
pub fn num_frames(len: usize, sample_rate_hz: u32, cfg: &FrontendConfig) -> Option<usize> {
    let n = cfg.frame_len(sample_rate_hz);
    let hop = cfg.hop_len(sample_rate_hz);
    (len >= n && hop > 0).then(|| 1 + (len - n) / hop)
}

impl PowerSpectrogram {
    pub fn frame_power(&self) -> Vec<f64> {
        self.values.sum_axis(Axis(1)).to_vec()
    }
}
