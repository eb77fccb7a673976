//! WAV loading and deterministic test-signal synthesis.

use std::f64::consts::PI;
use std::path::Path;

use crate::error::{Error, Result};

/// The only sample rate accepted by [`load_wav`]. Input at any other rate is
/// rejected rather than resampled.
pub const REQUIRED_SAMPLE_RATE: u32 = 16_000;

const PCM16_SCALE: f64 = 32768.0;

/// Largest value strictly below 1.0 representable as f64.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// Mono audio with samples in `[-1.0, 1.0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    samples: Vec<f64>,
    sample_rate_hz: u32,
}

impl Waveform {
    pub fn new(samples: Vec<f64>, sample_rate_hz: u32) -> Result<Self> {
        if sample_rate_hz == 0 {
            return Err(Error::InvalidParameter("sample rate must be positive".into()));
        }
        if samples.is_empty() {
            return Err(Error::InvalidParameter("waveform has no samples".into()));
        }
        if let Some((i, x)) = samples
            .iter()
            .enumerate()
            .find(|(_, x)| !(-1.0..1.0).contains(*x))
        {
            return Err(Error::InvalidParameter(format!(
                "sample {i} = {x} outside [-1, 1)"
            )));
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> u32 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz as f64
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }
}

/// Loads a mono 16 kHz RIFF/WAVE file, either 16-bit PCM or 32-bit IEEE float.
///
/// Integer samples are divided by 32768. Float samples outside `[-1, 1)` are
/// clamped into range; non-finite float samples are an error.
pub fn load_wav(path: impl AsRef<Path>) -> Result<Waveform> {
    let path = path.as_ref();
    if !path.is_file() {
        return Err(Error::NotFound(path.to_path_buf()));
    }
    let mut reader = hound::WavReader::open(path).map_err(map_hound)?;
    let spec = reader.spec();

    if spec.channels != 1 {
        return Err(Error::UnsupportedEncoding(format!(
            "{} channels (only mono is supported)",
            spec.channels
        )));
    }
    let samples: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (hound::SampleFormat::Int, 16) => reader
            .samples::<i16>()
            .map(|s| s.map(|v| v as f64 / PCM16_SCALE))
            .collect::<std::result::Result<_, _>>()
            .map_err(map_hound)?,
        (hound::SampleFormat::Float, 32) => {
            let mut out = Vec::with_capacity(reader.len() as usize);
            for (i, s) in reader.samples::<f32>().enumerate() {
                let v = s.map_err(map_hound)? as f64;
                if !v.is_finite() {
                    return Err(Error::Wav(format!("non-finite float sample at index {i}")));
                }
                out.push(v.clamp(-1.0, BELOW_ONE));
            }
            out
        }
        (fmt, bits) => {
            return Err(Error::UnsupportedEncoding(format!(
                "{bits}-bit {fmt:?} samples (expected 16-bit PCM or 32-bit float)"
            )))
        }
    };
    if spec.sample_rate != REQUIRED_SAMPLE_RATE {
        return Err(Error::SampleRateMismatch {
            expected: REQUIRED_SAMPLE_RATE,
            found: spec.sample_rate,
        });
    }
    if samples.is_empty() {
        return Err(Error::Wav("file contains no samples".into()));
    }
    Waveform::new(samples, spec.sample_rate)
}

/// Writes `wave` as mono 16-bit PCM. Samples are scaled by 32768 and rounded.
pub fn write_wav_pcm16(path: impl AsRef<Path>, wave: &Waveform) -> Result<()> {
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: wave.sample_rate_hz(),
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut writer = hound::WavWriter::create(path, spec).map_err(map_hound)?;
    for &x in wave.samples() {
        let q = (x * PCM16_SCALE)
            .round()
            .clamp(i16::MIN as f64, i16::MAX as f64) as i16;
        writer.write_sample(q).map_err(map_hound)?;
    }
    writer.finalize().map_err(map_hound)
}

fn map_hound(err: hound::Error) -> Error {
    match err {
        hound::Error::IoError(e) => Error::Io(e),
        hound::Error::Unsupported => Error::UnsupportedEncoding("unsupported wav format".into()),
        hound::Error::FormatError(msg) => Error::Wav(msg.to_string()),
        other => Error::Wav(other.to_string()),
    }
}

/// `amplitude * sin(2π f n / sr)` for `n = 0..round(duration_s * sr)`.
pub fn synth_tone(
    freq_hz: f64,
    duration_s: f64,
    sample_rate_hz: u32,
    amplitude: f64,
) -> Result<Waveform> {
    let nyquist = sample_rate_hz as f64 / 2.0;
    if sample_rate_hz == 0 {
        return Err(Error::InvalidParameter("sample rate must be positive".into()));
    }
    if !(freq_hz > 0.0 && freq_hz < nyquist) {
        return Err(Error::InvalidParameter(format!(
            "tone frequency {freq_hz} Hz must lie in (0, {nyquist})"
        )));
    }
    if !(amplitude > 0.0 && amplitude <= 0.999) {
        return Err(Error::InvalidParameter(format!(
            "amplitude {amplitude} must lie in (0, 0.999]"
        )));
    }
    if !(duration_s > 0.0 && duration_s.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "duration {duration_s} s must be positive"
        )));
    }
    let len = (duration_s * sample_rate_hz as f64).round() as usize;
    if len == 0 {
        return Err(Error::InvalidParameter(format!(
            "duration {duration_s} s is shorter than one sample"
        )));
    }
    let step = 2.0 * PI * freq_hz / sample_rate_hz as f64;
    let samples = (0..len)
        .map(|n| amplitude * (step * n as f64).sin())
        .collect();
    Waveform::new(samples, sample_rate_hz)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_raw(path: &Path, spec: hound::WavSpec, samples: &[i16]) {
        let mut w = hound::WavWriter::create(path, spec).unwrap();
        for &s in samples {
            w.write_sample(s).unwrap();
        }
        w.finalize().unwrap();
    }

    fn pcm16(channels: u16, rate: u32) -> hound::WavSpec {
        hound::WavSpec {
            channels,
            sample_rate: rate,
            bits_per_sample: 16,
            sample_format: hound::SampleFormat::Int,
        }
    }

    #[test]
    fn pcm16_scaling() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.wav");
        write_raw(&path, pcm16(1, 16000), &[0, 16384, -32768]);
        let w = load_wav(&path).unwrap();
        assert_eq!(w.samples(), &[0.0, 0.5, -1.0]);
        assert_eq!(w.sample_rate_hz(), 16000);
    }

    #[test]
    fn rejects_stereo() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.wav");
        write_raw(&path, pcm16(2, 16000), &[1, 2, 3, 4]);
        assert!(matches!(load_wav(&path), Err(Error::UnsupportedEncoding(_))));
    }

    #[test]
    fn rejects_8k() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("n.wav");
        write_raw(&path, pcm16(1, 8000), &[1, 2, 3]);
        assert!(matches!(
            load_wav(&path),
            Err(Error::SampleRateMismatch {
                expected: 16000,
                found: 8000
            })
        ));
    }

    #[test]
    fn missing_file() {
        assert!(matches!(
            load_wav("/definitely/not/here.wav"),
            Err(Error::NotFound(_))
        ));
    }

    #[test]
    fn float_samples_pass_through_and_clamp() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.wav");
        let spec = hound::WavSpec {
            channels: 1,
            sample_rate: 16000,
            bits_per_sample: 32,
            sample_format: hound::SampleFormat::Float,
        };
        let mut w = hound::WavWriter::create(&path, spec).unwrap();
        for s in [0.25f32, -0.5, 1.0, -1.5] {
            w.write_sample(s).unwrap();
        }
        w.finalize().unwrap();
        let wave = load_wav(&path).unwrap();
        assert_eq!(&wave.samples()[..2], &[0.25, -0.5]);
        assert!(wave.samples()[2] < 1.0 && wave.samples()[2] > 0.999_999);
        assert_eq!(wave.samples()[3], -1.0);
    }

    #[test]
    fn rejects_8bit_pcm() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b.wav");
        let spec = hound::WavSpec {
            channels: 1,
            sample_rate: 16000,
            bits_per_sample: 8,
            sample_format: hound::SampleFormat::Int,
        };
        let mut w = hound::WavWriter::create(&path, spec).unwrap();
        w.write_sample(3i8).unwrap();
        w.finalize().unwrap();
        assert!(matches!(load_wav(&path), Err(Error::UnsupportedEncoding(_))));
    }

    #[test]
    fn tone_quarter_period() {
        let w = synth_tone(1000.0, 0.01, 16000, 0.5).unwrap();
        assert_eq!(w.len(), 160);
        assert!((w.samples()[4] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn tone_rejects_bad_params() {
        for (f, d, a) in [(0.0, 1.0, 0.5), (9000.0, 1.0, 0.5), (8000.0, 1.0, 0.5), (100.0, 0.0, 0.5), (100.0, 1.0, 1.0), (100.0, 1.0, 0.0)] {
            assert!(
                matches!(synth_tone(f, d, 16000, a), Err(Error::InvalidParameter(_))),
                "f={f} d={d} a={a}"
            );
        }
    }

    #[test]
    fn waveform_rejects_out_of_range() {
        assert!(Waveform::new(vec![0.0, 1.0], 16000).is_err());
        assert!(Waveform::new(vec![], 16000).is_err());
        assert!(Waveform::new(vec![0.1], 0).is_err());
        assert!(Waveform::new(vec![-1.0, 0.999], 16000).is_ok());
    }
}
