use std::f64::consts::PI;

use ndarray::Array2;
use pncc_core::audio::{synth_tone, write_wav_pcm16};
use pncc_core::frontend::{
    apply_filterbank, build_mel_filterbank, frame_signal, num_frames, power_spectrum, Frames,
    PowerSpectrogram,
};
use pncc_core::{load_wav, FrontendConfig, Waveform, WindowKind};
use proptest::prelude::*;

/// Direct O(N^2) DFT power, independent of the FFT path.
fn direct_dft_power(frame: &[f64], fft_size: usize) -> Vec<f64> {
    (0..=fft_size / 2)
        .map(|k| {
            let (mut re, mut im) = (0.0, 0.0);
            for (n, &x) in frame.iter().enumerate() {
                let phase = -2.0 * PI * (k * n) as f64 / fft_size as f64;
                re += x * phase.cos();
                im += x * phase.sin();
            }
            re * re + im * im
        })
        .collect()
}

fn argmax(xs: impl IntoIterator<Item = f64>) -> usize {
    xs.into_iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best })
        .0
}

#[test]
fn fft_matches_direct_dft_for_1khz_tone() {
    let tone = synth_tone(1000.0, 512.0 / 16000.0, 16000, 0.7).unwrap();
    let frames = Frames {
        values: Array2::from_shape_vec((1, 512), tone.samples().to_vec()).unwrap(),
        hop_samples: 160,
        sample_rate_hz: 16000,
    };
    let ps = power_spectrum(&frames, 512).unwrap();
    let oracle = direct_dft_power(tone.samples(), 512);
    assert_eq!(argmax(oracle.iter().copied()), 32);
    assert_eq!(argmax(ps.values.row(0).iter().copied()), 32);
    let peak = oracle[32];
    for (got, want) in ps.values.row(0).iter().zip(&oracle) {
        assert!((got - want).abs() <= 1e-9 * peak, "{got} vs {want}");
    }
}

#[test]
fn zero_padding_matches_direct_dft() {
    let cfg = FrontendConfig::default();
    let x: Vec<f64> = (0..400).map(|n| ((n * 37 % 101) as f64 / 101.0) - 0.5).collect();
    let frames = frame_signal(&x, 16000, &cfg).unwrap();
    let ps = power_spectrum(&frames, 512).unwrap();
    let oracle = direct_dft_power(frames.values.row(0).as_slice().unwrap(), 512);
    let scale = oracle.iter().cloned().fold(0.0, f64::max);
    for (got, want) in ps.values.row(0).iter().zip(&oracle) {
        assert!((got - want).abs() <= 1e-9 * scale);
    }
}

#[test]
fn tone_at_filter_center_peaks_in_that_filter() {
    let cfg = FrontendConfig {
        window: WindowKind::Rectangular,
        ..FrontendConfig::default()
    };
    let fb = build_mel_filterbank(&cfg, 16000).unwrap();
    for target in [12, 25, 40, 55] {
        let freq = fb.center_freqs_hz[target];
        let tone = synth_tone(freq, 0.1, 16000, 0.5).unwrap();
        let frames = frame_signal(tone.samples(), 16000, &cfg).unwrap();
        let ps = power_spectrum(&frames, cfg.fft_size).unwrap();

        // Brute-force product oracle.
        let (t_len, k_len) = ps.values.dim();
        let mut oracle = Array2::<f64>::zeros((t_len, fb.weights.nrows()));
        for t in 0..t_len {
            for f in 0..fb.weights.nrows() {
                for k in 0..k_len {
                    oracle[[t, f]] += fb.weights[[f, k]] * ps.values[[t, k]];
                }
            }
        }
        let mel = apply_filterbank(&ps, &fb).unwrap();
        for t in 0..t_len {
            assert_eq!(argmax(oracle.row(t).iter().copied()), target, "oracle, filter {target}");
            assert_eq!(argmax(mel.values().row(t).iter().copied()), target, "filter {target} frame {t}");
            for f in 0..fb.weights.nrows() {
                assert!((mel.values()[[t, f]] - oracle[[t, f]]).abs() <= 1e-9 * (1.0 + oracle[[t, f]]));
            }
        }
    }
}

#[test]
fn pcm16_roundtrip_within_one_lsb() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tone.wav");
    let wave = synth_tone(333.0, 0.25, 16000, 0.9).unwrap();
    write_wav_pcm16(&path, &wave).unwrap();
    let back = load_wav(&path).unwrap();
    assert_eq!(back.len(), wave.len());
    for (a, b) in back.samples().iter().zip(wave.samples()) {
        assert!((a - b).abs() <= 1.0 / 32768.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frame_count_matches_loop(len in 400usize..6000, hop_ms in 5.0f64..20.0) {
        let cfg = FrontendConfig { hop_ms, window: WindowKind::Rectangular, ..FrontendConfig::default() };
        let x = vec![0.25; len];
        let hop = cfg.hop_len(16000);
        let mut expected = 0;
        let mut start = 0;
        while start + 400 <= len {
            expected += 1;
            start += hop;
        }
        let frames = frame_signal(&x, 16000, &cfg).unwrap();
        prop_assert_eq!(frames.values.nrows(), expected);
        prop_assert_eq!(num_frames(len, 16000, &cfg), Some(expected));
    }

    #[test]
    fn filterbank_is_linear(seed in any::<u64>(), scale in 0.0f64..1e4) {
        let fb = build_mel_filterbank(&FrontendConfig::default(), 16000).unwrap();
        let values = Array2::from_shape_fn((3, 257), |(t, k)| {
            ((seed.wrapping_mul(6364136223846793005).wrapping_add((t * 257 + k) as u64) >> 11) as f64)
                / (1u64 << 53) as f64
        });
        let ps = PowerSpectrogram { values: values.clone(), hop_samples: 160, sample_rate_hz: 16000 };
        let scaled = PowerSpectrogram { values: values * scale, ..ps.clone() };
        let a = apply_filterbank(&ps, &fb).unwrap();
        let b = apply_filterbank(&scaled, &fb).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x * scale - y).abs() <= 1e-12 * y.abs().max(1e-300));
        }
    }

    #[test]
    fn mel_energies_non_negative(samples in proptest::collection::vec(-1.0f64..1.0, 400..3000)) {
        let wave = Waveform::new(samples, 16000).unwrap();
        let e = pncc_core::frontend::mel_energies(&wave, &FrontendConfig::default()).unwrap();
        prop_assert!(e.values().iter().all(|&v| v >= 0.0 && v.is_finite()));
    }

    #[test]
    fn tone_peak_bounded(freq in 1.0f64..7999.0, amp in 0.001f64..0.999, dur in 0.001f64..0.2) {
        let w = synth_tone(freq, dur, 16000, amp).unwrap();
        prop_assert_eq!(w.len(), (dur * 16000.0).round() as usize);
        prop_assert!(w.samples().iter().all(|x| x.abs() <= amp));
    }
}
