use std::f64::consts::PI;

use ndarray::Array2;
use pncc_core::pipeline::{dct_basis, dct_ii};
use pncc_core::{extract, FeatureType, PipelineConfig, Waveform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn noise(seed: u64, len: usize, amplitude: f64) -> Waveform {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = (0..len).map(|_| rng.random_range(-amplitude..amplitude)).collect();
    Waveform::new(samples, 16000).unwrap()
}

/// Orthonormal DCT-III (the inverse of DCT-II), written out directly.
fn inverse_dct(c: &[f64]) -> Vec<f64> {
    let n = c.len();
    (0..n)
        .map(|f| {
            c.iter()
                .enumerate()
                .map(|(k, &ck)| {
                    let w = if k == 0 { (1.0 / n as f64).sqrt() } else { (2.0 / n as f64).sqrt() };
                    w * ck * (PI * k as f64 * (2 * f + 1) as f64 / (2 * n) as f64).cos()
                })
                .sum()
        })
        .collect()
}

#[test]
fn dct_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [4, 30, 60] {
        let row: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
        let x = Array2::from_shape_vec((1, n), row.clone()).unwrap();
        let c = dct_ii(&x, n).unwrap();
        let back = inverse_dct(c.row(0).as_slice().unwrap());
        for (a, b) in back.iter().zip(&row) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn dct_basis_is_orthonormal() {
    for n in [2, 7, 30, 60, 128] {
        let b = dct_basis(n, n);
        let gram = b.dot(&b.t());
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((gram[[i, j]] - want).abs() < 1e-10, "n={n} ({i},{j})");
            }
        }
    }
}

#[test]
fn shape_for_one_second() {
    let wave = noise(1, 16000, 0.5);
    for kind in FeatureType::ALL {
        let f = extract(&wave, kind, &PipelineConfig::default()).unwrap();
        assert_eq!(f.values.dim(), (98, 30), "{kind}");
        assert_eq!(f.feature_type, kind);
        assert_eq!(f.fingerprint, PipelineConfig::default().fingerprint());
    }
}

#[test]
fn spncc_stationary_signal_gives_identical_frames() {
    // 1 kHz has a 16-sample period, so every 160-sample hop sees the same
    // waveform. The phase puts a zero crossing at n = -1, which makes
    // pre-emphasis of the first sample consistent with the periodic signal.
    let samples: Vec<f64> = (0..16000)
        .map(|n| 0.5 * (2.0 * PI * (n + 1) as f64 / 16.0).sin())
        .collect();
    let wave = Waveform::new(samples, 16000).unwrap();
    let f = extract(&wave, FeatureType::Spncc, &PipelineConfig::default()).unwrap();
    let first = f.values.row(0);
    for row in f.values.outer_iter() {
        for (a, b) in row.iter().zip(first.iter()) {
            assert!((a - b).abs() < 1e-6);
        }
    }
}

#[test]
fn pncc_with_bypass_equals_spncc() {
    let wave = noise(3, 24000, 0.3);
    let mut cfg = PipelineConfig::default();
    cfg.medium_time.bypass = true;
    let pncc = extract(&wave, FeatureType::Pncc, &cfg).unwrap();
    let spncc = extract(&wave, FeatureType::Spncc, &cfg).unwrap();
    assert_eq!(pncc.values, spncc.values);

    cfg.medium_time.bypass = false;
    let full = extract(&wave, FeatureType::Pncc, &cfg).unwrap();
    assert_ne!(full.values, spncc.values);
}

#[test]
fn spncc_is_scale_invariant() {
    let base = noise(5, 20000, 0.09);
    let reference = extract(&base, FeatureType::Spncc, &PipelineConfig::default()).unwrap();
    for k in [0.1, 10.0] {
        let scaled = Waveform::new(base.samples().iter().map(|x| x * k).collect(), 16000).unwrap();
        let f = extract(&scaled, FeatureType::Spncc, &PipelineConfig::default()).unwrap();
        for (a, b) in f.values.iter().zip(reference.values.iter()) {
            assert!((a - b).abs() <= 1e-6 * a.abs().max(b.abs()), "k={k}: {a} vs {b}");
        }
    }
}

#[test]
fn mfcc_scaling_only_shifts_c0() {
    let base = noise(9, 16000, 0.05);
    let cfg = PipelineConfig::default();
    let f = cfg.frontend.num_filters as f64;
    let reference = extract(&base, FeatureType::Mfcc, &cfg).unwrap();
    for k in [0.1, 3.0, 10.0f64] {
        let scaled = Waveform::new(base.samples().iter().map(|x| x * k).collect(), 16000).unwrap();
        let out = extract(&scaled, FeatureType::Mfcc, &cfg).unwrap();
        // Each log channel moves by ln(k^2); the orthonormal c0 weight is sqrt(1/F).
        let shift = (1.0 / f).sqrt() * f * (k * k).ln();
        for (a, b) in out.values.outer_iter().zip(reference.values.outer_iter()) {
            assert!((a[0] - b[0] - shift).abs() < 1e-6, "k={k}");
            for c in 1..30 {
                assert!((a[c] - b[c]).abs() < 1e-6, "k={k} c={c}");
            }
        }
    }
}

#[test]
fn all_types_finite_on_silence() {
    let silence = Waveform::new(vec![0.0; 8000], 16000).unwrap();
    for kind in FeatureType::ALL {
        for apply_dct in [true, false] {
            let cfg = PipelineConfig { apply_dct, ..Default::default() };
            let f = extract(&silence, kind, &cfg).unwrap();
            assert!(f.values.iter().all(|v| v.is_finite()), "{kind}");
        }
    }
}

#[test]
fn feature_types_differ_on_speechlike_input() {
    let wave = noise(21, 16000, 0.4);
    let cfg = PipelineConfig::default();
    let outs: Vec<_> = FeatureType::ALL
        .iter()
        .map(|&k| extract(&wave, k, &cfg).unwrap().values)
        .collect();
    for i in 0..outs.len() {
        for j in i + 1..outs.len() {
            assert_ne!(outs[i], outs[j]);
        }
    }
}
