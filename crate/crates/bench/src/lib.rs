//! Deterministic synthetic inputs shared by the benchmarks.

use pncc_core::{TrialScore, Waveform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform noise at 16 kHz, reproducible from `seed`.
pub fn noise_waveform(seed: u64, seconds: f64, amplitude: f64) -> Waveform {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = (seconds * 16000.0).round() as usize;
    let samples = (0..len).map(|_| rng.random_range(-amplitude..amplitude)).collect();
    Waveform::new(samples, 16000).expect("amplitude below 1")
}

/// Gaussian-like trial scores with targets shifted up by `separation`.
pub fn trial_scores(seed: u64, targets: usize, nontargets: usize, separation: f64) -> Vec<TrialScore> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |shift: f64| (0..4).map(|_| rng.random_range(-1.0..1.0)).sum::<f64>() + shift;
    let mut out: Vec<TrialScore> = (0..targets).map(|_| TrialScore::target(draw(separation))).collect();
    out.extend((0..nontargets).map(|_| TrialScore::nontarget(draw(0.0))));
    out
}
