use pncc_core::metrics::{det_curve, eer, min_dcf};
use pncc_core::{DcfParams, Label, TrialScore};
use proptest::prelude::*;

/// Operating points by direct counting at every candidate threshold.
fn brute_force_points(trials: &[TrialScore]) -> Vec<(f64, f64, f64)> {
    let nt = trials.iter().filter(|t| t.label == Label::Target).count() as f64;
    let nn = trials.len() as f64 - nt;
    let mut candidates: Vec<f64> = trials.iter().map(|t| t.score).collect();
    candidates.push(f64::NEG_INFINITY);
    candidates.push(f64::INFINITY);
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    candidates.dedup();
    candidates
        .into_iter()
        .map(|th| {
            let miss = trials
                .iter()
                .filter(|t| t.label == Label::Target && t.score < th)
                .count() as f64;
            let fa = trials
                .iter()
                .filter(|t| t.label == Label::Nontarget && t.score >= th)
                .count() as f64;
            (th, miss / nt, fa / nn)
        })
        .collect()
}

fn brute_force_eer(trials: &[TrialScore]) -> f64 {
    let pts = brute_force_points(trials);
    for w in pts.windows(2) {
        let ((_, ma, fa), (_, mb, fb)) = (w[0], w[1]);
        if ma - fa < 0.0 && mb - fb >= 0.0 {
            // Intersection of the segment with the diagonal, determinant form.
            return (ma * fb - fa * mb) / ((ma - fa) - (mb - fb));
        }
    }
    unreachable!()
}

fn brute_force_min_dcf(trials: &[TrialScore], p: &DcfParams) -> f64 {
    let norm = (p.c_miss * p.p_tar).min(p.c_fa * (1.0 - p.p_tar));
    brute_force_points(trials)
        .into_iter()
        .map(|(_, m, f)| (p.c_miss * p.p_tar * m + p.c_fa * (1.0 - p.p_tar) * f) / norm)
        .fold(f64::INFINITY, f64::min)
}

fn trial_set() -> impl Strategy<Value = Vec<TrialScore>> {
    // Coarse score grid so ties occur regularly.
    (1usize..32, 1usize..32).prop_flat_map(|(nt, nn)| {
        (
            proptest::collection::vec(-20i32..20, nt),
            proptest::collection::vec(-20i32..20, nn),
        )
            .prop_map(|(t, n)| {
                t.into_iter()
                    .map(|s| TrialScore::target(s as f64 * 0.25))
                    .chain(n.into_iter().map(|s| TrialScore::nontarget(s as f64 * 0.25)))
                    .collect()
            })
    })
}

#[test]
fn three_by_three_min_dcf() {
    let t: Vec<TrialScore> = [0.8, 0.6, 0.4]
        .iter()
        .map(|&s| TrialScore::target(s))
        .chain([0.7, 0.3, 0.1].iter().map(|&s| TrialScore::nontarget(s)))
        .collect();
    let p = DcfParams::default();
    let want = brute_force_min_dcf(&t, &p);
    // Reject-all costs 0.01; the threshold at 0.8 costs 0.01*2/3 + 0.99*0 = 2/3 normalized.
    assert!((want - 2.0 / 3.0).abs() < 1e-12);
    assert!((min_dcf(&t, &p).unwrap() - want).abs() < 1e-12);
    assert!((eer(&t).unwrap() - brute_force_eer(&t)).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn matches_brute_force(trials in trial_set()) {
        let p = DcfParams::default();
        prop_assert!((eer(&trials).unwrap() - brute_force_eer(&trials)).abs() < 1e-12);
        prop_assert!((min_dcf(&trials, &p).unwrap() - brute_force_min_dcf(&trials, &p)).abs() < 1e-12);
        let det = det_curve(&trials).unwrap();
        let oracle = brute_force_points(&trials);
        prop_assert_eq!(det.points.len(), oracle.len());
        for (a, (th, m, f)) in det.points.iter().zip(oracle) {
            prop_assert_eq!((a.threshold, a.p_miss, a.p_fa), (th, m, f));
        }
    }

    #[test]
    fn det_is_monotone(trials in trial_set()) {
        let det = det_curve(&trials).unwrap();
        let first = det.points.first().unwrap();
        let last = det.points.last().unwrap();
        prop_assert_eq!((first.p_miss, first.p_fa), (0.0, 1.0));
        prop_assert_eq!((last.p_miss, last.p_fa), (1.0, 0.0));
        for w in det.points.windows(2) {
            prop_assert!(w[0].threshold < w[1].threshold);
            prop_assert!(w[0].p_miss <= w[1].p_miss);
            prop_assert!(w[0].p_fa >= w[1].p_fa);
        }
    }

    #[test]
    fn normalized_min_dcf_in_unit_interval(trials in trial_set(), p_tar in 0.001f64..0.999, c_miss in 0.1f64..10.0, c_fa in 0.1f64..10.0) {
        let v = min_dcf(&trials, &DcfParams { p_tar, c_miss, c_fa }).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&v));
    }

    #[test]
    fn rank_statistics_only(trials in trial_set(), a in 0.1f64..10.0, b in -5.0f64..5.0) {
        let mapped: Vec<TrialScore> = trials
            .iter()
            .map(|t| TrialScore::new(t.label, (a * t.score + b).exp()))
            .collect();
        let p = DcfParams::default();
        prop_assert!((eer(&trials).unwrap() - eer(&mapped).unwrap()).abs() < 1e-12);
        prop_assert!((min_dcf(&trials, &p).unwrap() - min_dcf(&mapped, &p).unwrap()).abs() < 1e-12);
    }
}
