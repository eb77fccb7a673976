//! Detection metrics for speaker-verification trial scores: DET operating
//! points, equal error rate and minimum detection cost.
//!
//! A trial is accepted when `score >= threshold`. Thresholds are swept over
//! every distinct score, plus the two degenerate operating points
//! (accept everything, reject everything).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Target,
    Nontarget,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Target => "target",
            Label::Nontarget => "nontarget",
        })
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "target" => Ok(Label::Target),
            "nontarget" => Ok(Label::Nontarget),
            other => Err(Error::InvalidParameter(format!(
                "label must be 'target' or 'nontarget', got '{other}'"
            ))),
        }
    }
}

/// One scored trial; higher scores mean "more likely the same speaker".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialScore {
    pub label: Label,
    pub score: f64,
}

impl TrialScore {
    pub fn new(label: Label, score: f64) -> Self {
        Self { label, score }
    }

    pub fn target(score: f64) -> Self {
        Self::new(Label::Target, score)
    }

    pub fn nontarget(score: f64) -> Self {
        Self::new(Label::Nontarget, score)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetPoint {
    /// `-inf` for the accept-all point and `+inf` for reject-all.
    pub threshold: f64,
    pub p_miss: f64,
    pub p_fa: f64,
}

/// Operating points ordered by rising threshold: `p_miss` is non-decreasing
/// and `p_fa` non-increasing along the list.
#[derive(Debug, Clone, PartialEq)]
pub struct DetCurve {
    pub points: Vec<DetPoint>,
}

/// Cost model for the detection cost function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DcfParams {
    pub p_tar: f64,
    pub c_miss: f64,
    pub c_fa: f64,
}

impl Default for DcfParams {
    fn default() -> Self {
        Self {
            p_tar: 0.01,
            c_miss: 1.0,
            c_fa: 1.0,
        }
    }
}

impl DcfParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.p_tar > 0.0 && self.p_tar < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "p_tar {} must lie in (0, 1)",
                self.p_tar
            )));
        }
        if !(self.c_miss > 0.0 && self.c_fa > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "costs must be positive (c_miss {}, c_fa {})",
                self.c_miss, self.c_fa
            )));
        }
        Ok(())
    }

    /// Cost of the better of the two trivial systems (accept all, reject all).
    pub fn default_cost(&self) -> f64 {
        (self.c_miss * self.p_tar).min(self.c_fa * (1.0 - self.p_tar))
    }

    pub fn cost(&self, p_miss: f64, p_fa: f64) -> f64 {
        self.c_miss * self.p_tar * p_miss + self.c_fa * (1.0 - self.p_tar) * p_fa
    }
}

/// Sorted target and nontarget scores.
fn split_sorted(trials: &[TrialScore]) -> Result<(Vec<f64>, Vec<f64>)> {
    if let Some(t) = trials.iter().find(|t| !t.score.is_finite()) {
        return Err(Error::InvalidParameter(format!("non-finite score {}", t.score)));
    }
    let (mut tar, mut non): (Vec<f64>, Vec<f64>) = (Vec::new(), Vec::new());
    for t in trials {
        match t.label {
            Label::Target => tar.push(t.score),
            Label::Nontarget => non.push(t.score),
        }
    }
    if tar.is_empty() {
        return Err(Error::MissingClass(Label::Target));
    }
    if non.is_empty() {
        return Err(Error::MissingClass(Label::Nontarget));
    }
    tar.sort_by(f64::total_cmp);
    non.sort_by(f64::total_cmp);
    Ok((tar, non))
}

pub fn det_curve(trials: &[TrialScore]) -> Result<DetCurve> {
    let (tar, non) = split_sorted(trials)?;
    let mut thresholds: Vec<f64> = tar.iter().chain(&non).copied().collect();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();

    let (nt, nn) = (tar.len() as f64, non.len() as f64);
    let mut points = Vec::with_capacity(thresholds.len() + 2);
    points.push(DetPoint {
        threshold: f64::NEG_INFINITY,
        p_miss: 0.0,
        p_fa: 1.0,
    });
    for th in thresholds {
        let missed = tar.partition_point(|&s| s < th);
        let rejected = non.partition_point(|&s| s < th);
        points.push(DetPoint {
            threshold: th,
            p_miss: missed as f64 / nt,
            p_fa: (non.len() - rejected) as f64 / nn,
        });
    }
    points.push(DetPoint {
        threshold: f64::INFINITY,
        p_miss: 1.0,
        p_fa: 0.0,
    });
    Ok(DetCurve { points })
}

impl DetCurve {
    /// Rate at which `p_miss = p_fa`, linearly interpolated between the two
    /// operating points bracketing the crossing.
    pub fn eer(&self) -> f64 {
        let gap = |p: &DetPoint| p.p_miss - p.p_fa;
        for pair in self.points.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if gap(b) < 0.0 {
                continue;
            }
            if gap(a) >= 0.0 || gap(b) == 0.0 {
                // Crossing exactly at an operating point.
                let p = if gap(a) >= 0.0 { a } else { b };
                return p.p_miss;
            }
            let (dm, df) = (b.p_miss - a.p_miss, b.p_fa - a.p_fa);
            let step = (a.p_fa - a.p_miss) / (dm - df);
            return a.p_miss + step * dm;
        }
        // The reject-all endpoint always has p_miss > p_fa.
        unreachable!("DET curve ends at (1, 0)")
    }

    /// Minimum of the unnormalized detection cost over all operating points.
    pub fn min_cost(&self, params: &DcfParams) -> f64 {
        self.points
            .iter()
            .map(|p| params.cost(p.p_miss, p.p_fa))
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn eer(trials: &[TrialScore]) -> Result<f64> {
    Ok(det_curve(trials)?.eer())
}

/// Minimum detection cost normalized by [`DcfParams::default_cost`], so it
/// lies in `[0, 1]`.
pub fn min_dcf(trials: &[TrialScore], params: &DcfParams) -> Result<f64> {
    Ok(min_dcf_raw(trials, params)? / params.default_cost())
}

pub fn min_dcf_raw(trials: &[TrialScore], params: &DcfParams) -> Result<f64> {
    params.validate()?;
    Ok(det_curve(trials)?.min_cost(params))
}
