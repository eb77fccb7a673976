//! Trial score lists: one `<label> <score>` pair per line, label `target`
//! or `nontarget`, whitespace-separated. `#` starts a comment.

use std::path::Path;

use pncc_core::{DetCurve, TrialScore};

use crate::{CliError, Result};

pub fn parse_scores(text: &str, path: &Path) -> Result<Vec<TrialScore>> {
    let mut trials = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| CliError::ScoreLine {
            path: path.to_path_buf(),
            line: i + 1,
            msg,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [label, score] = fields[..] else {
            return Err(err(format!("expected '<label> <score>', got '{line}'")));
        };
        let label = label.parse().map_err(|e: pncc_core::Error| err(e.to_string()))?;
        let score: f64 = score
            .parse()
            .map_err(|_| err(format!("score '{score}' is not a number")))?;
        if !score.is_finite() {
            return Err(err(format!("score '{score}' is not finite")));
        }
        trials.push(TrialScore::new(label, score));
    }
    Ok(trials)
}

pub fn load_scores(path: &Path) -> Result<Vec<TrialScore>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_scores(&text, path)
}

/// `threshold,p_miss,p_fa` with a header line. The degenerate endpoints use
/// thresholds `-inf` and `inf`.
pub fn det_csv(det: &DetCurve) -> String {
    let mut out = String::from("threshold,p_miss,p_fa\n");
    for p in &det.points {
        out.push_str(&format!("{},{},{}\n", p.threshold, p.p_miss, p.p_fa));
    }
    out
}
