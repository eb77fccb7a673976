//! Extraction job lists.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Bin,
    Csv,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Bin => "feat",
            OutputFormat::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    pub input: PathBuf,
    pub output: PathBuf,
}

/// Expands `--in`: a `.wav` path is a single input, anything else is read
/// as a list with one wav path per line (blank lines and `#` comments
/// skipped). Relative paths in a list are taken as given.
pub fn collect_inputs(arg: &Path) -> Result<Vec<PathBuf>> {
    let is_wav = arg
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("wav"));
    if is_wav {
        return Ok(vec![arg.to_path_buf()]);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| CliError::io(arg, e))?;
    let inputs: Vec<PathBuf> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(PathBuf::from)
        .collect();
    if inputs.is_empty() {
        return Err(CliError::Manifest(format!("{} lists no inputs", arg.display())));
    }
    Ok(inputs)
}

/// Pairs each input with `<out_dir>/<stem>.<ext>`. Two inputs that map to
/// the same output are rejected before any work starts.
pub fn build_jobs(inputs: &[PathBuf], out_dir: &Path, format: OutputFormat) -> Result<Vec<Job>> {
    let mut seen: HashMap<PathBuf, &Path> = HashMap::new();
    let mut jobs = Vec::with_capacity(inputs.len());
    for input in inputs {
        let stem = input
            .file_stem()
            .ok_or_else(|| CliError::Manifest(format!("{} has no file name", input.display())))?;
        let output = out_dir.join(stem).with_extension(format.extension());
        if let Some(prev) = seen.insert(output.clone(), input) {
            return Err(CliError::Manifest(format!(
                "{} and {} both write {}",
                prev.display(),
                input.display(),
                output.display()
            )));
        }
        jobs.push(Job {
            input: input.clone(),
            output,
        });
    }
    Ok(jobs)
}
