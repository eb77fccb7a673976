//! The `extract`, `render` and `eval` subcommands as library calls.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use pncc_core::metrics::det_curve;
use pncc_core::{extract, load_wav, DcfParams, FeatureType, PipelineConfig};
use rayon::prelude::*;

use crate::feature_file::FeatureFile;
use crate::manifest::{build_jobs, collect_inputs, Job, OutputFormat};
use crate::score_file::{det_csv, load_scores};
use crate::{pgm, CliError, Result};

pub fn load_config(path: Option<&Path>) -> Result<PipelineConfig> {
    match path {
        None => Ok(PipelineConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            Ok(PipelineConfig::from_config_str(&text)?)
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExtractArgs {
    pub feature: FeatureType,
    pub input: PathBuf,
    pub out_dir: PathBuf,
    pub config: Option<PathBuf>,
    pub format: OutputFormat,
    pub no_dct: bool,
    pub jobs: usize,
}

/// Per-file outcome, in manifest order.
#[derive(Debug)]
pub struct JobReport {
    pub job: Job,
    pub result: Result<(usize, usize)>,
}

fn run_job(job: &Job, kind: FeatureType, cfg: &PipelineConfig, format: OutputFormat) -> Result<(usize, usize)> {
    let wave = load_wav(&job.input)?;
    let feats = extract(&wave, kind, cfg)?;
    let file = FeatureFile::from(&feats);
    let bytes = match format {
        OutputFormat::Bin => file.to_bytes(),
        OutputFormat::Csv => file.to_csv().into_bytes(),
    };
    fs::write(&job.output, bytes).map_err(|e| CliError::io(&job.output, e))?;
    Ok(file.values.dim())
}

/// Runs every job on a pool of `args.jobs` workers. Manifest-level problems
/// (unreadable list, duplicate outputs, bad config) fail the whole call;
/// per-file failures are reported individually and do not stop other files.
pub fn cmd_extract(args: &ExtractArgs) -> Result<Vec<JobReport>> {
    let mut cfg = load_config(args.config.as_deref())?;
    if args.no_dct {
        cfg.apply_dct = false;
    }
    let inputs = collect_inputs(&args.input)?;
    let jobs = build_jobs(&inputs, &args.out_dir, args.format)?;
    fs::create_dir_all(&args.out_dir).map_err(|e| CliError::io(&args.out_dir, e))?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| CliError::Manifest(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<(usize, usize)>> = pool.install(|| {
        jobs.par_iter()
            .map(|job| run_job(job, args.feature, &cfg, args.format))
            .collect()
    });
    Ok(jobs
        .into_iter()
        .zip(results)
        .map(|(job, result)| JobReport { job, result })
        .collect())
}

#[derive(Debug, Clone)]
pub struct RenderArgs {
    pub feature: FeatureType,
    pub input: PathBuf,
    pub output: PathBuf,
    pub config: Option<PathBuf>,
}

/// Renders the compressed channel energies (no DCT) as a PGM image.
/// Returns the image width and height.
pub fn cmd_render(args: &RenderArgs) -> Result<(usize, usize)> {
    let mut cfg = load_config(args.config.as_deref())?;
    cfg.apply_dct = false;
    let wave = load_wav(&args.input)?;
    let feats = extract(&wave, args.feature, &cfg)?;
    let (w, h, pixels) = pgm::spectrogram_pixels(&feats.values);
    fs::write(&args.output, pgm::encode_p5(w, h, &pixels)).map_err(|e| CliError::io(&args.output, e))?;
    Ok((w, h))
}

#[derive(Debug, Clone)]
pub struct EvalArgs {
    pub scores: PathBuf,
    pub params: DcfParams,
    pub raw_dcf: bool,
    pub det: Option<PathBuf>,
}

/// Returns the text report: `EER(%) <v>` and `minDCF <v>`, four decimals.
pub fn cmd_eval(args: &EvalArgs) -> Result<String> {
    args.params.validate()?;
    let trials = load_scores(&args.scores)?;
    let det = det_curve(&trials)?;
    let eer = det.eer();
    let mut dcf = det.min_cost(&args.params);
    if !args.raw_dcf {
        dcf /= args.params.default_cost();
    }
    if let Some(path) = &args.det {
        fs::write(path, det_csv(&det)).map_err(|e| CliError::io(path, e))?;
    }
    let mut out = String::new();
    let _ = writeln!(out, "EER(%) {:.4}", 100.0 * eer);
    let _ = writeln!(out, "minDCF {dcf:.4}");
    Ok(out)
}
