use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pncc_cli::commands::{cmd_eval, cmd_extract, cmd_render, EvalArgs, ExtractArgs, RenderArgs};
use pncc_cli::manifest::OutputFormat;
use pncc_core::{DcfParams, FeatureType};

#[derive(Parser)]
#[command(name = "pncc", version, about = "MFCC/PNCC-family feature extraction and verification scoring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Feature {
    Mfcc,
    Pncc,
    Spncc,
    Cpncc,
    Scpncc,
}

impl From<Feature> for FeatureType {
    fn from(f: Feature) -> Self {
        match f {
            Feature::Mfcc => FeatureType::Mfcc,
            Feature::Pncc => FeatureType::Pncc,
            Feature::Spncc => FeatureType::Spncc,
            Feature::Cpncc => FeatureType::Cpncc,
            Feature::Scpncc => FeatureType::Scpncc,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Bin,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Extract features for one wav file or a list of them.
    Extract {
        #[arg(long, value_enum)]
        feature: Feature,
        /// A .wav file, or a text file listing one wav path per line.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "bin")]
        format: Format,
        /// Write compressed channel energies instead of cepstra.
        #[arg(long)]
        no_dct: bool,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: u32,
    },
    /// Render a feature spectrogram (no DCT) as a PGM image.
    Render {
        #[arg(long, value_enum)]
        feature: Feature,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Compute EER and minDCF for a score file.
    Eval {
        #[arg(long)]
        scores: PathBuf,
        #[arg(long, default_value_t = 0.01)]
        p_tar: f64,
        #[arg(long, default_value_t = 1.0)]
        c_miss: f64,
        #[arg(long, default_value_t = 1.0)]
        c_fa: f64,
        /// Report the unnormalized minimum cost.
        #[arg(long)]
        raw_dcf: bool,
        /// Write DET operating points as CSV.
        #[arg(long)]
        det: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Extract { feature, input, out_dir, config, format, no_dct, jobs } => {
            let args = ExtractArgs {
                feature: feature.into(),
                input,
                out_dir,
                config,
                format: match format {
                    Format::Bin => OutputFormat::Bin,
                    Format::Csv => OutputFormat::Csv,
                },
                no_dct,
                jobs: jobs as usize,
            };
            let reports = match cmd_extract(&args) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
            };
            let mut failed = 0;
            for r in &reports {
                if let Err(e) = &r.result {
                    failed += 1;
                    eprintln!("{}: {e}", r.job.input.display());
                }
            }
            if failed > 0 {
                eprintln!("{failed} of {} files failed", reports.len());
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Command::Render { feature, input, out, config } => {
            let args = RenderArgs { feature: feature.into(), input, output: out, config };
            match cmd_render(&args) {
                Ok(_) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
            }
        }
        Command::Eval { scores, p_tar, c_miss, c_fa, raw_dcf, det } => {
            let args = EvalArgs {
                scores,
                params: DcfParams { p_tar, c_miss, c_fa },
                raw_dcf,
                det,
            };
            match cmd_eval(&args) {
                Ok(report) => {
                    print!("{report}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
            }
        }
    }
}
