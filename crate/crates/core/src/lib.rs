//! Mel-spectral acoustic front-ends for speaker verification.
//!
//! Every feature type shares one short-time front end (pre-emphasis,
//! framing, power spectrum, mel integration) producing channel energies
//! `E[t, f]`. The feature types then differ only in what happens to those
//! energies before the DCT:
//!
//! | type     | stages after mel integration                                        |
//! |----------|---------------------------------------------------------------------|
//! | `Mfcc`   | log                                                                 |
//! | `Pncc`   | medium-time processing, mean power normalization, power law (1/15)  |
//! | `Spncc`  | mean power normalization, power law                                 |
//! | `Cpncc`  | mean power normalization, PCEN                                      |
//! | `Scpncc` | PCEN                                                                |
//!
//! The [`metrics`] module scores trial lists (EER, minDCF, DET points).

pub mod audio;
pub mod config;
pub mod energy_norm;
pub mod error;
pub mod frontend;
pub mod medium_time;
pub mod metrics;
pub mod pipeline;

pub use audio::{load_wav, synth_tone, Waveform, REQUIRED_SAMPLE_RATE};
pub use energy_norm::{MeanPowerConfig, MuInit, PcenConfig};
pub use error::{Error, Result};
pub use frontend::{Filterbank, FrontendConfig, MelEnergies, PowerSpectrogram, WindowKind};
pub use medium_time::{MediumTimeConfig, TransferFunction};
pub use metrics::{DcfParams, DetCurve, DetPoint, Label, TrialScore};
pub use pipeline::{extract, FeatureMatrix, FeatureType, PipelineConfig, Stage};
