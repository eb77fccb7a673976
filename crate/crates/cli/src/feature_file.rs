//! Binary feature container.
//!
//! ```text
//! offset  size  field
//! 0       4     magic "FEAT"
//! 4       1     format version (1)
//! 5       1     feature type (0 mfcc, 1 pncc, 2 spncc, 3 cpncc, 4 scpncc)
//! 6       4     frame count T, u32 LE
//! 10      4     column count C, u32 LE
//! 14      8     config fingerprint, u64 LE
//! 22      4*T*C values, f32 LE, row-major
//! ```

use std::io::Write;

use ndarray::Array2;
use pncc_core::{FeatureMatrix, FeatureType};

use crate::{CliError, Result};

pub const MAGIC: &[u8; 4] = b"FEAT";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 22;

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureFile {
    pub feature_type: FeatureType,
    pub fingerprint: u64,
    pub values: Array2<f32>,
}

impl From<&FeatureMatrix> for FeatureFile {
    fn from(m: &FeatureMatrix) -> Self {
        Self {
            feature_type: m.feature_type,
            fingerprint: m.fingerprint,
            values: m.values.mapv(|v| v as f32),
        }
    }
}

impl FeatureFile {
    pub fn to_bytes(&self) -> Vec<u8> {
        let (t, c) = self.values.dim();
        let mut out = Vec::with_capacity(HEADER_LEN + 4 * t * c);
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.push(self.feature_type.code());
        out.extend_from_slice(&(t as u32).to_le_bytes());
        out.extend_from_slice(&(c as u32).to_le_bytes());
        out.extend_from_slice(&self.fingerprint.to_le_bytes());
        for v in self.values.iter() {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = |msg: &str| CliError::FeatureFormat(msg.to_string());
        if bytes.len() < HEADER_LEN {
            return Err(bad("truncated header"));
        }
        if &bytes[..4] != MAGIC {
            return Err(bad("missing FEAT magic"));
        }
        if bytes[4] != VERSION {
            return Err(CliError::FeatureFormat(format!("unsupported version {}", bytes[4])));
        }
        let feature_type = FeatureType::from_code(bytes[5])
            .ok_or_else(|| CliError::FeatureFormat(format!("unknown feature type {}", bytes[5])))?;
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap()) as usize;
        let (t, c) = (u32_at(6), u32_at(10));
        let fingerprint = u64::from_le_bytes(bytes[14..22].try_into().unwrap());
        let expected = t
            .checked_mul(c)
            .and_then(|n| n.checked_mul(4))
            .and_then(|n| n.checked_add(HEADER_LEN))
            .ok_or_else(|| bad("matrix size overflows"))?;
        if bytes.len() != expected {
            return Err(CliError::FeatureFormat(format!(
                "expected {expected} bytes for a {t}x{c} matrix, found {}",
                bytes.len()
            )));
        }
        let data = bytes[HEADER_LEN..]
            .chunks_exact(4)
            .map(|b| f32::from_le_bytes(b.try_into().unwrap()))
            .collect();
        let values = Array2::from_shape_vec((t, c), data).map_err(|e| bad(&e.to_string()))?;
        Ok(Self {
            feature_type,
            fingerprint,
            values,
        })
    }

    /// One frame per line, comma-separated, shortest round-trip formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.values.outer_iter() {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_bin(&self, w: &mut impl Write) -> std::io::Result<()> {
        w.write_all(&self.to_bytes())
    }
}
