//! The on-disk model format: a single JSON object holding the sparse fusion
//! tensor and optional S-matrix, weights and labels.
//!
//! Unknown keys are rejected and every index is range-checked at parse
//! time. Axiom-level problems (a broken unit, say) are left to ring
//! validation so that a file can be inspected even when its algebra is
//! wrong.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::RawRing;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub format_version: u32,
    pub name: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// Nonzero entries (p, q, r, N_pq^r); unspecified entries are zero.
    pub fusion: Vec<(usize, usize, usize, u32)>,
    /// Row-major complex entries as (real, imaginary) pairs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smatrix: Option<Vec<Vec<(f64, f64)>>>,
    /// Exact rationals, e.g. "1/2" or "0".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<BTreeMap<String, String>>,
}

/// Parses and validates a model file.
pub fn parse_model(text: &str) -> Result<ModelFile> {
    let model: ModelFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
        msg: format!("line {}, column {}: {}", e.line(), e.column(), e),
    })?;
    validate_model(&model)?;
    Ok(model)
}

/// Canonical serialization: fusion entries sorted, two-space indentation.
/// Parsing the output yields the same model.
pub fn serialize_model(model: &ModelFile) -> String {
    let mut canonical = model.clone();
    canonical.fusion.sort_unstable();
    serde_json::to_string_pretty(&canonical).expect("model serialization cannot fail") + "\n"
}

fn validate_model(model: &ModelFile) -> Result<()> {
    if model.format_version != FORMAT_VERSION {
        return Err(Error::Range {
            detail: format!(
                "format_version {} is not supported (expected {FORMAT_VERSION})",
                model.format_version
            ),
        });
    }
    let n = model.n;
    if n == 0 {
        return Err(Error::Range {
            detail: "n must be at least 1".into(),
        });
    }
    let mut seen = std::collections::BTreeSet::new();
    for &(p, q, r, value) in &model.fusion {
        if p >= n || q >= n || r >= n {
            return Err(Error::Range {
                detail: format!("fusion entry ({p},{q},{r}) out of range for n = {n}"),
            });
        }
        if value == 0 {
            return Err(Error::Range {
                detail: format!("fusion entry ({p},{q},{r}) is explicitly zero; omit it"),
            });
        }
        if !seen.insert((p, q, r)) {
            return Err(Error::DuplicateEntry { p, q, r });
        }
    }
    if let Some(labels) = &model.labels {
        if labels.len() != n {
            return Err(Error::Range {
                detail: format!("{} labels for {} primaries", labels.len(), n),
            });
        }
    }
    if let Some(s) = &model.smatrix {
        if s.len() != n || s.iter().any(|row| row.len() != n) {
            return Err(Error::Range {
                detail: "smatrix must be an n x n array of (re, im) pairs".into(),
            });
        }
    }
    if let Some(w) = &model.weights {
        if w.len() != n {
            return Err(Error::Range {
                detail: format!("{} weights for {} primaries", w.len(), n),
            });
        }
        for (p, text) in w.iter().enumerate() {
            parse_rational(text).map_err(|detail| Error::Range {
                detail: format!("weight {p}: {detail}"),
            })?;
        }
    }
    Ok(())
}

pub fn parse_rational(text: &str) -> std::result::Result<Rational64, String> {
    Rational64::from_str(text.trim()).map_err(|e| format!("{text:?} is not a rational: {e}"))
}

impl ModelFile {
    /// Expands the sparse data into the dense raw ring.
    pub fn to_raw(&self) -> RawRing {
        let n = self.n;
        let mut fusion = vec![0i64; n * n * n];
        for &(p, q, r, value) in &self.fusion {
            fusion[p * n * n + q * n + r] = i64::from(value);
        }
        let smatrix = self.smatrix.as_ref().map(|rows| {
            rows.iter()
                .flat_map(|row| row.iter().map(|&(re, im)| Complex64::new(re, im)))
                .collect()
        });
        let weights = self.weights.as_ref().map(|w| {
            w.iter()
                .map(|text| parse_rational(text).expect("validated at parse time"))
                .collect()
        });
        RawRing {
            n,
            fusion,
            labels: self.labels.clone(),
            smatrix,
            weights,
        }
    }
}
