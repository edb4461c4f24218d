//! The bundled model zoo. Data provenance for each file is documented in
//! `models/README.md`; the `fixtures` integration test recomputes every
//! dataset from an independent construction.

use crate::chars::Config;
use crate::error::{Error, Result};
use crate::model::{parse_model, ModelFile};
use crate::ring::FusionRing;

pub const BUNDLED_NAMES: [&str; 9] = [
    "trivial",
    "ising",
    "fibonacci",
    "z2",
    "z3",
    "z4",
    "toric",
    "rep_s3",
    "double_s3",
];

const SOURCES: [(&str, &str); 9] = [
    ("trivial", include_str!("../models/trivial.json")),
    ("ising", include_str!("../models/ising.json")),
    ("fibonacci", include_str!("../models/fibonacci.json")),
    ("z2", include_str!("../models/z2.json")),
    ("z3", include_str!("../models/z3.json")),
    ("z4", include_str!("../models/z4.json")),
    ("toric", include_str!("../models/toric.json")),
    ("rep_s3", include_str!("../models/rep_s3.json")),
    ("double_s3", include_str!("../models/double_s3.json")),
];

/// All bundled models, in the fixed registry order.
pub fn bundled_models() -> Vec<ModelFile> {
    SOURCES
        .iter()
        .map(|(name, text)| {
            parse_model(text).unwrap_or_else(|e| panic!("bundled model {name} is invalid: {e}"))
        })
        .collect()
}

pub fn bundled_model(name: &str) -> Result<ModelFile> {
    SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_model(text).expect("bundled models are valid"))
        .ok_or_else(|| Error::UnknownModel { name: name.into() })
}

/// Convenience: a validated ring for a bundled model.
pub fn bundled_ring(name: &str, cfg: &Config) -> Result<FusionRing> {
    let model = bundled_model(name)?;
    FusionRing::validate(model.to_raw(), cfg)
}
