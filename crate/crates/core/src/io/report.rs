//! Versioned JSON run report.

use serde::{Deserialize, Serialize};

use crate::dynamics::Diagnostics;
use crate::poly_core::SteinitzReport;
use crate::realization::{PyramidRatios, ShapeReport};
use crate::spectral::closed_form::recognize;
use crate::spectral::SpectralDecomposition;
use crate::symmetry::SubdominantVerdict;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDescriptor {
    /// `seed` or `file`.
    pub kind: String,
    pub name: String,
    #[serde(default)]
    pub conway: Vec<String>,
    #[serde(default)]
    pub rng_seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    /// Shortest decimal that round-trips to the computed `f64`.
    pub eigenvalue: String,
    /// Closed form when one is recognized.
    pub exact: Option<String>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationSummary {
    pub steps_used: usize,
    pub collapse_dim: usize,
    pub final_shape_change: f64,
}

impl From<&Diagnostics> for IterationSummary {
    fn from(d: &Diagnostics) -> Self {
        Self {
            steps_used: d.shape_changes.len(),
            collapse_dim: d.collapse_dim,
            final_shape_change: d.shape_changes.last().copied().unwrap_or(0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub input: InputDescriptor,
    pub steinitz: Option<SteinitzReport>,
    pub automorphism_order: Option<usize>,
    pub spectrum: Option<Vec<GroupSummary>>,
    pub subdominant_dimension: Option<usize>,
    pub realized_group: Option<usize>,
    pub shape: Option<ShapeReport>,
    pub pyramid_ratios: Option<PyramidRatios>,
    pub subdominant_check: Option<SubdominantVerdict>,
    pub iteration: Option<IterationSummary>,
    #[serde(default)]
    pub warnings: Vec<String>,
    /// Wall-clock timings; only present when requested, so that reports
    /// are otherwise reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl RunReport {
    pub fn new(input: InputDescriptor) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            input,
            steinitz: None,
            automorphism_order: None,
            spectrum: None,
            subdominant_dimension: None,
            realized_group: None,
            shape: None,
            pyramid_ratios: None,
            subdominant_check: None,
            iteration: None,
            warnings: Vec::new(),
            timings: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

pub fn summarize_spectrum(decomp: &SpectralDecomposition) -> Vec<GroupSummary> {
    decomp
        .groups
        .iter()
        .map(|g| GroupSummary {
            eigenvalue: format!("{}", g.eigenvalue),
            exact: recognize(g.eigenvalue),
            multiplicity: g.multiplicity,
        })
        .collect()
}
