//! Resolving a seed name or mesh file into a realization.

use crate::error::{Error, Result};
use crate::poly_core::{ConwayOp, SeedName};
use crate::realization::{Realization, RealizationSource};
use crate::reference::Solid;

use super::off::parse_off;
use super::report::InputDescriptor;

/// Where a polyhedron comes from: a named seed with optional Conway
/// operators, or an OFF file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSpec {
    Seed { name: String, conway: Vec<String> },
    File { path: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedInput {
    pub realization: Realization,
    pub descriptor: InputDescriptor,
    /// True when the coordinates are closed-form reference geometry, so
    /// the vertex order is a valid correspondence for affine matching.
    pub is_reference: bool,
}

/// Splits `dual,kis` and `dual kis` forms into operators.
pub fn parse_conway(ops: &[String]) -> Result<Vec<ConwayOp>> {
    ops.iter()
        .flat_map(|s| s.split(',').map(str::to_owned).collect::<Vec<_>>())
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse())
        .collect()
}

pub fn load(spec: &InputSpec) -> Result<LoadedInput> {
    match spec {
        InputSpec::Seed { name, conway } => {
            let seed: SeedName = name.parse()?;
            let ops = parse_conway(conway)?;
            let solid = Solid::seed(seed)?.apply_all(&ops)?;
            let label = std::iter::once(seed.to_string())
                .chain(ops.iter().map(|op| op.name().to_string()))
                .collect::<Vec<_>>()
                .join("+");
            let realization = Realization::new(
                solid.coords_matrix(),
                RealizationSource::Reference { name: label },
                solid.complex,
            )?;
            Ok(LoadedInput {
                realization,
                descriptor: InputDescriptor {
                    kind: "seed".into(),
                    name: seed.to_string(),
                    conway: ops.iter().map(|op| op.name().to_string()).collect(),
                    rng_seed: None,
                },
                is_reference: true,
            })
        }
        InputSpec::File { path } => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            let mut realization = parse_off(&text)?;
            realization.source = RealizationSource::File { path: path.clone() };
            Ok(LoadedInput {
                realization,
                descriptor: InputDescriptor {
                    kind: "file".into(),
                    name: path.clone(),
                    conway: Vec::new(),
                    rng_seed: None,
                },
                is_reference: false,
            })
        }
    }
}
