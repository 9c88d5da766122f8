//! Combinatorial polyhedra: complexes, skeleta, Conway operators, seeds,
//! and the Steinitz preconditions.

pub mod complex;
pub mod conway;
pub mod graph;
pub mod random;
pub mod seeds;
pub mod steinitz;

pub use complex::{canonical_cycle, PolyhedralComplex, VertexLabel};
pub use conway::{conway_apply, ConwayOp};
pub use graph::{skeleton, Graph};
pub use seeds::{generate_seed, seed_complex, Seed, SeedName};
pub use steinitz::{validate_steinitz, SteinitzReport};
