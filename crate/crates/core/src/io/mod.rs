//! OFF meshes, JSON run reports, and input resolution.

pub mod input;
pub mod off;
pub mod report;

pub use input::{load, InputSpec, LoadedInput};
pub use off::{parse_off, write_off};
pub use report::{GroupSummary, InputDescriptor, RunReport, SCHEMA_VERSION};
