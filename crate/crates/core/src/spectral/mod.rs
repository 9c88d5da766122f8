//! The Buffon operator, its grouped spectrum, and Colin de Verdière
//! matrices built from convex realizations.

pub mod cdv;
pub mod closed_form;
pub mod decomposition;
pub mod operator;

pub use cdv::{cdv_matrix, CdVMatrix};
pub use decomposition::{spectrum, subdominant_space, EigenGroup, SpectralDecomposition};
pub use operator::{buffon_matrix, face_buffon_matrix, BuffonOperator, Variant};

/// Default tolerance for merging eigenvalues into one group.
pub const DEFAULT_GROUP_TOL: f64 = 1e-9;
