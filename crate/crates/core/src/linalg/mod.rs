//! Exact scalars, dense matrices and the subspace lattice.

mod field;
mod matrix;
mod subspace;

pub use field::{FieldSpec, Scalar, MAX_PRIME};
pub use matrix::{Matrix, Rref};
pub use subspace::{image, induced_map, kernel, preimage, restricted_preimage, Quotient, Subspace};
pub(crate) use subspace::induced_map_unchecked;
