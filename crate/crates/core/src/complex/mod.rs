//! Graded spaces, cochain complexes and (bi)filtered complexes.

mod cochain;
pub mod fixture;
mod filtered;
mod graded;
pub mod random;

pub use cochain::{CochainComplex, Cohomology};
pub(crate) use cochain::describe_vector;
pub use filtered::{BifilteredComplex, FilteredComplex, Truncation};
pub use graded::GradedSpace;
