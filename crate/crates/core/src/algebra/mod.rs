//! Finite-type augmented DG algebras, their modules and morphisms.

mod cohomology;
mod constructors;
mod dga;
mod group;
mod module;
mod monomial;
mod morphism;
pub mod poly;
mod quotient;

pub use cohomology::{cohomology_algebra, morphism_to_cohomology, CohomologyAlgebra};
pub use constructors::{free_cdga, polynomial_dga};
pub use dga::{verify_dga, DGAlgebra, Sparse};
pub use group::group_cochain_dga;
pub use module::{verify_module, DGModule};
pub use monomial::{Generator, MonomialBasis};
pub use morphism::{restrict_module, verify_morphism, AlgebraMorphism};
pub use quotient::{ideal_span, quotient_dga};
