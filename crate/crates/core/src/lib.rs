pub mod algebra;
pub mod bar;
pub mod complex;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod scenarios;
pub mod sign;
pub mod suite;
pub mod tor;

pub use error::{Error, Result};
