//! Clifford algebras `Cl(p,q)` and spinor calculus in the spacetime algebra.

pub mod blade;
pub mod classify;
pub mod dirac;
pub mod error;
pub mod groups;
pub mod json;
pub mod linalg;
pub mod matrix_rep;
pub mod multivector;
pub mod random;
pub mod signature;
pub mod spinor;
pub mod text;

pub use blade::Blade;
pub use error::{CliffordError, Result};
pub use multivector::Multivector;
pub use signature::Signature;
