//! Exact computational engine for monoid schemes, semiring schemes and toric
//! geometry over the bases F1, N and Z.
//!
//! The crate models commutative monoids as the affine building blocks of
//! F1-geometry, semirings as the N-side, and ordinary rings as the Z-side.
//! Fans give toric schemes as glued monoid spectra; base change moves charts
//! along F1 -> N -> Z; a descent lab verifies the sheaf and stack statements
//! on finite instances by brute force.

pub mod algebra;
pub mod cone;
pub mod descent;
pub mod error;
pub mod exponent;
pub mod group;
pub mod linalg;
pub mod monoid;
pub mod scheme;
pub mod semiring;
pub mod toric;

pub use error::{Budget, Error, Result};
pub use exponent::ExponentVector;
