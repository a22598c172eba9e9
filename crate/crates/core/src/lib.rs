//! Bounded-height rational points on plane curves and affine hypersurfaces
//! over `Q` and `Fq(t)`, with the p-adic interpolation determinant machinery
//! used to cover them by auxiliary polynomials.

pub mod algebra;
pub mod detmethod;
pub mod enumerate;
pub mod error;
pub mod globalfield;
pub mod harness;
pub mod reduction;

pub use error::{Error, Result};
