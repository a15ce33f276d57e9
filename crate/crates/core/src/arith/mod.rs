//! Exact scalar, polynomial and matrix arithmetic over the rationals and
//! prime fields.

mod field;
mod matrix;
mod poly;
mod ring;
mod span;

pub use field::{FieldSpec, Scalar, MAX_MODULUS};
pub use matrix::Matrix;
pub use poly::{Monomial, MultiPoly, PolyRing};
pub use ring::{Field, Ring};
pub use span::VectorSpan;
