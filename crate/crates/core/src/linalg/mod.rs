//! Exact linear algebra over the two-element field and the integers.

mod gf2;
mod integer;

pub use gf2::Gf2Matrix;
pub use integer::IntMatrix;
