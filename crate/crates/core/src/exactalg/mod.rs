//! Exact arithmetic over `Q` and `Q(i)`: polynomials, gcds, linear algebra,
//! root recovery and the text grammar.

pub mod gcd;
pub mod hompoly;
pub mod matrix;
pub mod parse;
pub mod ratfunc;
pub mod roots;
pub mod scalar;
pub mod unipoly;

pub use gcd::{gcd, gcd_many};
pub use hompoly::HomPoly3;
pub use matrix::Matrix;
pub use ratfunc::RatFunc;
pub use scalar::{Field, FieldOps, GaussRational, Rational};
pub use unipoly::UniPoly;
