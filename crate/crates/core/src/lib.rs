pub mod error;
pub mod exactalg;
pub mod abelianisation;
pub mod birmap;
pub mod generators;
pub mod plane;
pub mod relations;
pub mod spinor;

pub use error::{Error, Result};
pub use exactalg::{GaussRational, Rational};
