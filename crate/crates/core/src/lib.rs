pub mod error;
pub mod grassmann;
pub mod groups;
pub mod geometry;
pub mod matrix;
pub mod random;
pub mod script;

pub use error::{Error, Result};
pub use grassmann::{Context, Parity, PolyParity, Rational, SuperDerivation, SuperPoly, Var};
pub use matrix::{SuperDim, SuperMatrix};
