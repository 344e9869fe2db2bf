//! Supercommutative polynomial arithmetic.
//!
//! A [`SuperPoly`] lives over a [`Context`] of even (commuting) and odd
//! (anticommuting) variables. Products reorder odd words into increasing order
//! and track the permutation sign, so every value is kept in a unique normal
//! form. Odd partial derivatives are left derivatives.

mod context;
mod derivation;
mod monomial;
mod poly;

use std::fmt;
use std::ops::Add;

pub use context::{Context, Var};
pub(crate) use context::ensure_same;
pub use derivation::SuperDerivation;
pub use monomial::{normalize_odd_word, Monomial};
pub use poly::SuperPoly;
pub(crate) use poly::join_signed;

/// Exact coefficients.
pub type Rational = num::BigRational;

/// The Z/2 grading of a homogeneous element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^{|a||b|}` as a boolean: true when the Koszul sign is negative.
    pub fn koszul_negative(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Parity of an arbitrary polynomial; zero counts as even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolyParity {
    Even,
    Odd,
    Mixed,
}

impl fmt::Display for PolyParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolyParity::Even => "even",
            PolyParity::Odd => "odd",
            PolyParity::Mixed => "mixed",
        })
    }
}

/// Rational from a machine integer.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Rational `n / d`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
