//! A small line-based session language over the library.
//!
//! ```text
//! context g even=[t] odd=[theta]
//! group r on g mu=[t + t' + theta*theta', theta + theta'] unit=(0)
//! livf d/dtheta          # prints -theta*d/dt + d/dtheta
//! ```

mod interp;
pub mod json;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

use crate::geometry::{Morphism, PointedVariety};
use crate::grassmann::{SuperDerivation, SuperPoly};
use crate::groups::GroupLaw;
use crate::matrix::SuperMatrix;

pub use interp::{run, Report, RunOptions, Session};
pub use parser::{
    constant_of, parse_expr, parse_field, parse_poly, parse_script, parse_statements, Arg, ExprAst, Lowered, Stmt,
    StmtKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: unknown identifier `{name}`")]
    UnknownIdentifier { line: usize, column: usize, name: String },
    #[error("line {line}, column {column}: exponent must be a nonnegative integer")]
    BadExponent { line: usize, column: usize },
    #[error("line {line}: {message}")]
    Eval { line: usize, message: String },
    #[error("json: {0}")]
    Json(String),
}

/// A named value of a session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Poly(SuperPoly),
    Matrix(SuperMatrix),
    Field(SuperDerivation),
    Morphism(Morphism),
    Group(GroupLaw),
    Variety(PointedVariety),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Poly(_) => "polynomial",
            Value::Matrix(_) => "matrix",
            Value::Field(_) => "vector field",
            Value::Morphism(_) => "morphism",
            Value::Group(_) => "group law",
            Value::Variety(_) => "variety",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(p) => write!(f, "{p}"),
            Value::Matrix(m) => write!(f, "{}", m.render_rows()),
            Value::Field(d) => write!(f, "{d}"),
            Value::Morphism(m) => write!(f, "{m}"),
            Value::Group(g) => write!(f, "{}", g.mu()),
            Value::Variety(v) => {
                let gens: Vec<String> = v.generators().iter().map(ToString::to_string).collect();
                write!(f, "ideal=[{}] point={}", gens.join(", "), v.point())
            }
        }
    }
}
