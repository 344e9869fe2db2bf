//! Morphisms of coordinate superdomains and their local invariants.

mod distribution;
mod tangent;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grassmann::{ensure_same, Context, Parity, Rational, SuperPoly, Var};
use crate::matrix::{srank, Block, SuperDim, SuperMatrix};

pub use distribution::{Distribution, Involutivity};
pub use tangent::{differential_of_function, LinearForm, PointedVariety, TangentSpaceResult, TangentVector};

/// A morphism `M -> N` given by its pullbacks of the coordinates of `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Arc<Context>,
    target: Arc<Context>,
    assignment: Vec<SuperPoly>,
}

impl Morphism {
    /// `assignment` lists the images of the target coordinates, even ones
    /// first, as polynomials over `source`.
    pub fn new(source: &Arc<Context>, target: &Arc<Context>, assignment: Vec<SuperPoly>) -> Result<Self> {
        let need = target.n_even() + target.n_odd();
        if assignment.len() != need {
            return Err(Error::DimensionMismatch(format!(
                "{} images for the {need} coordinates of [{target}]",
                assignment.len()
            )));
        }
        for (v, img) in target.vars().zip(&assignment) {
            ensure_same(img.context(), source)?;
            let p = if v.is_odd() { Parity::Odd } else { Parity::Even };
            if !img.has_parity(p) {
                return Err(Error::ParityViolation(format!(
                    "image `{img}` of {p} coordinate `{}`",
                    target.name(v)
                )));
            }
        }
        Ok(Morphism { source: source.clone(), target: target.clone(), assignment })
    }

    pub fn identity(ctx: &Arc<Context>) -> Self {
        let assignment = ctx.vars().map(|v| SuperPoly::var(ctx, v)).collect();
        Morphism { source: ctx.clone(), target: ctx.clone(), assignment }
    }

    pub fn source(&self) -> &Arc<Context> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Context> {
        &self.target
    }

    pub fn assignment(&self) -> &[SuperPoly] {
        &self.assignment
    }

    pub fn image(&self, v: Var) -> &SuperPoly {
        match v {
            Var::Even(i) => &self.assignment[i],
            Var::Odd(j) => &self.assignment[self.target.n_even() + j],
        }
    }

    /// `phi^* f`. For a polynomial `f` plain substitution coincides with the
    /// Taylor expansion of `f` around the bodies of the even images, which
    /// terminates because the souls are nilpotent.
    pub fn pullback(&self, f: &SuperPoly) -> Result<SuperPoly> {
        ensure_same(f.context(), &self.target)?;
        f.substitute(&self.source, &self.assignment)
    }

    /// `psi ∘ phi`, whose pullback is `phi^* ∘ psi^*`.
    pub fn compose(psi: &Morphism, phi: &Morphism) -> Result<Morphism> {
        ensure_same(&phi.target, &psi.source)?;
        let assignment = psi.assignment.iter().map(|a| phi.pullback(a)).collect::<Result<_>>()?;
        Ok(Morphism { source: phi.source.clone(), target: psi.target.clone(), assignment })
    }

    /// Reduced image of a point: the even images evaluated there.
    pub fn image_point(&self, m: &RationalPoint) -> Result<RationalPoint> {
        let values = self.assignment[..self.target.n_even()]
            .iter()
            .map(|a| a.evaluate(&m.values))
            .collect::<Result<_>>()?;
        Ok(RationalPoint { values })
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .target
            .vars()
            .zip(&self.assignment)
            .map(|(v, a)| format!("{} -> {a}", self.target.name(v)))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A topological point with rational even coordinates; odd ones are zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub values: Vec<Rational>,
}

impl RationalPoint {
    pub fn new(values: Vec<Rational>) -> Self {
        RationalPoint { values }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        RationalPoint { values: values.iter().map(|&v| Rational::from_integer(v.into())).collect() }
    }

    pub fn origin(ctx: &Context) -> Self {
        Self::from_ints(&vec![0; ctx.n_even()])
    }

    pub fn check(&self, ctx: &Context) -> Result<()> {
        if self.values.len() != ctx.n_even() {
            return Err(Error::DimensionMismatch(format!(
                "point with {} coordinates in a context with {} even variables",
                self.values.len(),
                ctx.n_even()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `f(x)`: even coordinates set to `x`, odd ones to zero.
pub fn value_at(f: &SuperPoly, x: &RationalPoint) -> Result<Rational> {
    f.evaluate(&x.values)
}

/// Jacobian of `phi` at `m`.
///
/// Rows are indexed by the source coordinates and columns by the target
/// coordinates, even ones first in both cases: entry `(i, k)` is the left
/// derivative of the `k`-th image with respect to the `i`-th source
/// coordinate. The result is an even matrix over the empty context with
/// `source()` the target superdimension and `target()` the source one, so the
/// chain rule reads `J(psi ∘ phi)(m) = J(phi)(m) * J(psi)(phi(m))`.
pub fn differential_at(phi: &Morphism, m: &RationalPoint) -> Result<SuperMatrix> {
    m.check(&phi.source)?;
    let rows: Vec<Var> = phi.source.vars().collect();
    let mut values = Vec::with_capacity(rows.len() * phi.assignment.len());
    for &v in &rows {
        for a in &phi.assignment {
            values.push(a.partial(v)?.evaluate(&m.values)?);
        }
    }
    let ctx = Context::empty();
    SuperMatrix::from_rationals(
        &ctx,
        SuperDim::new(phi.target.n_even(), phi.target.n_odd()),
        SuperDim::new(phi.source.n_even(), phi.source.n_odd()),
        &values,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Immersion,
    Submersion,
    Diffeo,
    None,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Immersion => "immersion",
            Classification::Submersion => "submersion",
            Classification::Diffeo => "diffeomorphism",
            Classification::None => "none",
        })
    }
}

/// Compare the parity-block ranks of the differential with the source and
/// target superdimensions.
pub fn classify_at(phi: &Morphism, m: &RationalPoint) -> Result<Classification> {
    let j = differential_at(phi, m)?;
    let r = srank(&j)?;
    let src = SuperDim::new(phi.source.n_even(), phi.source.n_odd());
    let tgt = SuperDim::new(phi.target.n_even(), phi.target.n_odd());
    Ok(match (r == src, r == tgt) {
        (true, true) => Classification::Diffeo,
        (true, false) => Classification::Immersion,
        (false, true) => Classification::Submersion,
        (false, false) => Classification::None,
    })
}

/// Even-block and odd-block ranks of the differential at `m`.
pub fn differential_rank(phi: &Morphism, m: &RationalPoint) -> Result<SuperDim> {
    let j = differential_at(phi, m)?;
    debug_assert!(j.block(Block::T2).is_zero() && j.block(Block::T3).is_zero());
    srank(&j)
}
