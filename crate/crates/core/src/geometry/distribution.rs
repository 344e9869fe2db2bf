use std::fmt;
use std::sync::Arc;

use num::Zero;

use crate::error::{Error, Result};
use crate::grassmann::{ensure_same, Context, SuperDerivation, SuperPoly, Var};

/// The submodule of vector fields spanned by a list of homogeneous fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    ctx: Arc<Context>,
    fields: Vec<SuperDerivation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Involutivity {
    Integrable,
    NotIntegrable,
    /// No pivot structure with invertible entries was found, so membership of
    /// the brackets cannot be decided by elimination.
    Indeterminate,
}

impl fmt::Display for Involutivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Involutivity::Integrable => "integrable",
            Involutivity::NotIntegrable => "not integrable",
            Involutivity::Indeterminate => "indeterminate",
        })
    }
}

impl Distribution {
    pub fn new(fields: Vec<SuperDerivation>) -> Result<Self> {
        let first = fields.first().ok_or_else(|| Error::DimensionMismatch("empty distribution".into()))?;
        let ctx = first.context().clone();
        for d in &fields {
            ensure_same(d.context(), &ctx)?;
            d.homogeneous_parity()?;
        }
        Ok(Distribution { ctx, fields })
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn fields(&self) -> &[SuperDerivation] {
        &self.fields
    }

    /// Row-reduce the fields over the ring, pivoting only on entries whose
    /// body is a nonzero constant. Returns the reduced fields with their pivot
    /// coordinates, or `None` when some nonzero field has no usable pivot.
    pub fn normalize(&self) -> Result<Option<Vec<(Var, SuperDerivation)>>> {
        let mut rows: Vec<SuperDerivation> = self.fields.clone();
        let mut done: Vec<(Var, SuperDerivation)> = Vec::new();
        while let Some(row) = rows.pop() {
            if row.is_zero() {
                continue;
            }
            let pivot = self.ctx.vars().find(|&v| {
                !done.iter().any(|(p, _)| *p == v) && row.coeff(v).body().as_constant().is_some_and(|c| !c.is_zero())
            });
            let Some(v) = pivot else {
                return Ok(None);
            };
            let row = row.left_mul(&row.coeff(v).inverse()?)?;
            for other in rows.iter_mut() {
                let f = other.coeff(v).clone();
                if !f.is_zero() {
                    *other = other.checked_sub(&row.left_mul(&f)?)?;
                }
            }
            for (_, other) in done.iter_mut() {
                let f = other.coeff(v).clone();
                if !f.is_zero() {
                    *other = other.checked_sub(&row.left_mul(&f)?)?;
                }
            }
            done.push((v, row));
        }
        Ok(Some(done))
    }

    /// Whether the span is closed under the super bracket.
    ///
    /// After normalization every reduced field has coefficient 1 on its own
    /// pivot and 0 on the others, so a field lies in the span exactly when it
    /// equals the combination of reduced fields weighted by its pivot
    /// coefficients; a nonzero remainder is a proof of non-membership.
    pub fn involutive(&self) -> Result<Involutivity> {
        let Some(reduced) = self.normalize()? else {
            return Ok(Involutivity::Indeterminate);
        };
        for (i, a) in self.fields.iter().enumerate() {
            for b in &self.fields[i..] {
                let br = a.bracket(b)?;
                if !self.remainder(&br, &reduced)?.is_zero() {
                    return Ok(Involutivity::NotIntegrable);
                }
            }
        }
        Ok(Involutivity::Integrable)
    }

    fn remainder(&self, d: &SuperDerivation, reduced: &[(Var, SuperDerivation)]) -> Result<SuperDerivation> {
        let mut r = d.clone();
        for (v, f) in reduced {
            let c: SuperPoly = d.coeff(*v).clone();
            if !c.is_zero() {
                r = r.checked_sub(&f.left_mul(&c)?)?;
            }
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::Parity;

    fn field(ctx: &Arc<Context>, parity: Parity, coeffs: &[(&str, SuperPoly)]) -> SuperDerivation {
        let mut even = vec![SuperPoly::zero(ctx); ctx.n_even()];
        let mut odd = vec![SuperPoly::zero(ctx); ctx.n_odd()];
        for (name, c) in coeffs {
            match ctx.var(name).unwrap() {
                Var::Even(i) => even[i] = c.clone(),
                Var::Odd(j) => odd[j] = c.clone(),
            }
        }
        SuperDerivation::new(ctx, parity, even, odd).unwrap()
    }

    #[test]
    fn coordinate_fields_are_integrable() {
        let c = Context::new(["t1", "t2"], ["theta1", "theta2"]).unwrap();
        let d = Distribution::new(vec![
            SuperDerivation::basis(&c, Var::Even(0)).unwrap(),
            SuperDerivation::basis(&c, Var::Odd(0)).unwrap(),
        ])
        .unwrap();
        assert_eq!(d.involutive().unwrap(), Involutivity::Integrable);
    }

    #[test]
    fn odd_field_squaring_into_span() {
        let c = Context::new(["t"], ["theta1"]).unwrap();
        let one = SuperPoly::one(&c);
        let th = SuperPoly::named(&c, "theta1").unwrap();
        let chi = field(&c, Parity::Odd, &[("t", th), ("theta1", one.clone())]);
        let dt = field(&c, Parity::Even, &[("t", one)]);
        for fields in [vec![dt.clone(), chi.clone()], vec![chi, dt]] {
            assert_eq!(Distribution::new(fields).unwrap().involutive().unwrap(), Involutivity::Integrable);
        }
    }

    #[test]
    fn odd_field_squaring_out_of_span() {
        let c = Context::new(["t1", "t2"], ["theta1"]).unwrap();
        let th = SuperPoly::named(&c, "theta1").unwrap();
        let chi = field(&c, Parity::Odd, &[("t2", th), ("theta1", SuperPoly::one(&c))]);
        assert_eq!(Distribution::new(vec![chi]).unwrap().involutive().unwrap(), Involutivity::NotIntegrable);
    }

    #[test]
    fn non_invertible_pivots_are_indeterminate() {
        let c = Context::new(["t1", "t2"], Vec::<String>::new()).unwrap();
        let t1 = SuperPoly::named(&c, "t1").unwrap();
        let f = field(&c, Parity::Even, &[("t2", t1)]);
        assert_eq!(Distribution::new(vec![f]).unwrap().involutive().unwrap(), Involutivity::Indeterminate);
        assert!(Distribution::new(vec![]).is_err());
    }
}
