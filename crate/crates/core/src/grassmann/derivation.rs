use std::fmt;
use std::sync::Arc;

use super::context::{ensure_same, Context, Var};
use super::poly::{join_signed, SuperPoly};
use super::{Parity, Rational};
use crate::error::{Error, Result};

/// A vector field `sum f_i d/dt_i + sum g_j d/dtheta_j` on a coordinate
/// superdomain. Coefficients multiply from the left.
#[derive(Debug, Clone)]
pub struct SuperDerivation {
    ctx: Arc<Context>,
    parity: Option<Parity>,
    even_coeffs: Vec<SuperPoly>,
    odd_coeffs: Vec<SuperPoly>,
}

/// Equality ignores the parity tag, which is only a choice for the zero field.
impl PartialEq for SuperDerivation {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.even_coeffs == other.even_coeffs && self.odd_coeffs == other.odd_coeffs
    }
}

impl Eq for SuperDerivation {}

impl SuperDerivation {
    /// Homogeneous derivation of the declared parity.
    pub fn new(
        ctx: &Arc<Context>,
        parity: Parity,
        even_coeffs: Vec<SuperPoly>,
        odd_coeffs: Vec<SuperPoly>,
    ) -> Result<Self> {
        let d = Self::from_coefficients(ctx, even_coeffs, odd_coeffs)?;
        let fits = d
            .even_coeffs
            .iter()
            .all(|c| c.has_parity(parity))
            && d.odd_coeffs.iter().all(|c| c.has_parity(parity + Parity::Odd));
        if !fits {
            return Err(Error::ParityViolation(format!(
                "coefficients of `{d}` do not form a {parity} derivation"
            )));
        }
        Ok(SuperDerivation { parity: Some(parity), ..d })
    }

    /// Derivation with the given coefficients; its parity is inferred and is
    /// `None` when the coefficients mix parities.
    pub fn from_coefficients(
        ctx: &Arc<Context>,
        even_coeffs: Vec<SuperPoly>,
        odd_coeffs: Vec<SuperPoly>,
    ) -> Result<Self> {
        if even_coeffs.len() != ctx.n_even() || odd_coeffs.len() != ctx.n_odd() {
            return Err(Error::DimensionMismatch(format!(
                "{}|{} coefficients for a {}|{} context",
                even_coeffs.len(),
                odd_coeffs.len(),
                ctx.n_even(),
                ctx.n_odd()
            )));
        }
        for c in even_coeffs.iter().chain(odd_coeffs.iter()) {
            ensure_same(c.context(), ctx)?;
        }
        let parity = infer_parity(&even_coeffs, &odd_coeffs);
        Ok(SuperDerivation { ctx: ctx.clone(), parity, even_coeffs, odd_coeffs })
    }

    pub fn zero(ctx: &Arc<Context>) -> Self {
        SuperDerivation {
            ctx: ctx.clone(),
            parity: Some(Parity::Even),
            even_coeffs: vec![SuperPoly::zero(ctx); ctx.n_even()],
            odd_coeffs: vec![SuperPoly::zero(ctx); ctx.n_odd()],
        }
    }

    /// The coordinate field `d/dv`.
    pub fn basis(ctx: &Arc<Context>, v: Var) -> Result<Self> {
        ctx.check_var(v)?;
        let mut d = Self::zero(ctx);
        *d.coeff_mut(v) = SuperPoly::one(ctx);
        d.parity = Some(if v.is_odd() { Parity::Odd } else { Parity::Even });
        Ok(d)
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn parity(&self) -> Option<Parity> {
        self.parity
    }

    pub fn homogeneous_parity(&self) -> Result<Parity> {
        self.parity.ok_or_else(|| Error::NonHomogeneous(self.to_string()))
    }

    pub fn even_coeffs(&self) -> &[SuperPoly] {
        &self.even_coeffs
    }

    pub fn odd_coeffs(&self) -> &[SuperPoly] {
        &self.odd_coeffs
    }

    pub fn coeff(&self, v: Var) -> &SuperPoly {
        match v {
            Var::Even(i) => &self.even_coeffs[i],
            Var::Odd(j) => &self.odd_coeffs[j],
        }
    }

    fn coeff_mut(&mut self, v: Var) -> &mut SuperPoly {
        match v {
            Var::Even(i) => &mut self.even_coeffs[i],
            Var::Odd(j) => &mut self.odd_coeffs[j],
        }
    }

    /// Coefficients in coordinate order, even variables first.
    pub fn coeffs(&self) -> impl Iterator<Item = &SuperPoly> {
        self.even_coeffs.iter().chain(self.odd_coeffs.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().all(SuperPoly::is_zero)
    }

    pub fn apply(&self, a: &SuperPoly) -> Result<SuperPoly> {
        ensure_same(&self.ctx, a.context())?;
        let mut out = SuperPoly::zero(&self.ctx);
        for v in self.ctx.vars() {
            let c = self.coeff(v);
            if c.is_zero() {
                continue;
            }
            let d = a.partial(v)?;
            if !d.is_zero() {
                out += &(c * &d);
            }
        }
        Ok(out)
    }

    /// Super commutator `[D1, D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1`, read off
    /// by applying the composite to each coordinate.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.ctx, &other.ctx)?;
        let p1 = self.homogeneous_parity()?;
        let p2 = other.homogeneous_parity()?;
        let sign_negative = !(p1 == Parity::Odd && p2 == Parity::Odd);
        let mut coeffs = Vec::with_capacity(self.ctx.n_even() + self.ctx.n_odd());
        for v in self.ctx.vars() {
            let ab = self.apply(other.coeff(v))?;
            let ba = other.apply(self.coeff(v))?;
            coeffs.push(if sign_negative { ab - ba } else { ab + ba });
        }
        let odd = coeffs.split_off(self.ctx.n_even());
        let mut d = Self::from_coefficients(&self.ctx, coeffs, odd)?;
        if d.is_zero() {
            d.parity = Some(p1 + p2);
        }
        Ok(d)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.ctx, &other.ctx)?;
        let even = self.even_coeffs.iter().zip(&other.even_coeffs).map(|(a, b)| a + b).collect();
        let odd = self.odd_coeffs.iter().zip(&other.odd_coeffs).map(|(a, b)| a + b).collect();
        let mut d = Self::from_coefficients(&self.ctx, even, odd)?;
        if d.is_zero() && self.parity.is_some() && self.parity == other.parity {
            d.parity = self.parity;
        }
        Ok(d)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut d = self.clone();
        for x in d.even_coeffs.iter_mut().chain(d.odd_coeffs.iter_mut()) {
            *x = x.scale(c);
        }
        d
    }

    /// The field `f * D`, with `f` acting from the left on every coefficient.
    pub fn left_mul(&self, f: &SuperPoly) -> Result<Self> {
        ensure_same(&self.ctx, f.context())?;
        let even = self.even_coeffs.iter().map(|c| f * c).collect();
        let odd = self.odd_coeffs.iter().map(|c| f * c).collect();
        Self::from_coefficients(&self.ctx, even, odd)
    }
}

fn infer_parity(even: &[SuperPoly], odd: &[SuperPoly]) -> Option<Parity> {
    let mut found: Option<Parity> = None;
    let shifted = odd.iter().map(|c| (c, Parity::Odd));
    for (c, shift) in even.iter().map(|c| (c, Parity::Even)).chain(shifted) {
        if c.is_zero() {
            continue;
        }
        let p = c.homogeneous_parity().ok()? + shift;
        match found {
            None => found = Some(p),
            Some(q) if q != p => return None,
            _ => {}
        }
    }
    Some(found.unwrap_or(Parity::Even))
}

impl fmt::Display for SuperDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces = Vec::new();
        for v in self.ctx.vars() {
            let c = self.coeff(v);
            if c.is_zero() {
                continue;
            }
            let basis = format!("d/d{}", self.ctx.name(v));
            let terms = c.signed_terms();
            if terms.len() == 1 {
                let (neg, text) = &terms[0];
                if text == "1" {
                    pieces.push((*neg, basis));
                } else {
                    pieces.push((*neg, format!("{text}*{basis}")));
                }
            } else {
                pieces.push((false, format!("({c})*{basis}")));
            }
        }
        f.write_str(&join_signed(&pieces))
    }
}
