use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num::{BigInt, One, Signed, Zero};

use super::context::{ensure_same, Context, Var};
use super::monomial::Monomial;
use super::{Parity, PolyParity, Rational};
use crate::error::{Error, Result};

/// Polynomial in commuting even and anticommuting odd variables with exact
/// rational coefficients.
///
/// Terms are kept in a map keyed by canonical monomials with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Debug, Clone)]
pub struct SuperPoly {
    ctx: Arc<Context>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for SuperPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.terms == other.terms
    }
}

impl Eq for SuperPoly {}

impl SuperPoly {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        SuperPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Arc<Context>, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn int(ctx: &Arc<Context>, c: i64) -> Self {
        Self::constant(ctx, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(ctx: &Arc<Context>, v: Var) -> Self {
        let m = match v {
            Var::Even(i) => Monomial::even_var(i),
            Var::Odd(j) => Monomial::odd_var(j),
        };
        Self::term(ctx, m, Rational::one())
    }

    /// The variable called `name`.
    pub fn named(ctx: &Arc<Context>, name: &str) -> Result<Self> {
        Ok(Self::var(ctx, ctx.var(name)?))
    }

    pub fn term(ctx: &Arc<Context>, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ctx: &Arc<Context>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn parity(&self) -> PolyParity {
        let mut even = false;
        let mut odd = false;
        for m in self.terms.keys() {
            if m.is_odd() {
                odd = true;
            } else {
                even = true;
            }
        }
        match (even, odd) {
            (true, true) => PolyParity::Mixed,
            (false, true) => PolyParity::Odd,
            _ => PolyParity::Even,
        }
    }

    /// Whether the polynomial lies in the given graded piece (zero lies in both).
    pub fn has_parity(&self, p: Parity) -> bool {
        self.terms.keys().all(|m| m.is_odd() == (p == Parity::Odd))
    }

    pub fn homogeneous_parity(&self) -> Result<Parity> {
        match self.parity() {
            PolyParity::Even => Ok(Parity::Even),
            PolyParity::Odd => Ok(Parity::Odd),
            PolyParity::Mixed => Err(Error::NonHomogeneous(self.to_string())),
        }
    }

    /// Largest total degree of a term (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Reduced part: every term with an odd factor dropped.
    pub fn body(&self) -> Self {
        SuperPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.has_odd_part())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The part `self - body(self)`, which is nilpotent.
    pub fn soul(&self) -> Self {
        SuperPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.has_odd_part())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.ctx, &other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.ctx, &other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.ctx, &other.ctx)?;
        let mut out = Self::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((sign, m)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        SuperPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative; odd variables use the left derivative.
    pub fn partial(&self, v: Var) -> Result<Self> {
        self.ctx.check_var(v)?;
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            match v {
                Var::Even(i) => {
                    if let Some((e, dm)) = m.d_even(i) {
                        out.add_term(dm, c * Rational::from_integer(BigInt::from(e)));
                    }
                }
                Var::Odd(j) => {
                    if let Some((sign, dm)) = m.d_odd(j) {
                        out.add_term(dm, if sign < 0 { -c.clone() } else { c.clone() });
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn partial_named(&self, name: &str) -> Result<Self> {
        self.partial(self.ctx.var(name)?)
    }

    /// Inverse of an element whose body is a nonzero constant, via the
    /// terminating geometric series in its nilpotent part.
    pub fn inverse(&self) -> Result<Self> {
        let body = self.body();
        let c = body
            .as_constant()
            .ok_or_else(|| Error::NotInvertible(format!("body `{body}` is not constant")))?;
        if c.is_zero() {
            return Err(Error::NotInvertible(format!("body of `{self}` is zero")));
        }
        let c_inv = c.recip();
        let n = self.soul().scale(&c_inv);
        let mut acc = Self::one(&self.ctx);
        let mut power = Self::one(&self.ctx);
        loop {
            power = -(&power * &n);
            if power.is_zero() {
                break;
            }
            acc += &power;
        }
        Ok(acc.scale(&c_inv))
    }

    /// Substitute `images[k]` (even variables first, then odd) for the
    /// variables of this polynomial. All images must live in `target`.
    pub fn substitute(&self, target: &Arc<Context>, images: &[SuperPoly]) -> Result<Self> {
        let (ne, no) = (self.ctx.n_even(), self.ctx.n_odd());
        if images.len() != ne + no {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                ne + no
            )));
        }
        for img in images {
            ensure_same(img.context(), target)?;
        }
        let mut powers: Vec<Vec<SuperPoly>> = vec![vec![SuperPoly::one(target)]; ne];
        let mut out = SuperPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = SuperPoly::constant(target, c.clone());
            for &(i, e) in m.even_exponents() {
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &images[i];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            for &j in m.odd_indices() {
                t = &t * &images[ne + j];
                if t.is_zero() {
                    break;
                }
            }
            out += &t;
        }
        Ok(out)
    }

    /// Value after setting the even variables to `values` and odd ones to 0.
    pub fn evaluate(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.ctx.n_even() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} even variables",
                values.len(),
                self.ctx.n_even()
            )));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            if m.has_odd_part() {
                continue;
            }
            let mut v = c.clone();
            for &(i, e) in m.even_exponents() {
                v *= num::pow(values[i].clone(), e as usize);
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Re-express in `ctx` by sending variable indices through the maps.
    pub fn reindex(
        &self,
        ctx: &Arc<Context>,
        even_map: impl Fn(usize) -> usize,
        odd_map: impl Fn(usize) -> usize,
    ) -> Self {
        let mut out = SuperPoly::zero(ctx);
        for (m, c) in &self.terms {
            if let Some((sign, m2)) = m.reindex(&even_map, &odd_map) {
                out.add_term(m2, if sign < 0 { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// Re-express in a context that contains every variable of `self` under
    /// the same name.
    pub fn embed(&self, ctx: &Arc<Context>) -> Result<Self> {
        let mut even = Vec::with_capacity(self.ctx.n_even());
        for n in self.ctx.even_names() {
            match ctx.var(n)? {
                Var::Even(i) => even.push(i),
                Var::Odd(_) => return Err(Error::ContextMismatch(format!("`{n}` changes parity"))),
            }
        }
        let mut odd = Vec::with_capacity(self.ctx.n_odd());
        for n in self.ctx.odd_names() {
            match ctx.var(n)? {
                Var::Odd(j) => odd.push(j),
                Var::Even(_) => return Err(Error::ContextMismatch(format!("`{n}` changes parity"))),
            }
        }
        Ok(self.reindex(ctx, |i| even[i], |j| odd[j]))
    }

    /// Variables that occur in some term.
    pub fn support(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| {
                m.even_exponents()
                    .iter()
                    .map(|&(i, _)| Var::Even(i))
                    .chain(m.odd_indices().iter().map(|&j| Var::Odd(j)))
                    .collect::<Vec<_>>()
            })
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub(crate) fn render_monomial(&self, m: &Monomial) -> String {
        let mut parts: Vec<String> = Vec::new();
        for &(i, e) in m.even_exponents() {
            let name = &self.ctx.even_names()[i];
            if e == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        for &j in m.odd_indices() {
            parts.push(self.ctx.odd_names()[j].clone());
        }
        parts.join("*")
    }

    /// Terms rendered without sign, paired with a negativity flag.
    pub(crate) fn signed_terms(&self) -> Vec<(bool, String)> {
        self.terms
            .iter()
            .map(|(m, c)| {
                let neg = c.is_negative();
                let a = c.abs();
                let text = if m.is_one() {
                    a.to_string()
                } else if a.is_one() {
                    self.render_monomial(m)
                } else {
                    format!("{}*{}", a, self.render_monomial(m))
                };
                (neg, text)
            })
            .collect()
    }
}

/// Join `(negative, text)` pieces as `a + b - c`, with a bare leading `-`.
pub(crate) fn join_signed(pieces: &[(bool, String)]) -> String {
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (neg, text)) in pieces.iter().enumerate() {
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(text);
    }
    out
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_signed(&self.signed_terms()))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&SuperPoly> for &SuperPoly {
            type Output = SuperPoly;
            fn $method(self, rhs: &SuperPoly) -> SuperPoly {
                self.$checked(rhs).expect("polynomials over different contexts")
            }
        }
        impl $tr<SuperPoly> for SuperPoly {
            type Output = SuperPoly;
            fn $method(self, rhs: SuperPoly) -> SuperPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&SuperPoly> for SuperPoly {
            type Output = SuperPoly;
            fn $method(self, rhs: &SuperPoly) -> SuperPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<SuperPoly> for &SuperPoly {
            type Output = SuperPoly;
            fn $method(self, rhs: SuperPoly) -> SuperPoly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&SuperPoly> for SuperPoly {
    fn add_assign(&mut self, rhs: &SuperPoly) {
        ensure_same(&self.ctx, &rhs.ctx).expect("polynomials over different contexts");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&SuperPoly> for SuperPoly {
    fn sub_assign(&mut self, rhs: &SuperPoly) {
        ensure_same(&self.ctx, &rhs.ctx).expect("polynomials over different contexts");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        SuperPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for SuperPoly {
    type Output = SuperPoly;
    fn neg(mut self) -> SuperPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}
