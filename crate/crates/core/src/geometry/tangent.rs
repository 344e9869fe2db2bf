use std::fmt;
use std::sync::Arc;

use num::{One, Signed, Zero};

use super::{value_at, RationalPoint};
use crate::error::{Error, Result};
use crate::grassmann::{ensure_same, join_signed, Context, Parity, Rational, SuperPoly, Var};
use crate::matrix::linalg::{nullspace, rref};
use crate::matrix::SuperDim;

/// A linear form `sum a_i (dt_i) + sum b_j (dtheta_j)` on `k^{m|n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    ctx: Arc<Context>,
    pub even: Vec<Rational>,
    pub odd: Vec<Rational>,
}

impl LinearForm {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        LinearForm { ctx: ctx.clone(), even: vec![Rational::zero(); ctx.n_even()], odd: vec![Rational::zero(); ctx.n_odd()] }
    }

    pub fn new(ctx: &Arc<Context>, even: Vec<Rational>, odd: Vec<Rational>) -> Result<Self> {
        if even.len() != ctx.n_even() || odd.len() != ctx.n_odd() {
            return Err(Error::DimensionMismatch(format!("{}|{} coefficients", even.len(), odd.len())));
        }
        Ok(LinearForm { ctx: ctx.clone(), even, odd })
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    /// Coefficients in coordinate order, even ones first.
    pub fn coefficients(&self) -> Vec<Rational> {
        self.even.iter().chain(&self.odd).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.even.iter().chain(&self.odd).all(Zero::is_zero)
    }

    pub fn apply(&self, v: &TangentVector) -> Rational {
        self.coefficients().iter().zip(&v.components).map(|(a, b)| a * b).sum()
    }

    /// Render with a custom symbol per coordinate.
    pub fn render_with(&self, symbol: impl Fn(&str) -> String) -> String {
        let pieces: Vec<(bool, String)> = self
            .ctx
            .vars()
            .zip(self.even.iter().chain(&self.odd))
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, c)| {
                let s = symbol(self.ctx.name(v));
                let a = c.abs();
                (c.is_negative(), if a.is_one() { s } else { format!("{a}*{s}") })
            })
            .collect();
        join_signed(&pieces)
    }

    /// `sum a_i X_i = 0` with capitalized coordinate names.
    pub fn render_relation(&self) -> String {
        format!("{} = 0", self.render_with(capitalize))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|n| format!("d{n}")))
    }
}

fn capitalize(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// `(df)_x`: the degree-one part of `f - f(x)` in the coordinates centred at
/// `x`, i.e. the gradient with left odd derivatives, evaluated at `x`.
pub fn differential_of_function(f: &SuperPoly, x: &RationalPoint) -> Result<LinearForm> {
    let ctx = f.context();
    x.check(ctx)?;
    let mut form = LinearForm::zero(ctx);
    for v in ctx.vars() {
        let c = f.partial(v)?.evaluate(&x.values)?;
        match v {
            Var::Even(i) => form.even[i] = c,
            Var::Odd(j) => form.odd[j] = c,
        }
    }
    Ok(form)
}

/// A homogeneous vector of `k^{m|n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentVector {
    pub parity: Parity,
    /// Length `m + n`, even coordinates first.
    pub components: Vec<Rational>,
}

/// An affine supervariety given by generators of its ideal, with a rational
/// point on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedVariety {
    ambient: Arc<Context>,
    generators: Vec<SuperPoly>,
    point: RationalPoint,
}

impl PointedVariety {
    pub fn new(ambient: &Arc<Context>, generators: Vec<SuperPoly>, point: RationalPoint) -> Result<Self> {
        point.check(ambient)?;
        for g in &generators {
            ensure_same(g.context(), ambient)?;
            g.homogeneous_parity()?;
            let value = value_at(g, &point)?;
            if !value.is_zero() {
                return Err(Error::PointNotOnVariety { generator: g.to_string(), value: value.to_string() });
            }
        }
        Ok(PointedVariety { ambient: ambient.clone(), generators, point })
    }

    pub fn ambient(&self) -> &Arc<Context> {
        &self.ambient
    }

    pub fn generators(&self) -> &[SuperPoly] {
        &self.generators
    }

    pub fn point(&self) -> &RationalPoint {
        &self.point
    }

    /// Zariski tangent space from the differentials of the generators.
    pub fn tangent_space(&self) -> Result<TangentSpaceResult> {
        let forms = self
            .generators
            .iter()
            .map(|g| differential_of_function(g, &self.point))
            .collect::<Result<Vec<_>>>()?;
        Ok(TangentSpaceResult::from_forms(&self.ambient, &forms))
    }

    /// Same space read off the cotangent space `m_x / (m_x^2 + I)`: translate
    /// the generators to the origin, multiply by `1` and each coordinate, and
    /// keep the degree-one parts.
    pub fn tangent_space_by_quotient(&self) -> Result<TangentSpaceResult> {
        let ctx = &self.ambient;
        let shift: Vec<SuperPoly> = ctx
            .vars()
            .map(|v| match v {
                Var::Even(i) => SuperPoly::var(ctx, v) + SuperPoly::constant(ctx, self.point.values[i].clone()),
                Var::Odd(_) => SuperPoly::var(ctx, v),
            })
            .collect();
        let multipliers: Vec<SuperPoly> =
            std::iter::once(SuperPoly::one(ctx)).chain(ctx.vars().map(|v| SuperPoly::var(ctx, v))).collect();
        let mut forms = Vec::new();
        for g in &self.generators {
            let moved = g.substitute(ctx, &shift)?;
            for m in &multipliers {
                let mut form = LinearForm::zero(ctx);
                for (mono, c) in (m * &moved).terms() {
                    if mono.total_degree() != 1 {
                        continue;
                    }
                    if let Some(&(i, _)) = mono.even_exponents().first() {
                        form.even[i] = c.clone();
                    } else {
                        form.odd[mono.odd_indices()[0]] = c.clone();
                    }
                }
                if !form.is_zero() {
                    forms.push(form);
                }
            }
        }
        Ok(TangentSpaceResult::from_forms(ctx, &forms))
    }
}

/// Tangent space `T_x X` as a subspace of `k^{m|n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentSpaceResult {
    pub dimension: SuperDim,
    pub basis: Vec<TangentVector>,
    /// Reduced relations, even ones first.
    pub relations: Vec<LinearForm>,
}

impl TangentSpaceResult {
    fn from_forms(ctx: &Arc<Context>, forms: &[LinearForm]) -> Self {
        let (m, n) = (ctx.n_even(), ctx.n_odd());
        let mut even_rows: Vec<Vec<Rational>> = forms.iter().map(|f| f.even.clone()).collect();
        let mut odd_rows: Vec<Vec<Rational>> = forms.iter().map(|f| f.odd.clone()).collect();
        even_rows.retain(|r| r.iter().any(|c| !c.is_zero()));
        odd_rows.retain(|r| r.iter().any(|c| !c.is_zero()));
        rref(&mut even_rows);
        rref(&mut odd_rows);

        let mut basis = Vec::new();
        for v in nullspace(&even_rows, m) {
            let mut components = v;
            components.extend(std::iter::repeat_n(Rational::zero(), n));
            basis.push(TangentVector { parity: Parity::Even, components });
        }
        for v in nullspace(&odd_rows, n) {
            let mut components = vec![Rational::zero(); m];
            components.extend(v);
            basis.push(TangentVector { parity: Parity::Odd, components });
        }
        let mut relations = Vec::new();
        for r in &even_rows {
            relations.push(LinearForm { ctx: ctx.clone(), even: r.clone(), odd: vec![Rational::zero(); n] });
        }
        for r in &odd_rows {
            relations.push(LinearForm { ctx: ctx.clone(), even: vec![Rational::zero(); m], odd: r.clone() });
        }
        TangentSpaceResult { dimension: SuperDim::new(m - even_rows.len(), n - odd_rows.len()), basis, relations }
    }
}

impl fmt::Display for TangentSpaceResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.relations {
            writeln!(f, "{}", r.render_relation())?;
        }
        write!(f, "dim {}", self.dimension)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::q;

    fn poly(ctx: &Arc<Context>, name: &str) -> SuperPoly {
        SuperPoly::named(ctx, name).unwrap()
    }

    fn extangent() -> PointedVariety {
        let c = Context::new(["x", "y"], ["xi", "eta"]).unwrap();
        let f = poly(&c, "x") * poly(&c, "xi") + poly(&c, "y") * poly(&c, "eta");
        PointedVariety::new(&c, vec![f], RationalPoint::from_ints(&[1, 1])).unwrap()
    }

    #[test]
    fn differential_of_example_generator() {
        let v = extangent();
        let d = differential_of_function(&v.generators()[0], v.point()).unwrap();
        assert_eq!(d.coefficients(), vec![q(0), q(0), q(1), q(1)]);
        assert_eq!(d.to_string(), "dxi + deta");
        let one = SuperPoly::int(v.ambient(), 5);
        assert!(differential_of_function(&one, v.point()).unwrap().is_zero());
    }

    #[test]
    fn tangent_space_of_example_both_routes() {
        let v = extangent();
        for t in [v.tangent_space().unwrap(), v.tangent_space_by_quotient().unwrap()] {
            assert_eq!(t.dimension, SuperDim::new(2, 1));
            assert_eq!(t.to_string(), "Xi + Eta = 0\ndim 2|1");
            for b in &t.basis {
                assert!(t.relations.iter().all(|r| r.apply(b).is_zero()));
            }
        }
    }

    #[test]
    fn sphere_tangent_space() {
        let c = Context::new(["x1", "x2", "x3"], ["xi1", "xi2", "xi3"]).unwrap();
        let p = |n: &str| poly(&c, n);
        let sphere = p("x1").pow(2) + p("x2").pow(2) + p("x3").pow(2) - SuperPoly::one(&c);
        let odd = p("x1") * p("xi1") + p("x2") * p("xi2") + p("x3") * p("xi3");
        let v = PointedVariety::new(&c, vec![sphere, odd], RationalPoint::from_ints(&[1, 0, 0])).unwrap();
        let t = v.tangent_space().unwrap();
        assert_eq!(t.to_string(), "X1 = 0\nXi1 = 0\ndim 2|2");
        assert_eq!(v.tangent_space_by_quotient().unwrap().dimension, t.dimension);
    }

    #[test]
    fn zero_ideal_and_bad_points() {
        let c = Context::new(["x"], ["xi", "eta"]).unwrap();
        let v = PointedVariety::new(&c, vec![], RationalPoint::from_ints(&[4])).unwrap();
        assert_eq!(v.tangent_space().unwrap().dimension, SuperDim::new(1, 2));
        let off = PointedVariety::new(&c, vec![poly(&c, "x")], RationalPoint::from_ints(&[4]));
        assert!(matches!(off, Err(Error::PointNotOnVariety { .. })));
        let mixed = poly(&c, "x") + poly(&c, "xi");
        assert!(matches!(PointedVariety::new(&c, vec![mixed], RationalPoint::from_ints(&[0])), Err(Error::NonHomogeneous(_))));
    }
}
