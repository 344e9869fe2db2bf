//! Super Lie group laws on coordinate superdomains and matrix supergroups.
//!
//! A law is a morphism `mu : G x G -> G`. The product context doubles every
//! coordinate of `G`: the first factor keeps the names, the second gets a
//! trailing `'` (and a third factor, when needed, gets `''`).

mod matrix_groups;

use std::fmt;
use std::sync::Arc;

use num::Zero;

use crate::error::{Error, Result};
use crate::geometry::{Morphism, RationalPoint, TangentVector};
use crate::grassmann::{ensure_same, Context, Parity, Rational, SuperDerivation, SuperPoly, Var};

pub use matrix_groups::{
    adjoint_derivative, commutator_bracket, lie_algebra, GroupKind, LieAlgebra, MatrixGroupSpec,
};

/// `G x G` context for coordinates `ctx`.
pub fn pair_context(ctx: &Context) -> Result<Arc<Context>> {
    Context::product(&[ctx, &ctx.suffixed("'")])
}

fn triple_context(ctx: &Context) -> Result<Arc<Context>> {
    Context::product(&[ctx, &ctx.suffixed("'"), &ctx.suffixed("''")])
}

/// Images of the coordinates of an `k`-fold product context, given the
/// images of each factor's coordinates (even ones first within a factor).
fn factor_images(factors: &[Vec<SuperPoly>], n_even: usize) -> Vec<SuperPoly> {
    let mut out: Vec<SuperPoly> = factors.iter().flat_map(|f| f[..n_even].iter().cloned()).collect();
    out.extend(factors.iter().flat_map(|f| f[n_even..].iter().cloned()));
    out
}

/// Coordinates of the `k`-th factor of `prod`.
fn factor_vars(prod: &Arc<Context>, n_even: usize, n_odd: usize, k: usize) -> Vec<SuperPoly> {
    let mut out: Vec<SuperPoly> = (0..n_even).map(|i| SuperPoly::var(prod, Var::Even(k * n_even + i))).collect();
    out.extend((0..n_odd).map(|j| SuperPoly::var(prod, Var::Odd(k * n_odd + j))));
    out
}

fn point_images(ctx: &Arc<Context>, p: &RationalPoint, n_odd: usize) -> Vec<SuperPoly> {
    let mut out: Vec<SuperPoly> = p.values.iter().map(|v| SuperPoly::constant(ctx, v.clone())).collect();
    out.extend((0..n_odd).map(|_| SuperPoly::zero(ctx)));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupLaw {
    coords: Arc<Context>,
    pair: Arc<Context>,
    mu: Morphism,
    unit: RationalPoint,
    inverse: Option<Morphism>,
}

impl GroupLaw {
    /// `mu` must map `pair_context(G)` to `G`; `inverse`, when given, maps
    /// `G` to itself.
    pub fn new(mu: Morphism, unit: RationalPoint, inverse: Option<Morphism>) -> Result<Self> {
        let coords = mu.target().clone();
        let pair = pair_context(&coords)?;
        ensure_same(mu.source(), &pair)?;
        unit.check(&coords)?;
        if let Some(inv) = &inverse {
            ensure_same(inv.source(), &coords)?;
            ensure_same(inv.target(), &coords)?;
        }
        Ok(GroupLaw { coords, pair, mu, unit, inverse })
    }

    pub fn coords(&self) -> &Arc<Context> {
        &self.coords
    }

    pub fn pair(&self) -> &Arc<Context> {
        &self.pair
    }

    pub fn mu(&self) -> &Morphism {
        &self.mu
    }

    pub fn unit(&self) -> &RationalPoint {
        &self.unit
    }

    pub fn inverse(&self) -> Option<&Morphism> {
        self.inverse.as_ref()
    }

    fn dims(&self) -> (usize, usize) {
        (self.coords.n_even(), self.coords.n_odd())
    }

    /// `iota^*(x_k)`, the pullback through `(g, g') -> g' g`.
    pub fn anti_law_images(&self) -> Result<Vec<SuperPoly>> {
        let (ne, no) = self.dims();
        let swap = factor_images(
            &[factor_vars(&self.pair, ne, no, 1), factor_vars(&self.pair, ne, no, 0)],
            ne,
        );
        self.mu.assignment().iter().map(|a| a.substitute(&self.pair, &swap)).collect()
    }

    /// Symbolic check of associativity, both unit laws and, when an inverse
    /// is present, both inverse laws.
    pub fn check_axioms(&self) -> Result<AxiomReport> {
        let (ne, no) = self.dims();
        let mut checks = Vec::new();

        let triple = triple_context(&self.coords)?;
        let x = factor_vars(&triple, ne, no, 0);
        let y = factor_vars(&triple, ne, no, 1);
        let z = factor_vars(&triple, ne, no, 2);
        let mu_xy = self.mu_of(&triple, &x, &y)?;
        let mu_yz = self.mu_of(&triple, &y, &z)?;
        let left = self.mu_of(&triple, &mu_xy, &z)?;
        let right = self.mu_of(&triple, &x, &mu_yz)?;
        checks.push(self.compare("associativity", &left, &right));

        let e = point_images(&self.pair, &self.unit, no);
        let g = factor_vars(&self.pair, ne, no, 0);
        let h = factor_vars(&self.pair, ne, no, 1);
        checks.push(self.compare("left unit", &h, &self.mu_of(&self.pair, &e, &h)?));
        checks.push(self.compare("right unit", &g, &self.mu_of(&self.pair, &g, &e)?));

        if let Some(inv) = &self.inverse {
            let c = &self.coords;
            let id: Vec<SuperPoly> = c.vars().map(|v| SuperPoly::var(c, v)).collect();
            let e = point_images(c, &self.unit, no);
            let iv = inv.assignment().to_vec();
            checks.push(self.compare("left inverse", &e, &self.mu_of(c, &iv, &id)?));
            checks.push(self.compare("right inverse", &e, &self.mu_of(c, &id, &iv)?));
        }
        Ok(AxiomReport { checks })
    }

    /// `mu^*(x_k)` with the two factors replaced by `a` and `b` over `ctx`.
    fn mu_of(&self, ctx: &Arc<Context>, a: &[SuperPoly], b: &[SuperPoly]) -> Result<Vec<SuperPoly>> {
        let images = factor_images(&[a.to_vec(), b.to_vec()], self.coords.n_even());
        self.mu.assignment().iter().map(|m| m.substitute(ctx, &images)).collect()
    }

    fn compare(&self, name: &str, expected: &[SuperPoly], actual: &[SuperPoly]) -> AxiomCheck {
        let residuals = self
            .coords
            .vars()
            .zip(expected.iter().zip(actual))
            .filter_map(|(v, (e, a))| {
                let r = e - a;
                (!r.is_zero()).then(|| (self.coords.name(v).to_string(), r))
            })
            .collect();
        AxiomCheck { name: name.to_string(), residuals }
    }

    fn check_vector(&self, v: &TangentVector) -> Result<()> {
        let (ne, no) = self.dims();
        if v.components.len() != ne + no {
            return Err(Error::DimensionMismatch(format!("{} components for {ne}|{no}", v.components.len())));
        }
        let bad = v.components.iter().enumerate().any(|(k, c)| {
            !c.is_zero() && ((k >= ne) != (v.parity == Parity::Odd))
        });
        if bad {
            return Err(Error::NonHomogeneous(format!("tangent vector is not purely {}", v.parity)));
        }
        Ok(())
    }

    /// The left-invariant field with value `v` at the unit: differentiate
    /// `mu^*(x_k)` along `v` in the second factor, then put that factor at
    /// the unit.
    pub fn left_invariant_field(&self, v: &TangentVector) -> Result<SuperDerivation> {
        self.check_vector(v)?;
        let (ne, no) = self.dims();
        let pair = &self.pair;
        let direction: Vec<Var> = (0..ne).map(|i| Var::Even(ne + i)).chain((0..no).map(|j| Var::Odd(no + j))).collect();
        let restrict = factor_images(
            &[factor_vars(&self.coords, ne, no, 0), point_images(&self.coords, &self.unit, no)],
            ne,
        );
        let mut coeffs = Vec::with_capacity(ne + no);
        for m in self.mu.assignment() {
            let mut acc = SuperPoly::zero(pair);
            for (c, &w) in v.components.iter().zip(&direction) {
                if !c.is_zero() {
                    acc += &m.partial(w)?.scale(c);
                }
            }
            coeffs.push(acc.substitute(&self.coords, &restrict)?);
        }
        let odd = coeffs.split_off(ne);
        SuperDerivation::new(&self.coords, v.parity, coeffs, odd)
    }

    /// Whether `(V (x) id) iota^* = iota^* V` on every coordinate.
    pub fn is_left_invariant(&self, field: &SuperDerivation) -> Result<bool> {
        Ok(self.left_invariance_residuals(field)?.iter().all(SuperPoly::is_zero))
    }

    /// `(V (x) id) iota^*(x_k) - iota^*(V x_k)` for each coordinate.
    pub fn left_invariance_residuals(&self, field: &SuperDerivation) -> Result<Vec<SuperPoly>> {
        ensure_same(field.context(), &self.coords)?;
        field.homogeneous_parity()?;
        let (ne, no) = self.dims();
        let pair = &self.pair;
        let first = factor_vars(pair, ne, no, 0);
        let lifted: Vec<SuperPoly> = field.coeffs().map(|c| c.substitute(pair, &first)).collect::<Result<_>>()?;
        let mut even = lifted[..ne].to_vec();
        even.extend((0..ne).map(|_| SuperPoly::zero(pair)));
        let mut odd = lifted[ne..].to_vec();
        odd.extend((0..no).map(|_| SuperPoly::zero(pair)));
        let extended = SuperDerivation::from_coefficients(pair, even, odd)?;

        let iota = self.anti_law_images()?;
        let mut out = Vec::with_capacity(ne + no);
        for (k, v) in self.coords.vars().enumerate() {
            let lhs = extended.apply(&iota[k])?;
            let vx = field.apply(&SuperPoly::var(&self.coords, v))?;
            let rhs = vx.substitute(pair, &iota)?;
            out.push(lhs - rhs);
        }
        Ok(out)
    }

    /// Infinitesimal action `rho(v)` of an action `sigma : G x M -> M`.
    ///
    /// The source of `sigma` lists the even coordinates of `G` then those of
    /// `M`, and likewise for the odd ones.
    pub fn infinitesimal_action(&self, sigma: &Morphism, v: &TangentVector) -> Result<SuperDerivation> {
        self.check_vector(v)?;
        let (ne, no) = self.dims();
        let src = sigma.source();
        let m = sigma.target();
        if src.n_even() != ne + m.n_even() || src.n_odd() != no + m.n_odd() {
            return Err(Error::MalformedAction(format!(
                "source [{src}] does not split as {ne}|{no} group coordinates plus [{m}]"
            )));
        }
        let direction: Vec<Var> = (0..ne).map(Var::Even).chain((0..no).map(Var::Odd)).collect();
        let mut restrict: Vec<SuperPoly> = self.unit.values.iter().map(|c| SuperPoly::constant(m, c.clone())).collect();
        restrict.extend((0..m.n_even()).map(|i| SuperPoly::var(m, Var::Even(i))));
        restrict.extend((0..no).map(|_| SuperPoly::zero(m)));
        restrict.extend((0..m.n_odd()).map(|j| SuperPoly::var(m, Var::Odd(j))));

        let mut coeffs = Vec::with_capacity(m.n_even() + m.n_odd());
        for a in sigma.assignment() {
            let mut acc = SuperPoly::zero(src);
            for (c, &w) in v.components.iter().zip(&direction) {
                if !c.is_zero() {
                    acc += &a.partial(w)?.scale(c);
                }
            }
            coeffs.push(acc.substitute(m, &restrict)?);
        }
        let odd = coeffs.split_off(m.n_even());
        SuperDerivation::new(m, v.parity, coeffs, odd)
    }

    /// `[v, w]` in the Lie superalgebra: the bracket of the left-invariant
    /// extensions, read at the unit.
    pub fn lie_bracket(&self, v: &TangentVector, w: &TangentVector) -> Result<TangentVector> {
        let b = self.left_invariant_field(v)?.bracket(&self.left_invariant_field(w)?)?;
        self.value_at_unit(&b, v.parity + w.parity)
    }

    /// Value of a field at the unit as a tangent vector of the given parity.
    pub fn value_at_unit(&self, field: &SuperDerivation, parity: Parity) -> Result<TangentVector> {
        let components = field.coeffs().map(|c| c.evaluate(&self.unit.values)).collect::<Result<Vec<Rational>>>()?;
        Ok(TangentVector { parity, components })
    }

    /// Coordinate tangent vector `d/dv` at the unit.
    pub fn basis_vector(&self, v: Var) -> Result<TangentVector> {
        self.coords.check_var(v)?;
        let (ne, no) = self.dims();
        let mut components = vec![Rational::zero(); ne + no];
        let (k, parity) = match v {
            Var::Even(i) => (i, Parity::Even),
            Var::Odd(j) => (ne + j, Parity::Odd),
        };
        components[k] = Rational::from_integer(1.into());
        Ok(TangentVector { parity, components })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: String,
    /// `expected - actual` for each failing coordinate.
    pub residuals: Vec<(String, SuperPoly)>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.checks.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            if c.passed() {
                write!(f, "{}: ok", c.name)?;
            } else {
                let parts: Vec<String> = c.residuals.iter().map(|(n, r)| format!("{n}: {r}")).collect();
                write!(f, "{}: fail [{}]", c.name, parts.join(", "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r11() -> GroupLaw {
        let g = Context::new(["t"], ["theta"]).unwrap();
        let p = pair_context(&g).unwrap();
        let v = |n: &str| SuperPoly::named(&p, n).unwrap();
        let mu = Morphism::new(&p, &g, vec![v("t") + v("t'") + v("theta") * v("theta'"), v("theta") + v("theta'")]).unwrap();
        let gv = |n: &str| SuperPoly::named(&g, n).unwrap();
        let inv = Morphism::new(&g, &g, vec![-gv("t"), -gv("theta")]).unwrap();
        GroupLaw::new(mu, RationalPoint::from_ints(&[0]), Some(inv)).unwrap()
    }

    #[test]
    fn r11_axioms_hold() {
        let law = r11();
        let report = law.check_axioms().unwrap();
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.checks.len(), 5);
    }

    #[test]
    fn corrupted_law_fails_left_unit() {
        let g = Context::new(["t"], ["theta"]).unwrap();
        let p = pair_context(&g).unwrap();
        let v = |n: &str| SuperPoly::named(&p, n).unwrap();
        let mu = Morphism::new(&p, &g, vec![v("t") + v("t'") + v("theta") * v("theta'"), v("theta")]).unwrap();
        let law = GroupLaw::new(mu, RationalPoint::from_ints(&[0]), None).unwrap();
        let report = law.check_axioms().unwrap();
        let unit = report.get("left unit").unwrap();
        assert_eq!(unit.residuals, vec![("theta".to_string(), v("theta'"))]);
        assert!(report.get("right unit").unwrap().passed());
    }

    #[test]
    fn left_invariant_fields_of_r11() {
        let law = r11();
        let dt = law.left_invariant_field(&law.basis_vector(Var::Even(0)).unwrap()).unwrap();
        let dth = law.left_invariant_field(&law.basis_vector(Var::Odd(0)).unwrap()).unwrap();
        assert_eq!(dt.to_string(), "d/dt");
        assert_eq!(dth.to_string(), "-theta*d/dt + d/dtheta");
        assert!(law.is_left_invariant(&dt).unwrap());
        assert!(law.is_left_invariant(&dth).unwrap());
        let plain = SuperDerivation::basis(law.coords(), Var::Odd(0)).unwrap();
        let res = law.left_invariance_residuals(&plain).unwrap();
        assert!(!law.is_left_invariant(&plain).unwrap());
        assert_eq!(res[0], -SuperPoly::named(law.pair(), "theta'").unwrap());
    }

    #[test]
    fn self_action_gives_right_invariant_fields() {
        let law = r11();
        let sigma = law.mu().clone();
        let rho = |v| law.infinitesimal_action(&sigma, &law.basis_vector(v).unwrap()).unwrap();
        assert_eq!(rho(Var::Even(0)).to_string(), "d/dt");
        assert_eq!(rho(Var::Odd(0)).to_string(), "theta*d/dt + d/dtheta");
    }

    #[test]
    fn trivial_action_and_malformed_split() {
        let law = r11();
        let m = Context::new(["x"], Vec::<String>::new()).unwrap();
        let src = Context::new(["t", "x"], ["theta"]).unwrap();
        let proj = Morphism::new(&src, &m, vec![SuperPoly::named(&src, "x").unwrap()]).unwrap();
        let rho = law.infinitesimal_action(&proj, &law.basis_vector(Var::Odd(0)).unwrap()).unwrap();
        assert!(rho.is_zero());
        let bad = Morphism::new(&m, &m, vec![SuperPoly::named(&m, "x").unwrap()]).unwrap();
        assert!(matches!(law.infinitesimal_action(&bad, &law.basis_vector(Var::Even(0)).unwrap()), Err(Error::MalformedAction(_))));
    }

    #[test]
    fn bracket_at_unit() {
        let law = r11();
        let v = law.basis_vector(Var::Odd(0)).unwrap();
        let b = law.lie_bracket(&v, &v).unwrap();
        assert_eq!(b.components, vec![Rational::from_integer((-2).into()), Rational::zero()]);
    }
}
