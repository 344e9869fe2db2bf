//! Property tests. Each case draws a seed and builds its data with the
//! library's sampler, so failures reproduce from the printed seed.

use std::sync::Arc;

use num::{One, Zero};
use proptest::prelude::*;
use superkit::geometry::{
    differential_at, differential_of_function, Distribution, Morphism, PointedVariety, RationalPoint, TangentVector,
};
use superkit::groups::{commutator_bracket, lie_algebra, pair_context, GroupLaw, MatrixGroupSpec};
use superkit::random::Sampler;
use superkit::script::json::{from_json, to_json};
use superkit::script::{parse_expr, parse_poly, run, RunOptions, Value};
use superkit::{Context, Parity, Rational, SuperDerivation, SuperDim, SuperMatrix, SuperPoly, Var};

fn sign(a: Parity, b: Parity) -> Rational {
    if a.koszul_negative(b) {
        -Rational::one()
    } else {
        Rational::one()
    }
}

fn ctx() -> Arc<Context> {
    Context::new(["t", "s"], ["theta1", "theta2", "theta3"]).unwrap()
}

fn grassmann(n: usize) -> Arc<Context> {
    Context::new(Vec::<String>::new(), (1..=n).map(|i| format!("theta{i}"))).unwrap()
}

fn sampler(seed: u64) -> Sampler {
    let mut s = Sampler::new(seed);
    s.max_degree = 2;
    s
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn translation_law() -> GroupLaw {
    let g = Context::new(["t"], ["theta"]).unwrap();
    let pair = pair_context(&g).unwrap();
    let mu = ["t + t' + theta*theta'", "theta + theta'"].iter().map(|s| parse_poly(s, &pair).unwrap()).collect();
    let inv = ["-t", "-theta"].iter().map(|s| parse_poly(s, &g).unwrap()).collect();
    GroupLaw::new(
        Morphism::new(&pair, &g, mu).unwrap(),
        RationalPoint::from_ints(&[0]),
        Some(Morphism::new(&g, &g, inv).unwrap()),
    )
    .unwrap()
}

fn tangent(s: &mut Sampler, parity: Parity) -> TangentVector {
    let (e, o) = if parity.is_odd() { (Rational::zero(), s.coefficient()) } else { (s.coefficient(), Rational::zero()) };
    TangentVector { parity, components: vec![e, o] }
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn sign_rule(seed in any::<u64>()) {
        let c = ctx();
        let mut s = sampler(seed);
        let (p, q) = (s.parity(), s.parity());
        let (a, b) = (s.element(&c, p), s.element(&c, q));
        prop_assert_eq!(&a * &b, (&b * &a).scale(&sign(p, q)));
    }

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let c = ctx();
        let mut s = sampler(seed);
        let [a, b, d] = [0, 1, 2].map(|_| { let p = s.parity(); s.element(&c, p) });
        prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
        prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
        prop_assert_eq!(&a * &SuperPoly::one(&c), a.clone());
        prop_assert_eq!((&a * &b).body(), &a.body() * &b.body());
    }

    #[test]
    fn graded_leibniz(seed in any::<u64>()) {
        let c = ctx();
        let mut s = sampler(seed);
        let (pd, pa, pb) = (s.parity(), s.parity(), s.parity());
        let d = s.derivation(&c, pd);
        let (a, b) = (s.element(&c, pa), s.element(&c, pb));
        let lhs = d.apply(&(&a * &b)).unwrap();
        let rhs = &d.apply(&a).unwrap() * &b + (&a * &d.apply(&b).unwrap()).scale(&sign(pd, pa));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivation_bracket_axioms(seed in any::<u64>()) {
        let c = Context::new(["t"], ["theta1", "theta2"]).unwrap();
        let mut s = sampler(seed);
        let ps = [s.parity(), s.parity(), s.parity()];
        let [x, y, z] = ps.map(|p| s.derivation(&c, p));
        let xy = x.bracket(&y).unwrap();
        prop_assert!(xy.checked_add(&y.bracket(&x).unwrap().scale(&sign(ps[0], ps[1]))).unwrap().is_zero());
        let lhs = x.bracket(&y.bracket(&z).unwrap()).unwrap();
        let rhs = xy.bracket(&z).unwrap()
            .checked_add(&y.bracket(&x.bracket(&z).unwrap()).unwrap().scale(&sign(ps[0], ps[1]))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_text_roundtrips(seed in any::<u64>()) {
        let c = ctx();
        let mut s = sampler(seed);
        let p = s.parity();
        let a = s.element(&c, p);
        let printed = a.to_string();
        prop_assert_eq!(parse_poly(&printed, &c).unwrap(), a);
        let again = parse_expr(&printed).unwrap().to_string();
        prop_assert_eq!(parse_expr(&again).unwrap().to_string(), again);
    }

    #[test]
    fn supertrace_is_cyclic_on_even_pairs(seed in any::<u64>()) {
        let g = grassmann(4);
        let mut s = sampler(seed);
        let d = s.dims(2, 2);
        let (a, b) = (s.matrix(&g, d, d, Parity::Even), s.matrix(&g, d, d, Parity::Even));
        prop_assert_eq!((&a * &b).supertrace().unwrap(), (&b * &a).supertrace().unwrap());
    }

    #[test]
    fn supertrace_kills_brackets(seed in any::<u64>()) {
        let g = grassmann(4);
        let mut s = sampler(seed);
        let d = s.dims(2, 2);
        let (p, q) = (s.parity(), s.parity());
        let (a, b) = (s.matrix(&g, d, d, p), s.matrix(&g, d, d, q));
        prop_assert!(a.superbracket(&b).unwrap().supertrace().unwrap().is_zero());
    }

    #[test]
    fn srank_is_invariant_under_invertible_products(seed in any::<u64>()) {
        let g = grassmann(3);
        let mut s = sampler(seed);
        let d = s.dims(2, 2);
        let m = s.matrix(&g, d, d, Parity::Even);
        let u = s.invertible_matrix(&g, d);
        prop_assert_eq!(superkit::matrix::srank(&(&u * &m)).unwrap(), superkit::matrix::srank(&m).unwrap());
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn berezinian_homomorphism(seed in any::<u64>()) {
        let g = grassmann(6);
        let mut s = sampler(seed);
        let d = s.dims(2, 2);
        let (a, b) = (s.invertible_matrix(&g, d), s.invertible_matrix(&g, d));
        let (ba, bb) = (a.berezinian().unwrap(), b.berezinian().unwrap());
        prop_assert_eq!((&a * &b).berezinian().unwrap(), &ba * &bb);
        prop_assert_eq!(a.berezinian_via_t1().unwrap(), ba.clone());
        prop_assert_eq!(a.invert().unwrap().berezinian().unwrap(), ba.inverse().unwrap());
    }

    #[test]
    fn inverse_and_decomposition(seed in any::<u64>()) {
        let g = grassmann(6);
        let mut s = sampler(seed);
        let d = s.dims(2, 2);
        let a = s.invertible_matrix(&g, d);
        let inv = a.invert().unwrap();
        let id = SuperMatrix::identity(&g, d);
        prop_assert_eq!(&a * &inv, id.clone());
        prop_assert_eq!(&inv * &a, id);
        let f = a.elementary_decomposition().unwrap();
        prop_assert_eq!(&(&f.upper * &f.diagonal) * &f.lower, a);
    }

    #[test]
    fn pullback_is_a_graded_homomorphism(seed in any::<u64>()) {
        let c = ctx();
        let mut s = sampler(seed);
        let phi = s.morphism(&c, &c);
        let (p, q) = (s.parity(), s.parity());
        let (a, b) = (s.element(&c, p), s.element(&c, q));
        prop_assert_eq!(phi.pullback(&(&a + &b)).unwrap(), phi.pullback(&a).unwrap() + phi.pullback(&b).unwrap());
        prop_assert_eq!(phi.pullback(&(&a * &b)).unwrap(), phi.pullback(&a).unwrap() * phi.pullback(&b).unwrap());
        prop_assert_eq!(phi.pullback(&SuperPoly::one(&c)).unwrap(), SuperPoly::one(&c));
        prop_assert!(phi.pullback(&a).unwrap().has_parity(p));
    }

    #[test]
    fn chain_rule(seed in any::<u64>()) {
        let (m, n) = (Context::new(["x"], ["xi1", "xi2"]).unwrap(), ctx());
        let k = Context::new(["u", "v"], ["eta"]).unwrap();
        let mut s = sampler(seed);
        let (phi, psi) = (s.morphism(&m, &n), s.morphism(&n, &k));
        let x = RationalPoint::new(vec![s.coefficient()]);
        let lhs = differential_at(&Morphism::compose(&psi, &phi).unwrap(), &x).unwrap();
        let rhs = &differential_at(&phi, &x).unwrap() * &differential_at(&psi, &phi.image_point(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn differential_is_a_derivation_at_the_point(seed in any::<u64>()) {
        let c = ctx();
        let mut s = sampler(seed);
        let x = RationalPoint::new(vec![s.coefficient(), s.coefficient()]);
        let (p, q) = (s.parity(), s.parity());
        let (f, g) = (s.element(&c, p), s.element(&c, q));
        let d = |h: &SuperPoly| differential_of_function(h, &x).unwrap().coefficients();
        let (fx, gx) = (f.evaluate(&x.values).unwrap(), g.evaluate(&x.values).unwrap());
        let want: Vec<Rational> = d(&f).iter().zip(d(&g)).map(|(df, dg)| &fx * &dg + &gx * df).collect();
        prop_assert_eq!(d(&(&f * &g)), want);
        let sum: Vec<Rational> = d(&f).iter().zip(d(&g)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(d(&(&f + &g)), sum);
    }

    #[test]
    fn tangent_dimension_ignores_generator_basis(seed in any::<u64>()) {
        let c = ctx();
        let mut s = sampler(seed);
        let x = RationalPoint::new(vec![s.coefficient(), s.coefficient()]);
        let mut gens = Vec::new();
        for _ in 0..3 {
            let p = s.parity();
            let g = s.element(&c, p);
            let v = SuperPoly::constant(&c, g.evaluate(&x.values).unwrap());
            gens.push(if p.is_odd() { g } else { g - v });
        }
        // Invertible triangular recombination within each parity class.
        let mut mixed = gens.clone();
        for i in 0..gens.len() {
            mixed[i] = gens[i].scale(&s.nonzero_coefficient());
            for j in i + 1..gens.len() {
                if gens[j].homogeneous_parity().ok() == gens[i].homogeneous_parity().ok() {
                    mixed[i] += &gens[j].scale(&s.coefficient());
                }
            }
        }
        let dim = |gs: Vec<SuperPoly>| PointedVariety::new(&c, gs, x.clone()).unwrap().tangent_space().unwrap().dimension;
        prop_assert_eq!(dim(gens), dim(mixed));
    }

    #[test]
    fn involutivity_ignores_order(seed in any::<u64>()) {
        let c = Context::new(["t1", "t2"], ["theta1", "theta2"]).unwrap();
        let mut s = Sampler::new(seed);
        s.max_degree = 1;
        let n = 1 + s.below(3);
        let fields: Vec<SuperDerivation> = (0..n).map(|_| { let p = s.parity(); s.derivation(&c, p) }).collect();
        prop_assume!(fields.iter().all(|f| !f.is_zero()));
        let verdict = |fs: Vec<SuperDerivation>| Distribution::new(fs).unwrap().involutive().unwrap();
        let mut rotated = fields.clone();
        rotated.rotate_left(1);
        let reversed: Vec<_> = fields.iter().rev().cloned().collect();
        let v = verdict(fields);
        prop_assert_eq!(verdict(rotated), v);
        prop_assert_eq!(verdict(reversed), v);
    }

    #[test]
    fn left_invariant_fields_form_a_subalgebra(seed in any::<u64>()) {
        let law = translation_law();
        let mut s = sampler(seed);
        let (p, q) = (s.parity(), s.parity());
        let (v, w) = (tangent(&mut s, p), tangent(&mut s, q));
        let (fv, fw) = (law.left_invariant_field(&v).unwrap(), law.left_invariant_field(&w).unwrap());
        prop_assert_eq!(law.value_at_unit(&fv, p).unwrap(), v.clone());
        prop_assert!(law.is_left_invariant(&fv).unwrap());
        prop_assert!(law.is_left_invariant(&fv.bracket(&fw).unwrap()).unwrap());
    }

    #[test]
    fn action_is_an_anti_morphism(seed in any::<u64>()) {
        let law = translation_law();
        let mut s = sampler(seed);
        let (p, q) = (s.parity(), s.parity());
        let (v, w) = (tangent(&mut s, p), tangent(&mut s, q));
        let rho = |x: &TangentVector| law.infinitesimal_action(law.mu(), x).unwrap();
        let lhs = rho(&law.lie_bracket(&v, &w).unwrap());
        let rhs = rho(&v).bracket(&rho(&w)).unwrap().scale(&-Rational::one());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_bracket_axioms(seed in any::<u64>()) {
        let g = grassmann(8);
        let mut s = Sampler::new(seed);
        let d = s.dims(2, 1);
        // Even matrices over the generators the commutator leaves free.
        let free = grassmann(4);
        let lift = |m: SuperMatrix| {
            let e = m.entries().iter().map(|p| p.reindex(&g, |i| i, |j| j + 4)).collect();
            SuperMatrix::new(&g, d, d, Parity::Even, e).unwrap()
        };
        let [a, b, c] = [0, 1, 2].map(|_| lift(s.matrix(&free, d, d, Parity::Even)));
        let ab = commutator_bracket(&a, &b).unwrap();
        prop_assert_eq!(&ab + &commutator_bracket(&b, &a).unwrap(), SuperMatrix::zero(&g, d, d, Parity::Even));
        let jac = &(&commutator_bracket(&a, &commutator_bracket(&b, &c).unwrap()).unwrap()
            + &commutator_bracket(&b, &commutator_bracket(&c, &a).unwrap()).unwrap())
            + &commutator_bracket(&c, &ab).unwrap();
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn json_roundtrip(seed in any::<u64>()) {
        let c = ctx();
        let mut s = sampler(seed);
        let d = s.dims(2, 2);
        let p = s.parity();
        let values = [
            Value::Poly(s.element(&c, p)),
            Value::Matrix(s.matrix(&c, d, d, p)),
            Value::Field(s.derivation(&c, p)),
            Value::Morphism(s.morphism(&c, &c)),
        ];
        for v in values {
            prop_assert_eq!(from_json(&to_json(&v)).unwrap(), v);
        }
    }
}

#[test]
fn sl_constraints_are_the_supertrace_kernel() {
    for m in 0..=2 {
        for n in 0..=2 {
            if m + n == 0 {
                continue;
            }
            let d = SuperDim::new(m, n);
            let la = lie_algebra(&MatrixGroupSpec::sl(d)).unwrap();
            let total = la.symbols.len();
            // Basis vectors x_k: inside the kernel exactly when they avoid
            // the diagonal, and p_ii - s_jj, p_ii - p_jj lie in it too.
            let unit = |name: &str| -> Vec<Rational> {
                la.symbols.iter().map(|s| if s == name { Rational::one() } else { Rational::zero() }).collect()
            };
            let diag: Vec<String> = (1..=m).map(|i| format!("p{i}{i}")).chain((1..=n).map(|j| format!("s{j}{j}"))).collect();
            for sym in &la.symbols {
                prop_assert_in_kernel(&la, &unit(sym), !diag.contains(sym));
            }
            for a in &diag {
                for b in &diag {
                    let same_block = a.starts_with('p') == b.starts_with('p');
                    let mut v = unit(a);
                    let w = unit(b);
                    for k in 0..total {
                        v[k] = if same_block { &v[k] - &w[k] } else { &v[k] + &w[k] };
                    }
                    assert!(la.satisfied_by(&v), "{a} and {b} in sl({m}|{n})");
                }
            }
            let gl = lie_algebra(&MatrixGroupSpec::gl(d)).unwrap();
            assert_eq!(gl.dimension(), SuperDim::new(m * m + n * n, 2 * m * n));
            assert_eq!(la.dimension(), SuperDim::new(m * m + n * n - 1, 2 * m * n));
        }
    }
}

fn prop_assert_in_kernel(la: &superkit::groups::LieAlgebra, v: &[Rational], expected: bool) {
    assert_eq!(la.satisfied_by(v), expected, "{:?}", la.render_constraints());
}

#[test]
fn translation_fields_structure() {
    let law = translation_law();
    let v1 = law.left_invariant_field(&law.basis_vector(Var::Even(0)).unwrap()).unwrap();
    let v2 = law.left_invariant_field(&law.basis_vector(Var::Odd(0)).unwrap()).unwrap();
    assert_eq!(v2.bracket(&v2).unwrap(), v1.scale(&Rational::from_integer((-2).into())));
    assert!(v1.bracket(&v2).unwrap().is_zero());
}

#[test]
fn identical_scripts_give_identical_reports() {
    let text = include_str!("../examples/scripts/golden.sk");
    let opts = RunOptions { keep_going: false, seed: 7 };
    assert_eq!(run(text, &opts), run(text, &opts));
}
