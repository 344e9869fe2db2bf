//! Seeded generators of random test data.
//!
//! Everything is driven by a ChaCha stream, so a seed reproduces the same
//! values on every platform.

use std::sync::Arc;

use num::{BigInt, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::Morphism;
use crate::grassmann::{Context, Monomial, Parity, Rational, SuperDerivation, SuperPoly};
use crate::matrix::{Block, SuperDim, SuperMatrix};

pub struct Sampler {
    rng: ChaCha8Rng,
    /// Upper bound on the number of terms of a random polynomial.
    pub max_terms: usize,
    /// Upper bound on the even degree of a random monomial.
    pub max_degree: u32,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), max_terms: 3, max_degree: 1 }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// A rational `a/b` in `[-5, 5]` with `b` in `1..=3`.
    pub fn coefficient(&mut self) -> Rational {
        let b: i64 = self.rng.gen_range(1..=3);
        let a: i64 = self.rng.gen_range(-5 * b..=5 * b);
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    pub fn nonzero_coefficient(&mut self) -> Rational {
        loop {
            let c = self.coefficient();
            if !c.is_zero() {
                return c;
            }
        }
    }

    /// Random monomial whose odd part has the requested parity.
    pub fn monomial(&mut self, ctx: &Context, parity: Parity) -> Option<Monomial> {
        let n = ctx.n_odd();
        for _ in 0..32 {
            let odd: Vec<usize> = (0..n).filter(|_| self.rng.gen_bool(0.3)).collect();
            if (odd.len() % 2 == 1) != parity.is_odd() {
                continue;
            }
            let mut even = Vec::new();
            if ctx.n_even() > 0 && self.max_degree > 0 {
                let mut left = self.rng.gen_range(0..=self.max_degree);
                while left > 0 {
                    let i = self.rng.gen_range(0..ctx.n_even());
                    let e = self.rng.gen_range(1..=left);
                    even.push((i, e));
                    left -= e;
                }
            }
            return Monomial::from_parts(&even, &odd).map(|(_, m)| m);
        }
        None
    }

    /// Homogeneous polynomial of the given parity (possibly zero).
    pub fn element(&mut self, ctx: &Arc<Context>, parity: Parity) -> SuperPoly {
        let n_terms = self.rng.gen_range(0..=self.max_terms);
        let mut p = SuperPoly::zero(ctx);
        for _ in 0..n_terms {
            if let Some(m) = self.monomial(ctx, parity) {
                let c = self.coefficient();
                p += &SuperPoly::term(ctx, m, c);
            }
        }
        p
    }

    /// Even element with a nonzero constant body.
    pub fn unit_element(&mut self, ctx: &Arc<Context>) -> SuperPoly {
        let soul = self.element(ctx, Parity::Even).soul();
        SuperPoly::constant(ctx, self.nonzero_coefficient()) + soul
    }

    pub fn dims(&mut self, max_even: usize, max_odd: usize) -> SuperDim {
        loop {
            let d = SuperDim::new(self.rng.gen_range(0..=max_even), self.rng.gen_range(0..=max_odd));
            if d.total() > 0 {
                return d;
            }
        }
    }

    pub fn matrix(&mut self, ctx: &Arc<Context>, source: SuperDim, target: SuperDim, parity: Parity) -> SuperMatrix {
        let mut entries = Vec::with_capacity(source.total() * target.total());
        for i in 0..target.total() {
            for j in 0..source.total() {
                entries.push(self.element(ctx, parity + target.parity_of(i) + source.parity_of(j)));
            }
        }
        SuperMatrix::new(ctx, source, target, parity, entries).expect("entries built with block parities")
    }

    /// Even matrix whose diagonal blocks have invertible constant bodies.
    pub fn invertible_matrix(&mut self, ctx: &Arc<Context>, dims: SuperDim) -> SuperMatrix {
        loop {
            let mut m = self.matrix(ctx, dims, dims, Parity::Even);
            let n = dims.total();
            let mut entries = m.entries().to_vec();
            for i in 0..n {
                for j in 0..n {
                    if dims.parity_of(i) == dims.parity_of(j) {
                        let c = SuperPoly::constant(ctx, self.coefficient());
                        entries[i * n + j] = c + entries[i * n + j].soul();
                    }
                }
            }
            m = SuperMatrix::new(ctx, dims, dims, Parity::Even, entries).expect("even entries on diagonal blocks");
            let body = m.body();
            let ok = [Block::T1, Block::T4].iter().all(|&b| {
                body.block(b).det().ok().and_then(|d| d.as_constant()).is_some_and(|d| !d.is_zero())
            });
            if ok {
                return m;
            }
        }
    }

    /// Matrix with rational entries only, homogeneous of the given parity.
    pub fn rational_matrix(&mut self, ctx: &Arc<Context>, dims: SuperDim, parity: Parity) -> SuperMatrix {
        let mut entries = Vec::with_capacity(dims.total() * dims.total());
        for i in 0..dims.total() {
            for j in 0..dims.total() {
                let fits = parity + dims.parity_of(i) + dims.parity_of(j) == Parity::Even;
                let c = if fits { self.coefficient() } else { Rational::zero() };
                entries.push(SuperPoly::constant(ctx, c));
            }
        }
        SuperMatrix::new(ctx, dims, dims, parity, entries).expect("rational entries on allowed blocks")
    }

    /// Homogeneous vector field with random coefficients.
    pub fn derivation(&mut self, ctx: &Arc<Context>, parity: Parity) -> SuperDerivation {
        let even = (0..ctx.n_even()).map(|_| self.element(ctx, parity)).collect();
        let odd = (0..ctx.n_odd()).map(|_| self.element(ctx, parity + Parity::Odd)).collect();
        SuperDerivation::new(ctx, parity, even, odd).expect("coefficients built with matching parities")
    }

    /// Morphism with random images of the right parities.
    pub fn morphism(&mut self, source: &Arc<Context>, target: &Arc<Context>) -> Morphism {
        let images = target
            .vars()
            .map(|v| self.element(source, if v.is_odd() { Parity::Odd } else { Parity::Even }))
            .collect();
        Morphism::new(source, target, images).expect("images built with matching parities")
    }

    pub fn parity(&mut self) -> Parity {
        if self.rng.gen_bool(0.5) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}
