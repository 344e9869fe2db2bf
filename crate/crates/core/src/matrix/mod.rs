//! Block supermatrices over [`SuperPoly`] entries.
//!
//! A matrix `A^{p|q} -> A^{r|s}` has `r + s` rows and `p + q` columns, even
//! rows/columns first:
//!
//! ```text
//!     | T1  T2 |    T1: r x p    T2: r x q
//! T = |        |
//!     | T3  T4 |    T3: s x p    T4: s x q
//! ```
//!
//! For an even matrix `T1`, `T4` hold even entries and `T2`, `T3` odd ones;
//! an odd matrix reverses this.

mod berezinian;
pub mod linalg;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grassmann::{ensure_same, Context, Parity, Rational, SuperPoly};

pub use berezinian::{srank, ElementaryFactors};

/// Superdimension `p|q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SuperDim {
    pub even: usize,
    pub odd: usize,
}

impl SuperDim {
    pub const fn new(even: usize, odd: usize) -> Self {
        SuperDim { even, odd }
    }

    pub fn total(self) -> usize {
        self.even + self.odd
    }

    /// Parity reversal: `(Pi V)_0 = V_1`.
    pub fn pi_reverse(self) -> Self {
        SuperDim { even: self.odd, odd: self.even }
    }

    pub fn parity_of(self, index: usize) -> Parity {
        if index < self.even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

pub fn pi_reverse(d: SuperDim) -> SuperDim {
    d.pi_reverse()
}

impl fmt::Display for SuperDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.even, self.odd)
    }
}

impl FromStr for SuperDim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::DimensionMismatch(format!("malformed superdimension `{s}`"));
        let (a, b) = s.split_once('|').ok_or_else(bad)?;
        Ok(SuperDim {
            even: a.trim().parse().map_err(|_| bad())?,
            odd: b.trim().parse().map_err(|_| bad())?,
        })
    }
}

/// One of the four blocks of a supermatrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    T1,
    T2,
    T3,
    T4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperMatrix {
    ctx: Arc<Context>,
    source: SuperDim,
    target: SuperDim,
    parity: Parity,
    entries: Vec<SuperPoly>,
}

impl SuperMatrix {
    /// Homogeneous matrix of the declared parity; entries row-major.
    pub fn new(
        ctx: &Arc<Context>,
        source: SuperDim,
        target: SuperDim,
        parity: Parity,
        entries: Vec<SuperPoly>,
    ) -> Result<Self> {
        if entries.len() != source.total() * target.total() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {source} -> {target} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            ensure_same(e.context(), ctx)?;
        }
        let m = SuperMatrix { ctx: ctx.clone(), source, target, parity, entries };
        if let Some((i, j)) = m.first_parity_violation(parity) {
            return Err(Error::ParityViolation(format!(
                "entry ({i},{j}) = `{}` does not fit a {parity} matrix",
                m.get(i, j)
            )));
        }
        Ok(m)
    }

    /// Matrix whose parity is inferred from its entries (even when both fit).
    pub fn from_entries(
        ctx: &Arc<Context>,
        source: SuperDim,
        target: SuperDim,
        entries: Vec<SuperPoly>,
    ) -> Result<Self> {
        match Self::new(ctx, source, target, Parity::Even, entries.clone()) {
            Ok(m) => Ok(m),
            Err(Error::ParityViolation(_)) => Self::new(ctx, source, target, Parity::Odd, entries)
                .map_err(|_| Error::ParityViolation("entries fit neither an even nor an odd matrix".into())),
            Err(e) => Err(e),
        }
    }

    pub fn from_rationals(ctx: &Arc<Context>, source: SuperDim, target: SuperDim, values: &[Rational]) -> Result<Self> {
        let entries = values.iter().map(|v| SuperPoly::constant(ctx, v.clone())).collect();
        Self::new(ctx, source, target, Parity::Even, entries)
    }

    pub fn zero(ctx: &Arc<Context>, source: SuperDim, target: SuperDim, parity: Parity) -> Self {
        SuperMatrix {
            ctx: ctx.clone(),
            source,
            target,
            parity,
            entries: vec![SuperPoly::zero(ctx); source.total() * target.total()],
        }
    }

    pub fn identity(ctx: &Arc<Context>, dim: SuperDim) -> Self {
        let mut m = Self::zero(ctx, dim, dim, Parity::Even);
        for i in 0..dim.total() {
            m.entries[i * dim.total() + i] = SuperPoly::one(ctx);
        }
        m
    }

    fn first_parity_violation(&self, parity: Parity) -> Option<(usize, usize)> {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let want = parity + self.target.parity_of(i) + self.source.parity_of(j);
                if !self.get(i, j).has_parity(want) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn source(&self) -> SuperDim {
        self.source
    }

    pub fn target(&self) -> SuperDim {
        self.target
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn rows(&self) -> usize {
        self.target.total()
    }

    pub fn cols(&self) -> usize {
        self.source.total()
    }

    pub fn get(&self, i: usize, j: usize) -> &SuperPoly {
        &self.entries[i * self.cols() + j]
    }

    pub fn entries(&self) -> &[SuperPoly] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.source == self.target
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(SuperPoly::is_zero)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare(format!("{} -> {}", self.source, self.target)))
        }
    }

    /// Row and column ranges of a block together with its dimensions as a
    /// standalone matrix.
    fn block_layout(&self, b: Block) -> (usize, usize, SuperDim, SuperDim) {
        let (r, s) = (self.target.even, self.target.odd);
        let (p, q) = (self.source.even, self.source.odd);
        match b {
            Block::T1 => (0, 0, SuperDim::new(p, 0), SuperDim::new(r, 0)),
            Block::T2 => (0, p, SuperDim::new(0, q), SuperDim::new(r, 0)),
            Block::T3 => (r, 0, SuperDim::new(p, 0), SuperDim::new(0, s)),
            Block::T4 => (r, p, SuperDim::new(0, q), SuperDim::new(0, s)),
        }
    }

    /// A block as a matrix in its own right; it keeps the parity of `self`.
    pub fn block(&self, b: Block) -> SuperMatrix {
        let (r0, c0, src, tgt) = self.block_layout(b);
        let entries = (0..tgt.total())
            .flat_map(|i| (0..src.total()).map(move |j| (i, j)))
            .map(|(i, j)| self.get(r0 + i, c0 + j).clone())
            .collect();
        SuperMatrix { ctx: self.ctx.clone(), source: src, target: tgt, parity: self.parity, entries }
    }

    /// Assemble an `(p|q) -> (r|s)` matrix from four blocks.
    pub fn from_blocks(t1: &SuperMatrix, t2: &SuperMatrix, t3: &SuperMatrix, t4: &SuperMatrix) -> Result<Self> {
        let (r, p) = (t1.rows(), t1.cols());
        let (s, q) = (t4.rows(), t4.cols());
        if t2.rows() != r || t2.cols() != q || t3.rows() != s || t3.cols() != p {
            return Err(Error::DimensionMismatch("blocks do not tile a matrix".into()));
        }
        let ctx = &t1.ctx;
        let mut entries = Vec::with_capacity((r + s) * (p + q));
        for i in 0..r + s {
            for j in 0..p + q {
                let e = match (i < r, j < p) {
                    (true, true) => t1.get(i, j),
                    (true, false) => t2.get(i, j - p),
                    (false, true) => t3.get(i - r, j),
                    (false, false) => t4.get(i - r, j - p),
                };
                entries.push(e.clone());
            }
        }
        Self::from_entries(ctx, SuperDim::new(p, q), SuperDim::new(r, s), entries)
    }

    pub fn matmul(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        ensure_same(&self.ctx, &other.ctx)?;
        if self.source != other.target {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose ({} -> {}) after ({} -> {})",
                self.source, self.target, other.source, other.target
            )));
        }
        let n = self.cols();
        let mut entries = Vec::with_capacity(self.rows() * other.cols());
        for i in 0..self.rows() {
            for j in 0..other.cols() {
                let mut acc = SuperPoly::zero(&self.ctx);
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(SuperMatrix {
            ctx: self.ctx.clone(),
            source: other.source,
            target: self.target,
            parity: self.parity + other.parity,
            entries,
        })
    }

    fn zip_with(&self, other: &SuperMatrix, f: impl Fn(&SuperPoly, &SuperPoly) -> SuperPoly) -> Result<SuperMatrix> {
        ensure_same(&self.ctx, &other.ctx)?;
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("shapes differ".into()));
        }
        let entries: Vec<SuperPoly> = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        if self.parity == other.parity {
            Ok(SuperMatrix { entries, ..self.clone() })
        } else {
            Self::from_entries(&self.ctx, self.source, self.target, entries)
        }
    }

    pub fn checked_add(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> SuperMatrix {
        SuperMatrix { entries: self.entries.iter().map(|e| e.scale(c)).collect(), ..self.clone() }
    }

    /// `f * self` for a homogeneous ring element `f`.
    pub fn scalar_mul(&self, f: &SuperPoly) -> Result<SuperMatrix> {
        ensure_same(&self.ctx, f.context())?;
        let pf = f.homogeneous_parity()?;
        Ok(SuperMatrix {
            entries: self.entries.iter().map(|e| f * e).collect(),
            parity: self.parity + pf,
            ..self.clone()
        })
    }

    /// Super commutator `[A, B] = AB - (-1)^{|A||B|} BA`.
    pub fn superbracket(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        let ab = self.matmul(other)?;
        let ba = other.matmul(self)?;
        if self.parity.koszul_negative(other.parity) {
            ab.checked_add(&ba)
        } else {
            ab.checked_sub(&ba)
        }
    }

    /// Supertrace: `tr T1 - tr T4` for even matrices, `tr S1 + tr S4` for odd.
    pub fn supertrace(&self) -> Result<SuperPoly> {
        self.require_square()?;
        let mut acc = SuperPoly::zero(&self.ctx);
        for i in 0..self.rows() {
            let d = self.get(i, i);
            if i >= self.target.even && self.parity == Parity::Even {
                acc -= d;
            } else {
                acc += d;
            }
        }
        Ok(acc)
    }

    /// Supertranspose of an even matrix: `[[A, B], [C, D]] -> [[A^t, C^t], [-B^t, D^t]]`.
    ///
    /// With this sign choice `(XY)^st = Y^st X^st` for even `X`, `Y`.
    pub fn supertranspose(&self) -> Result<SuperMatrix> {
        if self.parity != Parity::Even {
            return Err(Error::Unsupported("supertranspose of an odd matrix".into()));
        }
        let (src, tgt) = (self.target, self.source);
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..tgt.total() {
            for j in 0..src.total() {
                let e = self.get(j, i);
                // new (i, j) takes old (j, i); the old B block lands in the
                // odd-row, even-column corner and picks up a sign.
                let negate = tgt.parity_of(i) == Parity::Odd && src.parity_of(j) == Parity::Even;
                let e = e.clone();
                entries.push(if negate { -e } else { e });
            }
        }
        Ok(SuperMatrix { ctx: self.ctx.clone(), source: src, target: tgt, parity: Parity::Even, entries })
    }

    /// Body of every entry, as a matrix over the same context.
    pub fn body(&self) -> SuperMatrix {
        SuperMatrix { entries: self.entries.iter().map(SuperPoly::body).collect(), ..self.clone() }
    }

    /// Entries as rationals, when every entry is constant.
    pub fn constant_entries(&self) -> Option<Vec<Rational>> {
        self.entries.iter().map(SuperPoly::as_constant).collect()
    }

    /// Rows rendered as `[[a, b], [c, d]]`.
    pub fn render_rows(&self) -> String {
        let rows: Vec<String> = (0..self.rows())
            .map(|i| {
                let cells: Vec<String> = (0..self.cols()).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }

    /// Literal used by session scripts: `dims p|q -> r|s rows [[...]]`.
    pub fn to_literal(&self) -> String {
        format!("dims {} -> {} rows {}", self.source, self.target, self.render_rows())
    }
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_rows())
    }
}

impl Add<&SuperMatrix> for &SuperMatrix {
    type Output = SuperMatrix;
    fn add(self, rhs: &SuperMatrix) -> SuperMatrix {
        self.checked_add(rhs).expect("incompatible matrices")
    }
}

impl Sub<&SuperMatrix> for &SuperMatrix {
    type Output = SuperMatrix;
    fn sub(self, rhs: &SuperMatrix) -> SuperMatrix {
        self.checked_sub(rhs).expect("incompatible matrices")
    }
}

impl Mul<&SuperMatrix> for &SuperMatrix {
    type Output = SuperMatrix;
    fn mul(self, rhs: &SuperMatrix) -> SuperMatrix {
        self.matmul(rhs).expect("incompatible matrices")
    }
}

impl Neg for &SuperMatrix {
    type Output = SuperMatrix;
    fn neg(self) -> SuperMatrix {
        SuperMatrix { entries: self.entries.iter().map(|e| -e).collect(), ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::q;

    fn ctx() -> Arc<Context> {
        Context::new(["t"], ["theta1", "theta2", "theta3", "theta4"]).unwrap()
    }

    fn p(c: &Arc<Context>, n: &str) -> SuperPoly {
        SuperPoly::named(c, n).unwrap()
    }

    fn one_one(c: &Arc<Context>, e: [SuperPoly; 4]) -> SuperMatrix {
        SuperMatrix::from_entries(c, SuperDim::new(1, 1), SuperDim::new(1, 1), e.to_vec()).unwrap()
    }

    #[test]
    fn block_parity_is_enforced() {
        let c = ctx();
        let th = p(&c, "theta1");
        let bad = SuperMatrix::new(
            &c,
            SuperDim::new(1, 1),
            SuperDim::new(1, 1),
            Parity::Even,
            vec![th.clone(), th.clone(), th.clone(), th],
        );
        assert!(matches!(bad, Err(Error::ParityViolation(_))));
        let odd = SuperMatrix::from_entries(
            &c,
            SuperDim::new(1, 1),
            SuperDim::new(1, 1),
            vec![p(&c, "theta1"), SuperPoly::one(&c), SuperPoly::zero(&c), p(&c, "theta2")],
        )
        .unwrap();
        assert_eq!(odd.parity(), Parity::Odd);
    }

    #[test]
    fn identity_is_neutral_and_square_example() {
        let c = ctx();
        let one = SuperPoly::one(&c);
        let a = one_one(&c, [one.clone(), p(&c, "theta1"), p(&c, "theta2"), one]);
        let id = SuperMatrix::identity(&c, SuperDim::new(1, 1));
        assert_eq!(&id * &a, a);
        let sq = &a * &a;
        assert_eq!(sq.render_rows(), "[[1 + theta1*theta2, 2*theta1], [2*theta2, 1 - theta1*theta2]]");
    }

    #[test]
    fn supertrace_examples() {
        let c = ctx();
        for (pp, qq) in [(0, 0), (2, 1), (1, 3), (4, 4)] {
            let id = SuperMatrix::identity(&c, SuperDim::new(pp, qq));
            assert_eq!(id.supertrace().unwrap().as_constant(), Some(q(pp as i64 - qq as i64)));
        }
        let z = SuperPoly::zero(&c);
        let m = one_one(&c, [SuperPoly::int(&c, 2), z.clone(), z, SuperPoly::int(&c, 3)]);
        assert_eq!(m.supertrace().unwrap().as_constant(), Some(q(-1)));
        let rect = SuperMatrix::zero(&c, SuperDim::new(1, 0), SuperDim::new(2, 0), Parity::Even);
        assert!(matches!(rect.supertrace(), Err(Error::NotSquare(_))));
    }

    #[test]
    fn blocks_roundtrip() {
        let c = ctx();
        let a = one_one(&c, [SuperPoly::int(&c, 2), p(&c, "theta1"), p(&c, "theta2"), SuperPoly::one(&c)]);
        let back = SuperMatrix::from_blocks(&a.block(Block::T1), &a.block(Block::T2), &a.block(Block::T3), &a.block(Block::T4)).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn supertranspose_reverses_products() {
        let c = ctx();
        let (t1, t2, t3, t4) = (p(&c, "theta1"), p(&c, "theta2"), p(&c, "theta3"), p(&c, "theta4"));
        let x = one_one(&c, [SuperPoly::int(&c, 2) + &t1 * &t2, t3.clone(), t4.clone(), p(&c, "t")]);
        let y = one_one(&c, [p(&c, "t"), t1.clone() + t4, t2 - t3, SuperPoly::int(&c, -1)]);
        let lhs = (&x * &y).supertranspose().unwrap();
        let rhs = &y.supertranspose().unwrap() * &x.supertranspose().unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dims_parse_and_reverse() {
        let d: SuperDim = "2|3".parse().unwrap();
        assert_eq!(d.pi_reverse(), SuperDim::new(3, 2));
        assert_eq!(pi_reverse(SuperDim::new(0, 0)), SuperDim::new(0, 0));
        assert!("2,3".parse::<SuperDim>().is_err());
    }
}
