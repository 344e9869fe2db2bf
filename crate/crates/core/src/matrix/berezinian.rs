use num::Zero;

use super::linalg::{det_commuting, invert_rational, rank};
use super::{Block, SuperDim, SuperMatrix};
use crate::error::{Error, Result};
use crate::grassmann::{Parity, Rational, SuperPoly};

/// `T = upper * diagonal * lower` with unitriangular outer factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryFactors {
    pub upper: SuperMatrix,
    pub diagonal: SuperMatrix,
    pub lower: SuperMatrix,
}

impl SuperMatrix {
    fn require_even_square(&self, what: &str) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare(format!("{what}: {} -> {}", self.source, self.target)));
        }
        if self.parity != Parity::Even {
            return Err(Error::Unsupported(format!("{what} of an odd matrix")));
        }
        Ok(())
    }

    /// Ordinary determinant of a square matrix with even entries only
    /// (a `p|0` or `0|q` block of an even matrix).
    pub fn det(&self) -> Result<SuperPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare(format!("{} -> {}", self.source, self.target)));
        }
        if let Some(e) = self.entries.iter().find(|e| !e.has_parity(Parity::Even)) {
            return Err(Error::ParityViolation(format!("det needs commuting entries, found `{e}`")));
        }
        let n = self.rows();
        Ok(det_commuting(&self.ctx, n, |i, j| self.get(i, j).clone()))
    }

    /// Two-sided inverse of an even square matrix.
    ///
    /// Splits `T = B (I + N)` with `B` the body matrix, inverts `B` exactly,
    /// and sums the terminating series `sum (-N)^k`.
    pub fn invert(&self) -> Result<SuperMatrix> {
        self.require_even_square("inverse")?;
        let body = self.body();
        let b1 = invert_body_block(&body.block(Block::T1))?;
        let b4 = invert_body_block(&body.block(Block::T4))?;
        let (p, q) = (self.source.even, self.source.odd);
        let off_upper = SuperMatrix::zero(&self.ctx, SuperDim::new(0, q), SuperDim::new(p, 0), Parity::Even);
        let off_lower = SuperMatrix::zero(&self.ctx, SuperDim::new(p, 0), SuperDim::new(0, q), Parity::Even);
        let body_inv = SuperMatrix::from_blocks(&b1, &off_upper, &off_lower, &b4)?;
        let nil = body_inv.matmul(&self.checked_sub(&body)?)?;
        let id = SuperMatrix::identity(&self.ctx, self.source);
        let mut acc = id.clone();
        let mut power = id;
        loop {
            power = -&power.matmul(&nil)?;
            if power.is_zero() {
                break;
            }
            acc = acc.checked_add(&power)?;
        }
        acc.matmul(&body_inv)
    }

    /// Berezinian, through `T4` when it is invertible and through `T1`
    /// otherwise.
    pub fn berezinian(&self) -> Result<SuperPoly> {
        self.require_even_square("Berezinian")?;
        match self.berezinian_via_t4() {
            Err(Error::NotInvertible(_)) => match self.berezinian_via_t1() {
                Err(Error::NotInvertible(_)) => Err(Error::NeitherBlockInvertible),
                other => other,
            },
            other => other,
        }
    }

    /// `det(T1 - T2 T4^{-1} T3) det(T4)^{-1}`.
    pub fn berezinian_via_t4(&self) -> Result<SuperPoly> {
        self.require_even_square("Berezinian")?;
        let t4 = self.block(Block::T4);
        let t4_inv = t4.invert()?;
        let schur = self
            .block(Block::T1)
            .checked_sub(&self.block(Block::T2).matmul(&t4_inv)?.matmul(&self.block(Block::T3))?)?;
        Ok(schur.det()? * t4.det()?.inverse()?)
    }

    /// `det(T1) det(T4 - T3 T1^{-1} T2)^{-1}`.
    pub fn berezinian_via_t1(&self) -> Result<SuperPoly> {
        self.require_even_square("Berezinian")?;
        let t1 = self.block(Block::T1);
        let t1_inv = t1.invert()?;
        let schur = self
            .block(Block::T4)
            .checked_sub(&self.block(Block::T3).matmul(&t1_inv)?.matmul(&self.block(Block::T2))?)?;
        let schur_det = schur.det()?;
        let inv = schur_det.inverse()?;
        Ok(t1.det()? * inv)
    }

    /// Factor `T = T+ T0 T-` with `X = T2 T4^{-1}`, `Y1 = T1 - T2 T4^{-1} T3`,
    /// `Y2 = T4` and `Z = T4^{-1} T3`.
    pub fn elementary_decomposition(&self) -> Result<ElementaryFactors> {
        self.require_even_square("decomposition")?;
        let (p, q) = (self.source.even, self.source.odd);
        let ctx = &self.ctx;
        let t4 = self.block(Block::T4);
        let t4_inv = t4.invert()?;
        let x = self.block(Block::T2).matmul(&t4_inv)?;
        let z = t4_inv.matmul(&self.block(Block::T3))?;
        let y1 = self.block(Block::T1).checked_sub(&x.matmul(&self.block(Block::T3))?)?;
        let ip = SuperMatrix::identity(ctx, SuperDim::new(p, 0));
        let iq = SuperMatrix::identity(ctx, SuperDim::new(0, q));
        let zero_upper = SuperMatrix::zero(ctx, SuperDim::new(0, q), SuperDim::new(p, 0), Parity::Even);
        let zero_lower = SuperMatrix::zero(ctx, SuperDim::new(p, 0), SuperDim::new(0, q), Parity::Even);
        Ok(ElementaryFactors {
            upper: SuperMatrix::from_blocks(&ip, &x, &zero_lower, &iq)?,
            diagonal: SuperMatrix::from_blocks(&y1, &zero_upper, &zero_lower, &t4)?,
            lower: SuperMatrix::from_blocks(&ip, &zero_upper, &z, &iq)?,
        })
    }
}

/// Inverse of a purely even square block whose determinant is a nonzero
/// constant.
fn invert_body_block(b: &SuperMatrix) -> Result<SuperMatrix> {
    let n = b.rows();
    if n == 0 {
        return Ok(b.clone());
    }
    if let Some(values) = b.constant_entries() {
        let inv = invert_rational(n, &values)
            .ok_or_else(|| Error::NotInvertible(format!("singular body block {}", b.render_rows())))?;
        return SuperMatrix::from_rationals(&b.ctx, b.source, b.target, &inv);
    }
    let det = b.det()?;
    let d = match det.as_constant() {
        Some(d) if !d.is_zero() => d,
        _ => {
            return Err(Error::NotInvertible(format!(
                "body determinant `{det}` is not a nonzero constant"
            )))
        }
    };
    let d_inv = d.recip();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // adj(B)_{ij} = (-1)^{i+j} det(B without row j, column i)
            let minor = det_commuting(&b.ctx, n - 1, |r, c| {
                let rr = if r < j { r } else { r + 1 };
                let cc = if c < i { c } else { c + 1 };
                b.get(rr, cc).clone()
            });
            let cof = if (i + j) % 2 == 0 { minor } else { -minor };
            entries.push(cof.scale(&d_inv));
        }
    }
    SuperMatrix::new(&b.ctx, b.source, b.target, Parity::Even, entries)
}

/// Super rank `rank(T1)|rank(T4)` of an even matrix, computed on the bodies.
pub fn srank(t: &SuperMatrix) -> Result<SuperDim> {
    if t.parity != Parity::Even {
        return Err(Error::Unsupported("rank of an odd matrix".into()));
    }
    let body_rank = |b: SuperMatrix| -> Result<usize> {
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(b.rows());
        for i in 0..b.rows() {
            let mut row = Vec::with_capacity(b.cols());
            for j in 0..b.cols() {
                let body = b.get(i, j).body();
                row.push(body.as_constant().ok_or_else(|| Error::NonConstantBody(body.to_string()))?);
            }
            rows.push(row);
        }
        Ok(rank(&rows))
    };
    Ok(SuperDim::new(body_rank(t.block(Block::T1))?, body_rank(t.block(Block::T4))?))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::grassmann::{q, Context};

    fn ctx() -> Arc<Context> {
        Context::new(["t"], ["theta1", "theta2", "theta3", "theta4"]).unwrap()
    }

    fn p(c: &Arc<Context>, n: &str) -> SuperPoly {
        SuperPoly::named(c, n).unwrap()
    }

    fn example(c: &Arc<Context>) -> SuperMatrix {
        SuperMatrix::from_entries(
            c,
            SuperDim::new(1, 1),
            SuperDim::new(1, 1),
            vec![SuperPoly::int(c, 2), p(c, "theta1"), p(c, "theta2"), SuperPoly::one(c)],
        )
        .unwrap()
    }

    #[test]
    fn scalar_inverse_of_unipotent() {
        let c = ctx();
        let n = &p(&c, "theta1") * &p(&c, "theta2");
        let m = SuperMatrix::new(&c, SuperDim::new(1, 0), SuperDim::new(1, 0), Parity::Even, vec![SuperPoly::one(&c) + &n]).unwrap();
        let inv = m.invert().unwrap();
        assert_eq!(inv.get(0, 0), &(SuperPoly::one(&c) - &n));
    }

    #[test]
    fn inverse_is_two_sided() {
        let c = ctx();
        let m = example(&c);
        let inv = m.invert().unwrap();
        let id = SuperMatrix::identity(&c, SuperDim::new(1, 1));
        assert_eq!(&m * &inv, id);
        assert_eq!(&inv * &m, id);
        assert_eq!(id.invert().unwrap(), id);
    }

    #[test]
    fn polynomial_body_with_constant_determinant() {
        let c = ctx();
        let entries = vec![SuperPoly::one(&c), p(&c, "t"), SuperPoly::zero(&c), SuperPoly::one(&c)];
        let m = SuperMatrix::new(&c, SuperDim::new(2, 0), SuperDim::new(2, 0), Parity::Even, entries).unwrap();
        let inv = m.invert().unwrap();
        assert_eq!(&m * &inv, SuperMatrix::identity(&c, SuperDim::new(2, 0)));
        let t_only = SuperMatrix::new(&c, SuperDim::new(1, 0), SuperDim::new(1, 0), Parity::Even, vec![p(&c, "t")]).unwrap();
        assert!(matches!(t_only.invert(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn berezinian_examples() {
        let c = ctx();
        let z = SuperPoly::zero(&c);
        let diag = SuperMatrix::from_entries(&c, SuperDim::new(1, 1), SuperDim::new(1, 1), vec![SuperPoly::int(&c, 6), z.clone(), z, SuperPoly::int(&c, 3)]).unwrap();
        assert_eq!(diag.berezinian().unwrap().as_constant(), Some(q(2)));
        let m = example(&c);
        let expected = SuperPoly::int(&c, 2) - &p(&c, "theta1") * &p(&c, "theta2");
        assert_eq!(m.berezinian().unwrap(), expected);
        assert_eq!(m.berezinian_via_t1().unwrap(), expected);
    }

    #[test]
    fn printed_alternate_formula_gives_the_reciprocal() {
        // det(T4 - T3 T1^{-1} T2) det(T1)^{-1} evaluates to 1/Ber.
        let c = ctx();
        let m = example(&c);
        let t1 = m.block(Block::T1);
        let schur = m.block(Block::T4).checked_sub(&m.block(Block::T3).matmul(&t1.invert().unwrap()).unwrap().matmul(&m.block(Block::T2)).unwrap()).unwrap();
        let printed = schur.det().unwrap() * t1.det().unwrap().inverse().unwrap();
        assert_eq!(printed, m.berezinian().unwrap().inverse().unwrap());
        assert_ne!(printed, m.berezinian().unwrap());
    }

    #[test]
    fn singular_blocks() {
        let c = ctx();
        let z = SuperPoly::zero(&c);
        let m = SuperMatrix::from_entries(&c, SuperDim::new(1, 1), SuperDim::new(1, 1), vec![z.clone(), p(&c, "theta1"), p(&c, "theta2"), z]).unwrap();
        assert!(matches!(m.berezinian(), Err(Error::NeitherBlockInvertible)));
        let z = SuperPoly::zero(&c);
        let only_t1 = SuperMatrix::from_entries(&c, SuperDim::new(1, 1), SuperDim::new(1, 1), vec![SuperPoly::int(&c, 5), z.clone(), z.clone(), z]).unwrap();
        assert!(matches!(only_t1.berezinian_via_t4(), Err(Error::NotInvertible(_))));
        assert!(matches!(only_t1.berezinian(), Err(Error::NeitherBlockInvertible)));
    }

    #[test]
    fn decomposition_of_example() {
        let c = ctx();
        let m = example(&c);
        let f = m.elementary_decomposition().unwrap();
        assert_eq!(f.upper.get(0, 1), &p(&c, "theta1"));
        assert_eq!(f.diagonal.get(0, 0), &(SuperPoly::int(&c, 2) - &p(&c, "theta1") * &p(&c, "theta2")));
        assert_eq!(f.diagonal.get(1, 1), &SuperPoly::one(&c));
        assert_eq!(f.lower.get(1, 0), &p(&c, "theta2"));
        assert_eq!(&(&f.upper * &f.diagonal) * &f.lower, m);
    }

    #[test]
    fn block_diagonal_decomposes_trivially() {
        let c = ctx();
        let z = SuperPoly::zero(&c);
        let m = SuperMatrix::from_entries(&c, SuperDim::new(1, 1), SuperDim::new(1, 1), vec![SuperPoly::int(&c, 4), z.clone(), z, SuperPoly::int(&c, 7)]).unwrap();
        let f = m.elementary_decomposition().unwrap();
        let id = SuperMatrix::identity(&c, SuperDim::new(1, 1));
        assert_eq!((f.upper, f.diagonal, f.lower), (id.clone(), m, id));
    }

    #[test]
    fn rank_examples() {
        let c = ctx();
        assert_eq!(srank(&SuperMatrix::identity(&c, SuperDim::new(2, 3))).unwrap(), SuperDim::new(2, 3));
        let z = SuperMatrix::zero(&c, SuperDim::new(2, 2), SuperDim::new(2, 2), Parity::Even);
        assert_eq!(srank(&z).unwrap(), SuperDim::new(0, 0));
        let e = |n| SuperPoly::int(&c, n);
        let th = |n| p(&c, n);
        let entries = vec![
            e(1), e(2), th("theta1"), th("theta2"),
            e(2), e(4), th("theta3"), SuperPoly::zero(&c),
            th("theta4"), SuperPoly::zero(&c), e(1), e(0),
            th("theta1"), th("theta2"), e(0), e(1),
        ];
        let m = SuperMatrix::new(&c, SuperDim::new(2, 2), SuperDim::new(2, 2), Parity::Even, entries).unwrap();
        assert_eq!(srank(&m).unwrap(), SuperDim::new(1, 2));
        let tm = SuperMatrix::new(&c, SuperDim::new(1, 0), SuperDim::new(1, 0), Parity::Even, vec![p(&c, "t")]).unwrap();
        assert!(matches!(srank(&tm), Err(Error::NonConstantBody(_))));
    }
}
