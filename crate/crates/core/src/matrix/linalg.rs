//! Exact linear algebra helpers: division-free determinants over a
//! commutative slice of the ring, and row reduction over the rationals.

use std::collections::HashMap;
use std::sync::Arc;

use num::{One, Zero};

use crate::grassmann::{Context, Rational, SuperPoly};

/// Determinant of a square matrix whose entries pairwise commute.
///
/// Laplace expansion along rows with minors memoized by their column set, so
/// no division is needed and the cost is `O(n 2^n)` products.
pub fn det_commuting(ctx: &Arc<Context>, n: usize, entry: impl Fn(usize, usize) -> SuperPoly) -> SuperPoly {
    if n == 0 {
        return SuperPoly::one(ctx);
    }
    assert!(n < usize::BITS as usize, "matrix too large for bitmask expansion");
    let entries: Vec<SuperPoly> = (0..n * n).map(|k| entry(k / n, k % n)).collect();
    let mut memo: HashMap<usize, SuperPoly> = HashMap::new();
    minor(ctx, n, &entries, 0, (1usize << n) - 1, &mut memo)
}

fn minor(
    ctx: &Arc<Context>,
    n: usize,
    entries: &[SuperPoly],
    row: usize,
    cols: usize,
    memo: &mut HashMap<usize, SuperPoly>,
) -> SuperPoly {
    if row == n {
        return SuperPoly::one(ctx);
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = SuperPoly::zero(ctx);
    let mut sign_positive = true;
    for c in 0..n {
        if cols & (1 << c) == 0 {
            continue;
        }
        let a = &entries[row * n + c];
        if !a.is_zero() {
            let sub = minor(ctx, n, entries, row + 1, cols & !(1 << c), memo);
            if !sub.is_zero() {
                let term = a * &sub;
                if sign_positive {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
        }
        sign_positive = !sign_positive;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Reduce `rows` in place to reduced row echelon form; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{ v : rows * v = 0 }` with `n_cols` unknowns, one vector per free
/// column (free entry 1, other free entries 0).
pub fn nullspace(rows: &[Vec<Rational>], n_cols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..n_cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n_cols];
        v[free] = Rational::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Inverse over the rationals by Gauss-Jordan; `None` when singular.
pub fn invert_rational(n: usize, entries: &[Rational]) -> Option<Vec<Rational>> {
    let mut aug: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = entries[i * n..(i + 1) * n].to_vec();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().flat_map(|row| row[n..].to_vec()).collect())
}
