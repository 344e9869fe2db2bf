use std::fmt;
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::grassmann::{ensure_same, join_signed, Context, Parity, Rational, SuperPoly, Var};
use crate::matrix::linalg::{invert_rational, rref};
use crate::matrix::{SuperDim, SuperMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    GL,
    SL,
    OSp,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::GL => "GL",
            GroupKind::SL => "SL",
            GroupKind::OSp => "OSp",
        })
    }
}

/// `GL(m|n)`, `SL(m|n)` or the orthosymplectic group of an even form `Phi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGroupSpec {
    kind: GroupKind,
    dims: SuperDim,
    form: Option<SuperMatrix>,
}

impl MatrixGroupSpec {
    pub fn gl(dims: SuperDim) -> Self {
        MatrixGroupSpec { kind: GroupKind::GL, dims, form: None }
    }

    pub fn sl(dims: SuperDim) -> Self {
        MatrixGroupSpec { kind: GroupKind::SL, dims, form: None }
    }

    /// `form` must be rational, block diagonal, invertible, symmetric on the
    /// even block and alternating on the odd block.
    pub fn osp(form: SuperMatrix) -> Result<Self> {
        let dims = form.source();
        if !form.is_square() || form.parity() != Parity::Even {
            return Err(Error::NotSquare(format!("form {} -> {}", form.source(), form.target())));
        }
        if !dims.odd.is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!("odd dimension {} is not even", dims.odd)));
        }
        let values = form
            .constant_entries()
            .ok_or_else(|| Error::Unsupported("form with non-constant entries".into()))?;
        let n = dims.total();
        if invert_rational(n, &values).is_none() {
            return Err(Error::NotInvertible(format!("form {}", form.render_rows())));
        }
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&values[i * n + j], &values[j * n + i]);
                let ok = match (dims.parity_of(i), dims.parity_of(j)) {
                    (Parity::Even, Parity::Even) => a == b,
                    (Parity::Odd, Parity::Odd) => *a == -b.clone(),
                    _ => a.is_zero(),
                };
                if !ok {
                    return Err(Error::Unsupported(format!(
                        "form {} is not symmetric/alternating block diagonal",
                        form.render_rows()
                    )));
                }
            }
        }
        let form = SuperMatrix::from_rationals(&Context::empty(), dims, dims, &values)?;
        Ok(MatrixGroupSpec { kind: GroupKind::OSp, dims, form: Some(form) })
    }

    /// `Phi = diag(I_p; J, ..., J)` with `J = [[0, 1], [-1, 0]]`.
    pub fn standard_osp(p: usize, two_q: usize) -> Result<Self> {
        let dims = SuperDim::new(p, two_q);
        let n = dims.total();
        let mut values = vec![Rational::zero(); n * n];
        for i in 0..p {
            values[i * n + i] = Rational::one();
        }
        for k in (0..two_q.saturating_sub(1)).step_by(2) {
            let (a, b) = (p + k, p + k + 1);
            values[a * n + b] = Rational::one();
            values[b * n + a] = -Rational::one();
        }
        Self::osp(SuperMatrix::from_rationals(&Context::empty(), dims, dims, &values)?)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn dims(&self) -> SuperDim {
        self.dims
    }

    pub fn form(&self) -> Option<&SuperMatrix> {
        self.form.as_ref()
    }
}

impl fmt::Display for MatrixGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.dims)
    }
}

/// The Lie superalgebra of a matrix group as linear constraints on the
/// entries of `X`.
///
/// Entry symbols are `p{i}{j}`, `q{i}{j}`, `r{i}{j}`, `s{i}{j}` for the four
/// blocks of `X` (1-based within the block); `p` and `s` are even, `q` and
/// `r` odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    pub spec: MatrixGroupSpec,
    /// Even symbols first, then odd ones.
    pub symbols: Vec<String>,
    pub n_even_symbols: usize,
    /// Reduced row echelon form of the constraints over `symbols`.
    pub constraints: Vec<Vec<Rational>>,
}

impl LieAlgebra {
    pub fn render_constraints(&self) -> Vec<String> {
        self.constraints
            .iter()
            .map(|row| {
                let pieces: Vec<(bool, String)> = row
                    .iter()
                    .zip(&self.symbols)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, s)| {
                        let a = c.abs();
                        (c.is_negative(), if a.is_one() { s.clone() } else { format!("{a}*{s}") })
                    })
                    .collect();
                format!("{} = 0", join_signed(&pieces))
            })
            .collect()
    }

    /// Superdimension of the solution space.
    pub fn dimension(&self) -> SuperDim {
        let ne = self.n_even_symbols;
        let even_rank = self.constraints.iter().filter(|r| r[..ne].iter().any(|c| !c.is_zero())).count();
        let odd_rank = self.constraints.len() - even_rank;
        SuperDim::new(ne - even_rank, self.symbols.len() - ne - odd_rank)
    }

    /// Whether the symbol values `x` (ordered as `symbols`) satisfy every
    /// constraint.
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<Rational>().is_zero())
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines = self.render_constraints();
        if lines.is_empty() {
            writeln!(f, "no constraints")?;
        }
        for l in lines {
            writeln!(f, "{l}")?;
        }
        write!(f, "dim {}", self.dimension())
    }
}

struct SymbolicElement {
    ctx: Arc<Context>,
    symbols: Vec<String>,
    n_even: usize,
    x: SuperMatrix,
    eps: SuperPoly,
}

fn symbolic_element(dims: SuperDim) -> Result<SymbolicElement> {
    let (m, n) = (dims.even, dims.odd);
    let names = |prefix: char, rows: usize, cols: usize| -> Vec<String> {
        (1..=rows).flat_map(|i| (1..=cols).map(move |j| format!("{prefix}{i}{j}"))).collect()
    };
    let even: Vec<String> = names('p', m, m).into_iter().chain(names('s', n, n)).collect();
    let odd_entries: Vec<String> = names('q', m, n).into_iter().chain(names('r', n, m)).collect();
    let mut odd = vec!["epsilon1".to_string(), "epsilon2".to_string()];
    odd.extend(odd_entries.iter().cloned());
    let ctx = Context::new(even.clone(), odd)?;
    let sym = |prefix: char, i: usize, j: usize| SuperPoly::named(&ctx, &format!("{prefix}{}{}", i + 1, j + 1));
    let total = dims.total();
    let mut entries = Vec::with_capacity(total * total);
    for i in 0..total {
        for j in 0..total {
            entries.push(match (i < m, j < m) {
                (true, true) => sym('p', i, j)?,
                (true, false) => sym('q', i, j - m)?,
                (false, true) => sym('r', i - m, j)?,
                (false, false) => sym('s', i - m, j - m)?,
            });
        }
    }
    let x = SuperMatrix::new(&ctx, dims, dims, Parity::Even, entries)?;
    let eps = SuperPoly::named(&ctx, "epsilon1")? * SuperPoly::named(&ctx, "epsilon2")?;
    let n_even = even.len();
    let symbols = even.into_iter().chain(odd_entries).collect();
    Ok(SymbolicElement { ctx, symbols, n_even, x, eps })
}

/// Coefficient of `epsilon1*epsilon2` in `f`, as a linear form in the entry
/// symbols.
fn first_order_part(el: &SymbolicElement, f: &SuperPoly) -> Result<Vec<Rational>> {
    let l = f.partial(Var::Odd(0))?.partial(Var::Odd(1))?;
    let mut row = vec![Rational::zero(); el.symbols.len()];
    for (m, c) in l.terms() {
        if m.total_degree() != 1 {
            return Err(Error::Unsupported(format!("first-order part `{l}` is not linear")));
        }
        let name = el.ctx.name(match m.even_exponents().first() {
            Some(&(i, _)) => Var::Even(i),
            None => Var::Odd(m.odd_indices()[0]),
        });
        let k = el.symbols.iter().position(|s| s == name).expect("entry symbol");
        row[k] = c.clone();
    }
    Ok(row)
}

/// Linearize the defining equations of the group at `I + epsilon X` with
/// `epsilon = epsilon1*epsilon2`.
pub fn lie_algebra(spec: &MatrixGroupSpec) -> Result<LieAlgebra> {
    let el = symbolic_element(spec.dims)?;
    let id = SuperMatrix::identity(&el.ctx, spec.dims);
    let g = id.checked_add(&el.x.scalar_mul(&el.eps)?)?;
    let equations: Vec<SuperPoly> = match spec.kind {
        GroupKind::GL => Vec::new(),
        GroupKind::SL => vec![g.berezinian()? - SuperPoly::one(&el.ctx)],
        GroupKind::OSp => {
            let form = spec.form.as_ref().expect("orthosymplectic spec carries a form");
            let values = form.constant_entries().expect("rational form");
            let phi = SuperMatrix::from_rationals(&el.ctx, spec.dims, spec.dims, &values)?;
            let lhs = g.supertranspose()?.matmul(&phi)?.matmul(&g)?;
            lhs.checked_sub(&phi)?.entries().to_vec()
        }
    };
    let mut rows = Vec::new();
    for f in &equations {
        let row = first_order_part(&el, f)?;
        if row.iter().any(|c| !c.is_zero()) {
            rows.push(row);
        }
    }
    rref(&mut rows);
    Ok(LieAlgebra { spec: spec.clone(), symbols: el.symbols, n_even_symbols: el.n_even, constraints: rows })
}

const RESERVED: usize = 4;

fn check_reserved(m: &SuperMatrix, reserved: usize) -> Result<()> {
    let ctx = m.context();
    if ctx.n_odd() < reserved {
        return Err(Error::InvalidContext(format!(
            "need at least {reserved} odd generators to reserve, context has {}",
            ctx.n_odd()
        )));
    }
    for e in m.entries() {
        if let Some(v) = e.support().into_iter().find(|v| matches!(v, Var::Odd(j) if *j < reserved)) {
            return Err(Error::ReservedGeneratorCollision(ctx.name(v).to_string()));
        }
    }
    Ok(())
}

fn odd_product(ctx: &Arc<Context>, a: usize, b: usize) -> SuperPoly {
    SuperPoly::var(ctx, Var::Odd(a)) * SuperPoly::var(ctx, Var::Odd(b))
}

/// Strip a leading product of the odd generators `idx` from every entry.
fn strip_odd_prefix(m: &SuperMatrix, idx: &[usize]) -> Result<SuperMatrix> {
    let entries = m
        .entries()
        .iter()
        .map(|e| idx.iter().try_fold(e.clone(), |acc, &j| acc.partial(Var::Odd(j))))
        .collect::<Result<Vec<_>>>()?;
    SuperMatrix::new(m.context(), m.source(), m.target(), m.parity(), entries)
}

/// `B` with `(I + e x)(I + e' y)(I - e x)(I - e' y) = I + e e' B`, where
/// `e = theta_1 theta_2` and `e' = theta_3 theta_4` are built from the first
/// four odd generators of the context, which `x` and `y` must not use.
///
/// `I + e x` is a group element only for even `x`, so both operands must be
/// even; then `B = xy - yx`.
pub fn commutator_bracket(x: &SuperMatrix, y: &SuperMatrix) -> Result<SuperMatrix> {
    ensure_same(x.context(), y.context())?;
    for m in [x, y] {
        if !m.is_square() || m.source() != x.source() {
            return Err(Error::DimensionMismatch(format!("{} -> {}", m.source(), m.target())));
        }
        if m.parity() != Parity::Even {
            return Err(Error::ParityViolation("group elements I + e*x need an even x".into()));
        }
        check_reserved(m, RESERVED)?;
    }
    let ctx = x.context();
    let e1 = odd_product(ctx, 0, 1);
    let e2 = odd_product(ctx, 2, 3);
    let id = SuperMatrix::identity(ctx, x.source());
    let ex = x.scalar_mul(&e1)?;
    let ey = y.scalar_mul(&e2)?;
    let prod = id
        .checked_add(&ex)?
        .matmul(&id.checked_add(&ey)?)?
        .matmul(&id.checked_sub(&ex)?)?
        .matmul(&id.checked_sub(&ey)?)?;
    let delta = prod.checked_sub(&id)?;
    let b = strip_odd_prefix(&delta, &[0, 1, 2, 3])?;
    let e12 = &e1 * &e2;
    if b.scalar_mul(&e12)? != delta {
        return Err(Error::Unsupported("group commutator is not of the form I + e e' B".into()));
    }
    Ok(b)
}

/// `C` with `(I + e a) b (I - e a) = b + e C` for `e = theta_1 theta_2`; the
/// operands must not use the first two odd generators.
pub fn adjoint_derivative(a: &SuperMatrix, b: &SuperMatrix) -> Result<SuperMatrix> {
    ensure_same(a.context(), b.context())?;
    if a.parity() != Parity::Even || !a.is_square() {
        return Err(Error::ParityViolation("adjoint action needs an even square a".into()));
    }
    check_reserved(a, 2)?;
    check_reserved(b, 2)?;
    let ctx = a.context();
    let e = odd_product(ctx, 0, 1);
    let id = SuperMatrix::identity(ctx, a.source());
    let ea = a.scalar_mul(&e)?;
    let conj = id.checked_add(&ea)?.matmul(b)?.matmul(&id.checked_sub(&ea)?)?;
    let delta = conj.checked_sub(b)?;
    let c = strip_odd_prefix(&delta, &[0, 1])?;
    if c.scalar_mul(&e)? != delta {
        return Err(Error::Unsupported("conjugate is not of the form b + e C".into()));
    }
    Ok(c)
}
