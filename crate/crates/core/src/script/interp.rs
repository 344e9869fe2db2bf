use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;

use super::json::{export_string, import_str, to_json, ValueJson};
use super::parser::{constant_of, parse_statements, Arg, ExprAst, Lowered, Stmt, StmtKind};
use super::{ScriptError, Value};
use crate::geometry::{classify_at, differential_at, differential_of_function, Distribution, Morphism, PointedVariety, RationalPoint, TangentVector};
use crate::grassmann::{Context, Parity, Rational, SuperDerivation, SuperPoly};
use crate::groups::{commutator_bracket, lie_algebra, pair_context, GroupLaw, MatrixGroupSpec};
use crate::matrix::{srank, SuperMatrix};
use crate::random::Sampler;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub keep_going: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub output: String,
    pub errors: Vec<String>,
    /// Values named by `export`, in order of export.
    pub exports: Vec<(String, ValueJson)>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }

    /// Exported values as one JSON object keyed by name.
    pub fn exports_json(&self) -> String {
        let map: serde_json::Map<String, serde_json::Value> = self
            .exports
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::to_value(v).expect("plain data")))
            .collect();
        serde_json::to_string_pretty(&serde_json::Value::Object(map)).expect("plain data") + "\n"
    }
}

/// Run a script and collect its report.
pub fn run(script: &str, opts: &RunOptions) -> Report {
    let mut session = Session::new(opts.seed);
    let mut report = Report::default();
    let stmts = match parse_statements(script) {
        Ok(s) => s,
        Err(e) => {
            report.errors.push(format!("error: {e}"));
            return report;
        }
    };
    for stmt in stmts {
        let result = stmt.and_then(|s| session.exec(&s).map_err(|e| (s, e)).map_err(|(s, e)| decorate(&s, e)));
        match result {
            Ok(lines) => {
                for l in lines {
                    report.output.push_str(&l);
                    report.output.push('\n');
                }
            }
            Err(e) => {
                report.errors.push(format!("error: {e}"));
                if !opts.keep_going {
                    break;
                }
            }
        }
    }
    report.exports = std::mem::take(&mut session.exports);
    report
}

fn decorate(s: &Stmt, e: ScriptError) -> ScriptError {
    match e {
        ScriptError::Eval { line, message } => ScriptError::Eval { line, message: format!("`{}`: {message}", s.text) },
        other => other,
    }
}

/// Interpreter state: declared contexts, bound values and exports.
pub struct Session {
    contexts: BTreeMap<String, Arc<Context>>,
    active: Option<String>,
    values: BTreeMap<String, Value>,
    last_group: Option<String>,
    exports: Vec<(String, ValueJson)>,
    seed: u64,
    line: usize,
}

type Out = Result<Vec<String>, ScriptError>;

impl Session {
    pub fn new(seed: u64) -> Self {
        Session {
            contexts: BTreeMap::new(),
            active: None,
            values: BTreeMap::new(),
            last_group: None,
            exports: Vec::new(),
            seed,
            line: 0,
        }
    }

    pub fn value(&self, name: &str) -> Option<&Value> {
        self.values.get(name)
    }

    pub fn bind(&mut self, name: &str, v: Value) {
        self.values.insert(name.to_string(), v);
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ScriptError> {
        Err(ScriptError::Eval { line: self.line, message: message.into() })
    }

    fn lib<T>(&self, r: crate::Result<T>) -> Result<T, ScriptError> {
        r.or_else(|e| self.err(e.to_string()))
    }

    fn active(&self) -> Result<Arc<Context>, ScriptError> {
        match &self.active {
            Some(n) => Ok(self.contexts[n].clone()),
            None => self.err("no context declared"),
        }
    }

    fn context(&self, name: &str) -> Result<Arc<Context>, ScriptError> {
        match self.contexts.get(name) {
            Some(c) => Ok(c.clone()),
            None => self.err(format!("unknown context `{name}`")),
        }
    }

    fn env<'a>(&'a self, ctx: &'a Arc<Context>) -> impl Fn(&str) -> Option<Lowered> + 'a {
        move |name: &str| match self.values.get(name) {
            Some(Value::Poly(p)) if **p.context() == **ctx => Some(Lowered::Poly(p.clone())),
            Some(Value::Field(d)) if **d.context() == **ctx => Some(Lowered::Field(d.clone())),
            _ => None,
        }
    }

    fn poly(&self, e: &ExprAst, ctx: &Arc<Context>) -> Result<SuperPoly, ScriptError> {
        e.to_poly_env(ctx, &self.env(ctx))
    }

    fn field(&self, e: &ExprAst, ctx: &Arc<Context>) -> Result<SuperDerivation, ScriptError> {
        e.to_field_env(ctx, &self.env(ctx))
    }

    fn polys(&self, es: &[ExprAst], ctx: &Arc<Context>) -> Result<Vec<SuperPoly>, ScriptError> {
        es.iter().map(|e| self.poly(e, ctx)).collect()
    }

    /// A rational point of `ctx`, written either with its even coordinates
    /// only or with all coordinates and zero odd ones.
    fn point(&self, es: &[ExprAst], ctx: &Context) -> Result<RationalPoint, ScriptError> {
        let mut values = es
            .iter()
            .map(|e| constant_of(e).map_or_else(|| self.err(format!("`{e}` is not a rational constant")), Ok))
            .collect::<Result<Vec<Rational>, _>>()?;
        if values.len() == ctx.n_even() + ctx.n_odd() && ctx.n_odd() > 0 {
            if values[ctx.n_even()..].iter().any(|v| !v.is_zero()) {
                return self.err("odd coordinates of a rational point must be zero");
            }
            values.truncate(ctx.n_even());
        }
        Ok(RationalPoint::new(values))
    }

    fn named(&self, e: &ExprAst) -> Result<(&str, &Value), ScriptError> {
        match e {
            ExprAst::Var { name, .. } => match self.values.get_key_value(name.as_str()) {
                Some((k, v)) => Ok((k.as_str(), v)),
                None => self.err(format!("`{name}` is not bound")),
            },
            other => self.err(format!("expected a name, found `{other}`")),
        }
    }

    fn matrix(&self, e: &ExprAst) -> Result<&SuperMatrix, ScriptError> {
        match self.named(e)? {
            (_, Value::Matrix(m)) => Ok(m),
            (n, v) => self.err(format!("`{n}` is a {}, not a matrix", v.kind())),
        }
    }

    fn morphism(&self, e: &ExprAst) -> Result<&Morphism, ScriptError> {
        match self.named(e)? {
            (_, Value::Morphism(m)) => Ok(m),
            (n, v) => self.err(format!("`{n}` is a {}, not a morphism", v.kind())),
        }
    }

    fn group(&self, e: Option<&ExprAst>) -> Result<&GroupLaw, ScriptError> {
        let name = match e {
            Some(e) => self.named(e)?.0.to_string(),
            None => match &self.last_group {
                Some(n) => n.clone(),
                None => return self.err("no group law declared"),
            },
        };
        match self.values.get(&name) {
            Some(Value::Group(g)) => Ok(g),
            Some(v) => self.err(format!("`{name}` is a {}, not a group law", v.kind())),
            None => self.err(format!("`{name}` is not bound")),
        }
    }

    fn variety(&self, e: &ExprAst) -> Result<&PointedVariety, ScriptError> {
        match self.named(e)? {
            (_, Value::Variety(v)) => Ok(v),
            (n, v) => self.err(format!("`{n}` is a {}, not a variety", v.kind())),
        }
    }

    fn is_group_name(&self, e: &ExprAst) -> bool {
        matches!(e, ExprAst::Var { name, .. } if matches!(self.values.get(name), Some(Value::Group(_))))
    }

    fn tangent_vector(&self, g: &GroupLaw, e: &ExprAst) -> Result<TangentVector, ScriptError> {
        let d = self.field(e, g.coords())?;
        let parity = self.lib(d.homogeneous_parity())?;
        let components = d
            .coeffs()
            .map(|c| c.as_constant().map_or_else(|| self.err(format!("`{d}` is not a tangent vector at the unit")), Ok))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TangentVector { parity, components })
    }

    /// Execute one statement and return its output lines.
    pub fn exec(&mut self, stmt: &Stmt) -> Out {
        self.line = stmt.line;
        match &stmt.kind {
            StmtKind::Context { name, even, odd } => {
                let ctx = self.lib(Context::new(even.clone(), odd.clone()))?;
                let name = name.clone().unwrap_or_else(|| "default".to_string());
                self.contexts.insert(name.clone(), ctx);
                self.active = Some(name);
                Ok(vec![])
            }
            StmtKind::Let { name, expr } => {
                let ctx = self.active()?;
                let p = self.poly(expr, &ctx)?;
                self.bind(name, Value::Poly(p));
                Ok(vec![])
            }
            StmtKind::Field { name, expr } => {
                let ctx = self.active()?;
                let d = self.field(expr, &ctx)?;
                self.bind(name, Value::Field(d));
                Ok(vec![])
            }
            StmtKind::Matrix { name, source, target, rows } => {
                let ctx = self.active()?;
                if rows.len() != target.total() || rows.iter().any(|r| r.len() != source.total()) {
                    return self.err(format!("rows do not match dims {source} -> {target}"));
                }
                let entries = rows.iter().map(|r| self.polys(r, &ctx)).collect::<Result<Vec<_>, _>>()?.concat();
                let m = self.lib(SuperMatrix::from_entries(&ctx, *source, *target, entries))?;
                self.bind(name, Value::Matrix(m));
                Ok(vec![])
            }
            StmtKind::Morphism { name, source, target, images } => {
                let (s, t) = (self.context(source)?, self.context(target)?);
                let imgs = self.polys(images, &s)?;
                let phi = self.lib(Morphism::new(&s, &t, imgs))?;
                self.bind(name, Value::Morphism(phi));
                Ok(vec![])
            }
            StmtKind::Group { name, ctx, mu, unit, inv } => {
                let c = self.context(ctx)?;
                let pair = self.lib(pair_context(&c))?;
                let mu = Morphism::new(&pair, &c, self.polys(mu, &pair)?);
                let mu = self.lib(mu)?;
                let inverse = match inv {
                    Some(images) => Some(self.lib(Morphism::new(&c, &c, self.polys(images, &c)?))?),
                    None => None,
                };
                let law = self.lib(GroupLaw::new(mu, self.point(unit, &c)?, inverse))?;
                self.bind(name, Value::Group(law));
                self.last_group = Some(name.clone());
                Ok(vec![])
            }
            StmtKind::Variety { name, ideal, point } => {
                let ctx = self.active()?;
                let v = self.lib(PointedVariety::new(&ctx, self.polys(ideal, &ctx)?, self.point(point, &ctx)?))?;
                self.bind(name, Value::Variety(v));
                Ok(vec![])
            }
            StmtKind::Command { name, args } => self.command(name, args),
        }
    }

    fn command(&mut self, name: &str, args: &[Arg]) -> Out {
        let exprs: Vec<&ExprAst> = args.iter().filter_map(|a| if let Arg::Expr(e) = a { Some(e) } else { None }).collect();
        let tuple = args.iter().find_map(|a| if let Arg::Tuple(t) = a { Some(t) } else { None });
        let list = args.iter().find_map(|a| if let Arg::List(l) = a { Some(l) } else { None });
        let dims = args.iter().find_map(|a| if let Arg::Dims(d) = a { Some(*d) } else { None });
        let arg = |k: usize| -> Result<&ExprAst, ScriptError> {
            exprs.get(k).copied().map_or_else(|| self.err(format!("`{name}` needs more arguments")), Ok)
        };
        let at_point = |ctx: &Context| -> Result<RationalPoint, ScriptError> {
            match tuple {
                Some(t) => self.point(t, ctx),
                None => self.err(format!("`{name}` needs `at (...)`")),
            }
        };
        match name {
            "print" => Ok(vec![self.named(arg(0)?)?.1.to_string()]),
            "eval" => {
                let ctx = self.active()?;
                let p = self.poly(arg(0)?, &ctx)?;
                match tuple {
                    Some(t) => Ok(vec![self.lib(p.evaluate(&self.point(t, &ctx)?.values))?.to_string()]),
                    None => Ok(vec![p.to_string()]),
                }
            }
            "ber" => Ok(vec![self.lib(self.matrix(arg(0)?)?.berezinian())?.to_string()]),
            "strace" => Ok(vec![self.lib(self.matrix(arg(0)?)?.supertrace())?.to_string()]),
            "srank" => Ok(vec![self.lib(srank(self.matrix(arg(0)?)?))?.to_string()]),
            "inv" => Ok(vec![self.lib(self.matrix(arg(0)?)?.invert())?.render_rows()]),
            "transpose" => Ok(vec![self.lib(self.matrix(arg(0)?)?.supertranspose())?.render_rows()]),
            "decompose" => {
                let f = self.lib(self.matrix(arg(0)?)?.elementary_decomposition())?;
                Ok(vec![
                    format!("upper {}", f.upper.render_rows()),
                    format!("diagonal {}", f.diagonal.render_rows()),
                    format!("lower {}", f.lower.render_rows()),
                ])
            }
            "pullback" => {
                let phi = self.morphism(arg(0)?)?;
                let f = self.poly(arg(1)?, phi.target())?;
                Ok(vec![self.lib(phi.pullback(&f))?.to_string()])
            }
            "jacobian" => {
                let phi = self.morphism(arg(0)?)?;
                Ok(vec![self.lib(differential_at(phi, &at_point(phi.source())?))?.render_rows()])
            }
            "classify" => {
                let phi = self.morphism(arg(0)?)?;
                Ok(vec![self.lib(classify_at(phi, &at_point(phi.source())?))?.to_string()])
            }
            "differential" => {
                let ctx = self.active()?;
                let f = self.poly(arg(0)?, &ctx)?;
                Ok(vec![self.lib(differential_of_function(&f, &at_point(&ctx)?))?.to_string()])
            }
            "tangent" => {
                let v = self.variety(arg(0)?)?;
                let quotient = matches!(exprs.get(1), Some(ExprAst::Var { name, .. }) if name == "quotient");
                let t = self.lib(if quotient { v.tangent_space_by_quotient() } else { v.tangent_space() })?;
                Ok(t.to_string().lines().map(String::from).collect())
            }
            "livf" => {
                let (g, vec_expr) = if exprs.len() > 1 && self.is_group_name(exprs[0]) {
                    (self.group(Some(exprs[0]))?, exprs[1])
                } else {
                    (self.group(None)?, arg(0)?)
                };
                let v = self.tangent_vector(g, vec_expr)?;
                Ok(vec![self.lib(g.left_invariant_field(&v))?.to_string()])
            }
            "invariant" => {
                let (g, e) = if exprs.len() > 1 && self.is_group_name(exprs[0]) {
                    (self.group(Some(exprs[0]))?, exprs[1])
                } else {
                    (self.group(None)?, arg(0)?)
                };
                let d = self.field(e, g.coords())?;
                Ok(vec![self.lib(g.is_left_invariant(&d))?.to_string()])
            }
            "action" => {
                let g = self.group(Some(arg(0)?))?;
                let sigma = self.morphism(arg(1)?)?;
                let v = self.tangent_vector(g, arg(2)?)?;
                Ok(vec![self.lib(g.infinitesimal_action(sigma, &v))?.to_string()])
            }
            "axioms" => {
                let g = self.group(exprs.first().copied())?;
                Ok(self.lib(g.check_axioms())?.to_string().lines().map(String::from).collect())
            }
            "bracket" => {
                let (a, b) = (arg(0)?, arg(1)?);
                if let (Ok(x), Ok(y)) = (self.matrix(a), self.matrix(b)) {
                    return Ok(vec![self.lib(x.superbracket(y))?.render_rows()]);
                }
                let ctx = self.active()?;
                let (x, y) = (self.field(a, &ctx)?, self.field(b, &ctx)?);
                Ok(vec![self.lib(x.bracket(&y))?.to_string()])
            }
            "commutator" => {
                let (x, y) = (self.matrix(arg(0)?)?, self.matrix(arg(1)?)?);
                Ok(vec![self.lib(commutator_bracket(x, y))?.render_rows()])
            }
            "lie" => {
                let kind = match arg(0)? {
                    ExprAst::Var { name, .. } => name.as_str(),
                    other => return self.err(format!("unknown group kind `{other}`")),
                };
                let Some(d) = dims else {
                    return self.err("`lie` needs dimensions p|q");
                };
                let spec = match kind {
                    "GL" => MatrixGroupSpec::gl(d),
                    "SL" => MatrixGroupSpec::sl(d),
                    "OSp" => match exprs.get(1) {
                        Some(ExprAst::Var { name, .. }) if name == "form" => {
                            let form = self.matrix(arg(2)?)?;
                            if form.source() != d {
                                return self.err(format!("form has dims {}, expected {d}", form.source()));
                            }
                            self.lib(MatrixGroupSpec::osp(form.clone()))?
                        }
                        _ => self.lib(MatrixGroupSpec::standard_osp(d.even, d.odd))?,
                    },
                    other => return self.err(format!("unknown group kind `{other}`")),
                };
                let lie = self.lib(lie_algebra(&spec))?;
                Ok(lie.to_string().lines().map(String::from).collect())
            }
            "involutive" => {
                let ctx = self.active()?;
                let Some(items) = list else {
                    return self.err("`involutive` needs a list of fields");
                };
                let fields = items.iter().map(|e| self.field(e, &ctx)).collect::<Result<Vec<_>, _>>()?;
                let d = self.lib(Distribution::new(fields))?;
                Ok(vec![self.lib(d.involutive())?.to_string()])
            }
            "export" => {
                let (n, v) = self.named(arg(0)?)?;
                let (n, text, j) = (n.to_string(), export_string(v), to_json(v));
                debug_assert_eq!(import_str(&text).as_ref(), Ok(v));
                self.exports.push((n, j));
                Ok(vec![text])
            }
            "selftest" => {
                let test = match arg(0)? {
                    ExprAst::Var { name, .. } => name.clone(),
                    other => return self.err(format!("unknown self test `{other}`")),
                };
                let n = match arg(1).ok().and_then(constant_of) {
                    Some(q) if q.is_integer() && q >= Rational::from_integer(0.into()) => {
                        q.to_integer().try_into().unwrap_or(usize::MAX)
                    }
                    _ => return self.err("`selftest` needs a case count"),
                };
                let passed = self.selftest(&test, n)?;
                Ok(vec![format!("selftest {test}: {passed}/{n} passed")])
            }
            other => self.err(format!("unknown command `{other}`")),
        }
    }

    fn selftest(&self, name: &str, n: usize) -> Result<usize, ScriptError> {
        let mut s = Sampler::new(self.seed);
        let odd6 = self.lib(Context::new(Vec::<String>::new(), (1..=6).map(|i| format!("theta{i}"))))?;
        let mut passed = 0;
        for _ in 0..n {
            let ok = match name {
                "ber_mult" => {
                    let d = s.dims(2, 2);
                    let (a, b) = (s.invertible_matrix(&odd6, d), s.invertible_matrix(&odd6, d));
                    let lhs = self.lib(self.lib(a.matmul(&b))?.berezinian())?;
                    lhs == self.lib(a.berezinian())? * self.lib(b.berezinian())?
                }
                "str_cyclic" => {
                    let d = s.dims(2, 2);
                    let (a, b) = (s.matrix(&odd6, d, d, Parity::Even), s.matrix(&odd6, d, d, Parity::Even));
                    self.lib(self.lib(a.matmul(&b))?.supertrace())? == self.lib(self.lib(b.matmul(&a))?.supertrace())?
                }
                "pullback_hom" => {
                    let c = self.lib(Context::new(["t", "s"], ["theta1", "theta2", "theta3"]))?;
                    s.max_degree = 2;
                    let phi = s.morphism(&c, &c);
                    let (p, q) = (s.parity(), s.parity());
                    let (f, g) = (s.element(&c, p), s.element(&c, q));
                    self.lib(phi.pullback(&(&f * &g)))? == self.lib(phi.pullback(&f))? * self.lib(phi.pullback(&g))?
                }
                "jacobi" => {
                    let c = self.lib(Context::new(["t"], ["theta1", "theta2"]))?;
                    let (p, q, r) = (s.parity(), s.parity(), s.parity());
                    let (x, y, z) = (s.derivation(&c, p), s.derivation(&c, q), s.derivation(&c, r));
                    jacobi_holds(&x, &y, &z).or_else(|e| self.err(e.to_string()))?
                }
                "json_roundtrip" => {
                    let d = s.dims(2, 2);
                    let p = s.parity();
                    let v = Value::Matrix(s.matrix(&odd6, d, d, p));
                    import_str(&export_string(&v)).as_ref() == Ok(&v)
                }
                other => return self.err(format!("unknown self test `{other}`")),
            };
            passed += usize::from(ok);
        }
        Ok(passed)
    }
}

/// `[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]`.
pub(crate) fn jacobi_holds(x: &SuperDerivation, y: &SuperDerivation, z: &SuperDerivation) -> crate::Result<bool> {
    let lhs = x.bracket(&y.bracket(z)?)?;
    let a = x.bracket(y)?.bracket(z)?;
    let b = y.bracket(&x.bracket(z)?)?;
    let sign_negative = x.homogeneous_parity()?.koszul_negative(y.homogeneous_parity()?);
    let rhs = if sign_negative { a.checked_sub(&b)? } else { a.checked_add(&b)? };
    Ok(lhs.checked_sub(&rhs)?.is_zero())
}
