use std::fmt;
use std::sync::Arc;

use num::{BigInt, One, Zero};

use super::lexer::{lex, Tok, Token};
use super::ScriptError;
use crate::grassmann::{Context, Rational, SuperDerivation, SuperPoly};
use crate::matrix::SuperDim;

/// Expression tree. `Deriv` is the coordinate field `d/dx`; it only makes
/// sense where a vector field is expected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Num(Rational),
    Var { name: String, line: usize, column: usize },
    Deriv { name: String, line: usize, column: usize },
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

/// A lowered expression: a polynomial or a vector field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lowered {
    Poly(SuperPoly),
    Field(SuperDerivation),
}

impl ExprAst {
    fn position(&self) -> (usize, usize) {
        match self {
            ExprAst::Var { line, column, .. } | ExprAst::Deriv { line, column, .. } => (*line, *column),
            ExprAst::Num(_) => (0, 0),
            ExprAst::Neg(a) | ExprAst::Pow(a, _) => a.position(),
            ExprAst::Add(a, _) | ExprAst::Sub(a, _) | ExprAst::Mul(a, _) => a.position(),
        }
    }

    /// Lower to a polynomial over `ctx`.
    pub fn to_poly(&self, ctx: &Arc<Context>) -> Result<SuperPoly, ScriptError> {
        self.to_poly_env(ctx, &|_| None)
    }

    pub fn to_poly_env(&self, ctx: &Arc<Context>, env: &dyn Fn(&str) -> Option<Lowered>) -> Result<SuperPoly, ScriptError> {
        match self.lower_env(ctx, env)? {
            Lowered::Poly(p) => Ok(p),
            Lowered::Field(_) => {
                let (line, column) = self.position();
                Err(ScriptError::Syntax { line, column, message: "expected a polynomial, found a vector field".into() })
            }
        }
    }

    /// Lower to a vector field over `ctx`; coefficients must stand to the
    /// left of `d/dx`.
    pub fn to_field(&self, ctx: &Arc<Context>) -> Result<SuperDerivation, ScriptError> {
        self.to_field_env(ctx, &|_| None)
    }

    pub fn to_field_env(&self, ctx: &Arc<Context>, env: &dyn Fn(&str) -> Option<Lowered>) -> Result<SuperDerivation, ScriptError> {
        match self.lower_env(ctx, env)? {
            Lowered::Field(d) => Ok(d),
            Lowered::Poly(p) if p.is_zero() => Ok(SuperDerivation::zero(ctx)),
            Lowered::Poly(_) => {
                let (line, column) = self.position();
                Err(ScriptError::Syntax { line, column, message: "expected a vector field".into() })
            }
        }
    }

    pub fn lower(&self, ctx: &Arc<Context>) -> Result<Lowered, ScriptError> {
        self.lower_env(ctx, &|_| None)
    }

    /// Lower with `env` resolving identifiers that are not variables of
    /// `ctx` (bound names of a session).
    pub fn lower_env(&self, ctx: &Arc<Context>, env: &dyn Fn(&str) -> Option<Lowered>) -> Result<Lowered, ScriptError> {
        let (line, column) = self.position();
        let wrap = |e: crate::Error| ScriptError::Eval { line, message: e.to_string() };
        let mixed = |what: &str| ScriptError::Syntax { line, column, message: format!("cannot {what} a vector field and a polynomial") };
        Ok(match self {
            ExprAst::Num(q) => Lowered::Poly(SuperPoly::constant(ctx, q.clone())),
            ExprAst::Var { name, line, column } => match ctx.lookup(name) {
                Some(v) => Lowered::Poly(SuperPoly::var(ctx, v)),
                None if env(name).is_some() => env(name).expect("checked"),
                None => return Err(ScriptError::UnknownIdentifier { line: *line, column: *column, name: name.clone() }),
            },
            ExprAst::Deriv { name, line, column } => match ctx.lookup(name) {
                Some(v) => Lowered::Field(SuperDerivation::basis(ctx, v).map_err(wrap)?),
                None => return Err(ScriptError::UnknownIdentifier { line: *line, column: *column, name: name.clone() }),
            },
            ExprAst::Neg(a) => match a.lower_env(ctx, env)? {
                Lowered::Poly(p) => Lowered::Poly(-p),
                Lowered::Field(d) => Lowered::Field(d.scale(&-Rational::one())),
            },
            ExprAst::Add(a, b) | ExprAst::Sub(a, b) => {
                let negate = matches!(self, ExprAst::Sub(..));
                match (a.lower_env(ctx, env)?, b.lower_env(ctx, env)?) {
                    (Lowered::Poly(x), Lowered::Poly(y)) => Lowered::Poly(if negate { x - y } else { x + y }),
                    (Lowered::Field(x), Lowered::Field(y)) => {
                        Lowered::Field(if negate { x.checked_sub(&y) } else { x.checked_add(&y) }.map_err(wrap)?)
                    }
                    _ => return Err(mixed("add")),
                }
            }
            ExprAst::Mul(a, b) => match (a.lower_env(ctx, env)?, b.lower_env(ctx, env)?) {
                (Lowered::Poly(x), Lowered::Poly(y)) => Lowered::Poly(x * y),
                (Lowered::Poly(x), Lowered::Field(d)) => Lowered::Field(d.left_mul(&x).map_err(wrap)?),
                _ => return Err(ScriptError::Syntax { line, column, message: "coefficients of a vector field go on the left".into() }),
            },
            ExprAst::Pow(a, e) => match a.lower_env(ctx, env)? {
                Lowered::Poly(p) => Lowered::Poly(p.pow(*e)),
                Lowered::Field(_) => return Err(ScriptError::Syntax { line, column, message: "cannot raise a vector field to a power".into() }),
            },
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            ExprAst::Add(..) | ExprAst::Sub(..) => 1,
            ExprAst::Mul(..) => 2,
            ExprAst::Neg(_) => 3,
            ExprAst::Pow(..) => 4,
            _ => 5,
        }
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |e: &ExprAst, min: u8| if e.precedence() < min { format!("({e})") } else { e.to_string() };
        match self {
            ExprAst::Num(q) => write!(f, "{q}"),
            ExprAst::Var { name, .. } => f.write_str(name),
            ExprAst::Deriv { name, .. } => write!(f, "d/d{name}"),
            ExprAst::Neg(a) => write!(f, "-{}", paren(a, 4)),
            ExprAst::Add(a, b) => write!(f, "{} + {}", a, paren(b, 2)),
            ExprAst::Sub(a, b) => write!(f, "{} - {}", a, paren(b, 2)),
            ExprAst::Mul(a, b) => write!(f, "{}*{}", paren(a, 2), paren(b, 3)),
            ExprAst::Pow(a, e) => write!(f, "{}^{e}", paren(a, 5)),
        }
    }
}

/// Parse a single expression.
pub fn parse_expr(text: &str) -> Result<ExprAst, ScriptError> {
    let tokens: Vec<Token> = lex(text)?.into_iter().filter(|t| t.tok != Tok::Newline).collect();
    let end = tokens.last().map_or((1, 1), |t| (t.line, t.column + 1));
    let mut p = Parser { toks: &tokens, pos: 0, end };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parse and lower a polynomial over `ctx`.
pub fn parse_poly(text: &str, ctx: &Arc<Context>) -> Result<SuperPoly, ScriptError> {
    parse_expr(text)?.to_poly(ctx)
}

/// Parse and lower a vector field over `ctx`.
pub fn parse_field(text: &str, ctx: &Arc<Context>) -> Result<SuperDerivation, ScriptError> {
    parse_expr(text)?.to_field(ctx)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Expr(ExprAst),
    List(Vec<ExprAst>),
    Tuple(Vec<ExprAst>),
    Dims(SuperDim),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    Context { name: Option<String>, even: Vec<String>, odd: Vec<String> },
    Let { name: String, expr: ExprAst },
    Field { name: String, expr: ExprAst },
    Matrix { name: String, source: SuperDim, target: SuperDim, rows: Vec<Vec<ExprAst>> },
    Morphism { name: String, source: String, target: String, images: Vec<ExprAst> },
    Group { name: String, ctx: String, mu: Vec<ExprAst>, unit: Vec<ExprAst>, inv: Option<Vec<ExprAst>> },
    Variety { name: String, ideal: Vec<ExprAst>, point: Vec<ExprAst> },
    Command { name: String, args: Vec<Arg> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub line: usize,
    /// Source text of the statement, for error reports.
    pub text: String,
}

/// Parse a whole script into statements, failing on the first error.
pub fn parse_script(text: &str) -> Result<Vec<Stmt>, ScriptError> {
    parse_statements(text)?.into_iter().collect()
}

/// Parse statement by statement so that one bad statement does not hide the
/// others. Only a lexical error fails the whole script.
pub fn parse_statements(text: &str) -> Result<Vec<Result<Stmt, ScriptError>>, ScriptError> {
    let tokens = lex(text)?;
    let lines: Vec<&str> = text.lines().collect();
    let mut out = Vec::new();
    let mut start = 0;
    for (k, t) in tokens.iter().enumerate() {
        if t.tok != Tok::Newline {
            continue;
        }
        let slice = &tokens[start..k];
        start = k + 1;
        if slice.is_empty() {
            continue;
        }
        let first = slice[0].line;
        let last = t.line;
        let text = lines.get(first - 1..last.min(lines.len())).map_or(String::new(), |ls| {
            ls.iter().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).collect::<Vec<_>>().join(" ")
        });
        let mut p = Parser { toks: slice, pos: 0, end: (t.line, t.column) };
        let parsed = p.statement().and_then(|kind| p.finish().map(|_| kind));
        out.push(parsed.map(|kind| Stmt { kind, line: first, text }));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&'a Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ScriptError> {
        let (line, column) = self.here();
        Err(ScriptError::Syntax { line, column, message: message.into() })
    }

    fn unexpected<T>(&self, expected: &str) -> Result<T, ScriptError> {
        match self.peek() {
            Some(t) => self.error(format!("expected {expected}, found {}", t.describe())),
            None => self.error(format!("expected {expected}, found end of statement")),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ScriptError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.unexpected(what)
        }
    }

    fn finish(&self) -> Result<(), ScriptError> {
        if self.pos < self.toks.len() {
            return self.unexpected("end of statement");
        }
        Ok(())
    }

    fn ident(&mut self, what: &str) -> Result<String, ScriptError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s.clone())
            }
            _ => self.unexpected(what),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ScriptError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.unexpected(&format!("`{kw}`")),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn int(&mut self) -> Result<usize, ScriptError> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let v = s.parse().or_else(|_| self.error("number too large"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => self.unexpected("a number"),
        }
    }

    fn dims(&mut self) -> Result<SuperDim, ScriptError> {
        let p = self.int()?;
        self.expect(Tok::Bar, "`|`")?;
        let q = self.int()?;
        Ok(SuperDim::new(p, q))
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<ExprAst, ScriptError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = ExprAst::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                acc = ExprAst::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<ExprAst, ScriptError> {
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            acc = ExprAst::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    // factor := '-' factor | atom ('^' nat)*
    fn factor(&mut self) -> Result<ExprAst, ScriptError> {
        if self.eat(&Tok::Minus) {
            return Ok(ExprAst::Neg(Box::new(self.factor()?)));
        }
        let mut base = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            let (line, column) = self.here();
            self.pos += 1;
            let bad = ScriptError::BadExponent { line, column: column + 1 };
            let e = match self.peek() {
                Some(Tok::Int(s)) => s.parse::<u32>().map_err(|_| bad.clone())?,
                _ => return Err(bad),
            };
            self.pos += 1;
            if self.peek() == Some(&Tok::Slash) {
                return Err(bad);
            }
            base = ExprAst::Pow(Box::new(base), e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprAst, ScriptError> {
        let (line, column) = self.here();
        match self.peek() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let num: BigInt = s.parse().expect("digits");
                if self.eat(&Tok::Slash) {
                    let den: BigInt = match self.peek() {
                        Some(Tok::Int(d)) => d.parse().expect("digits"),
                        _ => return self.unexpected("a denominator"),
                    };
                    if den.is_zero() {
                        return Err(ScriptError::Syntax { line, column, message: "zero denominator".into() });
                    }
                    self.pos += 1;
                    return Ok(ExprAst::Num(Rational::new(num, den)));
                }
                Ok(ExprAst::Num(Rational::from_integer(num)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "d" && self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let (l2, c2) = self.here();
                    return match self.peek() {
                        Some(Tok::Ident(v)) if v.len() > 1 && v.starts_with('d') => {
                            self.pos += 1;
                            Ok(ExprAst::Deriv { name: v[1..].to_string(), line: l2, column: c2 + 1 })
                        }
                        _ => self.unexpected("`d<variable>` after `d/`"),
                    };
                }
                Ok(ExprAst::Var { name: name.clone(), line, column })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => self.unexpected("an expression"),
        }
    }

    fn expr_list(&mut self, open: Tok, close: Tok, what: &str) -> Result<Vec<ExprAst>, ScriptError> {
        self.expect(open, what)?;
        let mut items = Vec::new();
        if self.eat(&close) {
            return Ok(items);
        }
        loop {
            items.push(self.expr()?);
            if self.eat(&close) {
                return Ok(items);
            }
            self.expect(Tok::Comma, "`,` or a closing bracket")?;
        }
    }

    fn list(&mut self) -> Result<Vec<ExprAst>, ScriptError> {
        self.expr_list(Tok::LBracket, Tok::RBracket, "`[`")
    }

    fn tuple(&mut self) -> Result<Vec<ExprAst>, ScriptError> {
        self.expr_list(Tok::LParen, Tok::RParen, "`(`")
    }

    fn name_list(&mut self) -> Result<Vec<String>, ScriptError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut names = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(names);
        }
        loop {
            names.push(self.ident("a variable name")?);
            if self.eat(&Tok::RBracket) {
                return Ok(names);
            }
            self.expect(Tok::Comma, "`,` or `]`")?;
        }
    }

    fn key(&mut self, kw: &str) -> Result<(), ScriptError> {
        self.keyword(kw)?;
        self.expect(Tok::Equals, "`=`")
    }

    fn statement(&mut self) -> Result<StmtKind, ScriptError> {
        let head = self.ident("a statement")?;
        match head.as_str() {
            "context" => {
                let name = match self.peek() {
                    Some(Tok::Ident(s)) if s != "even" && s != "odd" => Some(self.ident("a context name")?),
                    _ => None,
                };
                let mut even = Vec::new();
                let mut odd = Vec::new();
                if self.at_keyword("even") {
                    self.key("even")?;
                    even = self.name_list()?;
                }
                if self.at_keyword("odd") {
                    self.key("odd")?;
                    odd = self.name_list()?;
                }
                Ok(StmtKind::Context { name, even, odd })
            }
            "let" | "field" => {
                let name = self.ident("a name")?;
                self.expect(Tok::Equals, "`=`")?;
                let expr = self.expr()?;
                Ok(if head == "let" { StmtKind::Let { name, expr } } else { StmtKind::Field { name, expr } })
            }
            "matrix" => {
                let name = self.ident("a name")?;
                self.keyword("dims")?;
                let source = self.dims()?;
                self.expect(Tok::Arrow, "`->`")?;
                let target = self.dims()?;
                self.keyword("rows")?;
                self.expect(Tok::LBracket, "`[`")?;
                let mut rows = Vec::new();
                if !self.eat(&Tok::RBracket) {
                    loop {
                        rows.push(self.list()?);
                        if self.eat(&Tok::RBracket) {
                            break;
                        }
                        self.expect(Tok::Comma, "`,` or `]`")?;
                    }
                }
                Ok(StmtKind::Matrix { name, source, target, rows })
            }
            "morphism" => {
                let name = self.ident("a name")?;
                self.expect(Tok::Colon, "`:`")?;
                let source = self.ident("a source context")?;
                self.expect(Tok::Arrow, "`->`")?;
                let target = self.ident("a target context")?;
                let images = self.list()?;
                Ok(StmtKind::Morphism { name, source, target, images })
            }
            "group" => {
                let name = self.ident("a name")?;
                self.keyword("on")?;
                let ctx = self.ident("a context name")?;
                self.key("mu")?;
                let mu = self.list()?;
                self.key("unit")?;
                let unit = self.tuple()?;
                let inv = if self.at_keyword("inv") {
                    self.key("inv")?;
                    Some(self.list()?)
                } else {
                    None
                };
                Ok(StmtKind::Group { name, ctx, mu, unit, inv })
            }
            "variety" => {
                let name = self.ident("a name")?;
                self.key("ideal")?;
                let ideal = self.list()?;
                self.key("point")?;
                let point = self.tuple()?;
                Ok(StmtKind::Variety { name, ideal, point })
            }
            _ => {
                let mut args = Vec::new();
                while self.pos < self.toks.len() {
                    args.push(match self.peek() {
                        Some(Tok::LBracket) => Arg::List(self.list()?),
                        Some(Tok::LParen) if matches!(args.last(), Some(Arg::Expr(ExprAst::Var { name, .. })) if name == "at") => {
                            Arg::Tuple(self.tuple()?)
                        }
                        Some(Tok::Int(_)) if self.peek_at(1) == Some(&Tok::Bar) => Arg::Dims(self.dims()?),
                        _ => Arg::Expr(self.expr()?),
                    });
                }
                Ok(StmtKind::Command { name: head, args })
            }
        }
    }
}

/// A rational constant from an expression, if it is one.
pub fn constant_of(e: &ExprAst) -> Option<Rational> {
    match e {
        ExprAst::Num(q) => Some(q.clone()),
        ExprAst::Neg(a) => constant_of(a).map(|q| -q),
        ExprAst::Add(a, b) => Some(constant_of(a)? + constant_of(b)?),
        ExprAst::Sub(a, b) => Some(constant_of(a)? - constant_of(b)?),
        ExprAst::Mul(a, b) => Some(constant_of(a)? * constant_of(b)?),
        ExprAst::Pow(a, n) => Some(num::pow(constant_of(a)?, *n as usize)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{frac, q};

    fn ctx() -> Arc<Context> {
        Context::new(["t", "s"], ["theta1", "theta2"]).unwrap()
    }

    #[test]
    fn odd_words_are_normalized() {
        let c = ctx();
        assert_eq!(parse_poly("theta2*theta1", &c).unwrap().to_string(), "-theta1*theta2");
        assert!(parse_poly("theta1*theta1", &c).unwrap().is_zero());
    }

    #[test]
    fn powers_and_rationals() {
        let c = ctx();
        assert_eq!(parse_poly("(t + theta1*theta2)^2", &c).unwrap().to_string(), "t^2 + 2*t*theta1*theta2");
        let half = parse_poly("1/2 * t", &c).unwrap();
        assert_eq!(half, SuperPoly::named(&c, "t").unwrap().scale(&frac(1, 2)));
        assert_eq!(parse_poly("-t^2", &c).unwrap().to_string(), "-t^2");
        assert_eq!(parse_poly("(-t)^2", &c).unwrap().to_string(), "t^2");
        assert_eq!(parse_poly("2^3", &c).unwrap().as_constant(), Some(q(8)));
    }

    #[test]
    fn errors_carry_positions() {
        let c = ctx();
        assert_eq!(parse_poly("t + u", &c).unwrap_err(), ScriptError::UnknownIdentifier { line: 1, column: 5, name: "u".into() });
        assert!(matches!(parse_expr("t^-1"), Err(ScriptError::BadExponent { line: 1, column: 3 })));
        assert!(matches!(parse_expr("t^1/2"), Err(ScriptError::BadExponent { .. })));
        assert!(matches!(parse_expr("(t + 1"), Err(ScriptError::Syntax { line: 1, column: 7, .. })));
        assert!(matches!(parse_expr("t t"), Err(ScriptError::Syntax { .. })));
    }

    #[test]
    fn fields_parse_with_left_coefficients() {
        let c = Context::new(["t"], ["theta"]).unwrap();
        let d = parse_field("-theta*d/dt + d/dtheta", &c).unwrap();
        assert_eq!(d.to_string(), "-theta*d/dt + d/dtheta");
        assert!(parse_field("d/dt*theta", &c).is_err());
        let again = parse_field(&d.to_string(), &c).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn printing_roundtrips() {
        for s in ["-(t + s)*theta1", "t - (s - 1)", "(t*s)^2", "-t^2", "1/2^3", "-(t*s)"] {
            let e = parse_expr(s).unwrap();
            let printed = e.to_string();
            assert_eq!(parse_expr(&printed).unwrap().to_string(), printed, "{s}");
            let c = ctx();
            assert_eq!(parse_poly(&printed, &c).unwrap(), parse_poly(s, &c).unwrap(), "{s}");
        }
    }

    #[test]
    fn statements() {
        let script = "context g even=[t] odd=[theta]\n# comment\nmatrix m dims 1|1 -> 1|1 rows [[1, theta],\n  [theta, 1]]\nlivf d/dtheta\n";
        let stmts = parse_script(script).unwrap();
        assert_eq!(stmts.len(), 3);
        assert_eq!(stmts[1].line, 3);
        assert!(matches!(&stmts[1].kind, StmtKind::Matrix { rows, .. } if rows.len() == 2));
        assert!(matches!(&stmts[2].kind, StmtKind::Command { name, args } if name == "livf" && args.len() == 1));
        let err = parse_script("context even=[t\nlet x = ").unwrap_err();
        assert!(matches!(err, ScriptError::Syntax { .. }));
    }
}
