//! Structured export of session values. Coefficients and entries are strings
//! in canonical form; odd and even variable indices are 1-based.

use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::parser::parse_poly;
use super::{ScriptError, Value};
use crate::geometry::{Morphism, PointedVariety, RationalPoint};
use crate::grassmann::{Context, Monomial, Parity, Rational, SuperDerivation, SuperPoly};
use crate::groups::{pair_context, GroupLaw};
use crate::matrix::{SuperDim, SuperMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextJson {
    pub even: Vec<String>,
    pub odd: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coefficient: String,
    /// `[index, exponent]` pairs.
    pub even: Vec<[u32; 2]>,
    pub odd: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValueJson {
    Poly { context: ContextJson, terms: Vec<TermJson> },
    Matrix { context: ContextJson, dims: String, parity: String, entries: Vec<String> },
    Field { context: ContextJson, parity: Option<String>, even: Vec<String>, odd: Vec<String> },
    Morphism { source: ContextJson, target: ContextJson, images: Vec<String> },
    Group { coords: ContextJson, mu: Vec<String>, unit: Vec<String>, inverse: Option<Vec<String>> },
    Variety { context: ContextJson, ideal: Vec<String>, point: Vec<String> },
}

fn bad(message: impl Into<String>) -> ScriptError {
    ScriptError::Json(message.into())
}

fn eval_err(e: crate::Error) -> ScriptError {
    ScriptError::Json(e.to_string())
}

fn ctx_json(c: &Context) -> ContextJson {
    ContextJson { even: c.even_names().to_vec(), odd: c.odd_names().to_vec() }
}

fn ctx_from(c: &ContextJson) -> Result<Arc<Context>, ScriptError> {
    Context::new(c.even.clone(), c.odd.clone()).map_err(eval_err)
}

fn strings(ps: &[SuperPoly]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn polys(ss: &[String], ctx: &Arc<Context>) -> Result<Vec<SuperPoly>, ScriptError> {
    ss.iter().map(|s| parse_poly(s, ctx)).collect()
}

fn rationals(ss: &[String]) -> Result<Vec<Rational>, ScriptError> {
    ss.iter().map(|s| Rational::from_str(s).map_err(|_| bad(format!("bad rational `{s}`")))).collect()
}

fn parity_name(p: Parity) -> String {
    p.to_string()
}

fn parity_from(s: &str) -> Result<Parity, ScriptError> {
    match s {
        "even" => Ok(Parity::Even),
        "odd" => Ok(Parity::Odd),
        other => Err(bad(format!("bad parity `{other}`"))),
    }
}

pub fn poly_json(p: &SuperPoly) -> ValueJson {
    let terms = p
        .terms()
        .map(|(m, c)| TermJson {
            coefficient: c.to_string(),
            even: m.even_exponents().iter().map(|&(i, e)| [i as u32 + 1, e]).collect(),
            odd: m.odd_indices().iter().map(|j| j + 1).collect(),
        })
        .collect();
    ValueJson::Poly { context: ctx_json(p.context()), terms }
}

pub fn to_json(v: &Value) -> ValueJson {
    match v {
        Value::Poly(p) => poly_json(p),
        Value::Matrix(m) => ValueJson::Matrix {
            context: ctx_json(m.context()),
            dims: format!("{}->{}", m.source(), m.target()),
            parity: parity_name(m.parity()),
            entries: strings(m.entries()),
        },
        Value::Field(d) => ValueJson::Field {
            context: ctx_json(d.context()),
            parity: d.parity().map(parity_name),
            even: strings(d.even_coeffs()),
            odd: strings(d.odd_coeffs()),
        },
        Value::Morphism(phi) => ValueJson::Morphism {
            source: ctx_json(phi.source()),
            target: ctx_json(phi.target()),
            images: strings(phi.assignment()),
        },
        Value::Group(g) => ValueJson::Group {
            coords: ctx_json(g.coords()),
            mu: strings(g.mu().assignment()),
            unit: g.unit().values.iter().map(ToString::to_string).collect(),
            inverse: g.inverse().map(|i| strings(i.assignment())),
        },
        Value::Variety(v) => ValueJson::Variety {
            context: ctx_json(v.ambient()),
            ideal: strings(v.generators()),
            point: v.point().values.iter().map(ToString::to_string).collect(),
        },
    }
}

pub fn from_json(j: &ValueJson) -> Result<Value, ScriptError> {
    Ok(match j {
        ValueJson::Poly { context, terms } => {
            let ctx = ctx_from(context)?;
            let mut p = SuperPoly::zero(&ctx);
            for t in terms {
                let c = rationals(std::slice::from_ref(&t.coefficient))?.remove(0);
                let even: Vec<(usize, u32)> = t
                    .even
                    .iter()
                    .map(|&[i, e]| (i as usize).checked_sub(1).map(|i| (i, e)))
                    .collect::<Option<_>>()
                    .ok_or_else(|| bad("even index 0"))?;
                let odd: Vec<usize> =
                    t.odd.iter().map(|j| j.checked_sub(1)).collect::<Option<_>>().ok_or_else(|| bad("odd index 0"))?;
                if even.iter().any(|&(i, _)| i >= ctx.n_even()) || odd.iter().any(|&j| j >= ctx.n_odd()) {
                    return Err(bad("variable index out of range"));
                }
                if let Some((sign, m)) = Monomial::from_parts(&even, &odd) {
                    let c = if sign < 0 { -c } else { c };
                    p += &SuperPoly::term(&ctx, m, c);
                }
            }
            Value::Poly(p)
        }
        ValueJson::Matrix { context, dims, parity, entries } => {
            let ctx = ctx_from(context)?;
            let (s, t) = dims.split_once("->").ok_or_else(|| bad(format!("bad dims `{dims}`")))?;
            let source = SuperDim::from_str(s.trim()).map_err(eval_err)?;
            let target = SuperDim::from_str(t.trim()).map_err(eval_err)?;
            let m = SuperMatrix::new(&ctx, source, target, parity_from(parity)?, polys(entries, &ctx)?).map_err(eval_err)?;
            Value::Matrix(m)
        }
        ValueJson::Field { context, parity, even, odd } => {
            let ctx = ctx_from(context)?;
            let (e, o) = (polys(even, &ctx)?, polys(odd, &ctx)?);
            let d = match parity {
                Some(p) => SuperDerivation::new(&ctx, parity_from(p)?, e, o),
                None => SuperDerivation::from_coefficients(&ctx, e, o),
            }
            .map_err(eval_err)?;
            Value::Field(d)
        }
        ValueJson::Morphism { source, target, images } => {
            let (s, t) = (ctx_from(source)?, ctx_from(target)?);
            Value::Morphism(Morphism::new(&s, &t, polys(images, &s)?).map_err(eval_err)?)
        }
        ValueJson::Group { coords, mu, unit, inverse } => {
            let c = ctx_from(coords)?;
            let pair = pair_context(&c).map_err(eval_err)?;
            let mu = Morphism::new(&pair, &c, polys(mu, &pair)?).map_err(eval_err)?;
            let inv = match inverse {
                Some(images) => Some(Morphism::new(&c, &c, polys(images, &c)?).map_err(eval_err)?),
                None => None,
            };
            Value::Group(GroupLaw::new(mu, RationalPoint::new(rationals(unit)?), inv).map_err(eval_err)?)
        }
        ValueJson::Variety { context, ideal, point } => {
            let ctx = ctx_from(context)?;
            let v = PointedVariety::new(&ctx, polys(ideal, &ctx)?, RationalPoint::new(rationals(point)?))
                .map_err(eval_err)?;
            Value::Variety(v)
        }
    })
}

/// Single-line JSON text of a value.
pub fn export_string(v: &Value) -> String {
    serde_json::to_string(&to_json(v)).expect("plain data serializes")
}

pub fn import_str(text: &str) -> Result<Value, ScriptError> {
    let j: ValueJson = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    from_json(&j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_product_encoding() {
        let c = Context::new(["t"], ["theta1", "theta2"]).unwrap();
        let p = parse_poly("theta1*theta2", &c).unwrap();
        let text = export_string(&Value::Poly(p.clone()));
        assert_eq!(
            text,
            r#"{"kind":"poly","context":{"even":["t"],"odd":["theta1","theta2"]},"terms":[{"coefficient":"1","even":[],"odd":[1,2]}]}"#
        );
        assert_eq!(import_str(&text).unwrap(), Value::Poly(p));
    }

    #[test]
    fn identity_matrix_encoding() {
        let c = Context::new(["t"], ["theta"]).unwrap();
        let id = SuperMatrix::identity(&c, SuperDim::new(1, 1));
        let j = to_json(&Value::Matrix(id.clone()));
        match &j {
            ValueJson::Matrix { dims, entries, .. } => {
                assert_eq!(dims, "1|1->1|1");
                assert_eq!(entries, &["1", "0", "0", "1"]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(from_json(&j).unwrap(), Value::Matrix(id));
    }
}
