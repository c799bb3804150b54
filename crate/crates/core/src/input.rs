//! JSON input documents. Expressions are strings in the algebra grammar and
//! every index is 1-based, as in the mathematical notation.
//!
//! Each document converts to the core types and produces a canonical echo:
//! the same document with every expression re-printed in canonical form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{parse_expr, Poly, PolyMatrix, Rat, RatOperator, VarCtx};
use crate::error::{Error, Result};
use crate::frobenius::{from_prepotential, FrobeniusData};
use crate::kontsevich::GwTable;
use crate::lenard::{SquareOfFunctions, VectorField};
use crate::wdvv::Prepotential;

/// Reads a document of type `T` from JSON text.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed document: {e}")))
}

fn context(vars: &[String]) -> Result<VarCtx> {
    VarCtx::new(vars.iter().cloned())
}

fn expr(text: &str, ctx: &VarCtx, field: &str) -> Result<Poly> {
    parse_expr(text, ctx).map_err(|e| Error::Input(format!("{field}: {e}")))
}

fn constant(text: &str, ctx: &VarCtx, field: &str) -> Result<Rat> {
    expr(text, ctx, field)?
        .constant_value()
        .ok_or_else(|| Error::Input(format!("{field}: expected a constant")))
}

/// 1-based index from a document, converted to 0-based.
fn index(value: usize, n: usize, field: &str) -> Result<usize> {
    if value == 0 || value > n {
        return Err(Error::Input(format!("{field}: index {value} is outside 1..={n}")));
    }
    Ok(value - 1)
}

fn rows(texts: &[Vec<String>], ctx: &VarCtx, field: &str) -> Result<PolyMatrix> {
    let n = ctx.len();
    if texts.len() != n || texts.iter().any(|r| r.len() != n) {
        return Err(Error::Input(format!("{field}: expected a {n}x{n} array")));
    }
    let entries = texts
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, t)| expr(t, ctx, &format!("{field}[{}][{}]", i + 1, j + 1)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::from_rows(n, entries)
}

fn print_rows(m: &PolyMatrix, ctx: &VarCtx) -> Value {
    let n = m.dim();
    json!((0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).to_string_in(ctx)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

/// `{ "vars": [...], "F": "<expr>", "pivot": 1 }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WdvvDoc {
    pub vars: Vec<String>,
    #[serde(rename = "F")]
    pub f: String,
    #[serde(default)]
    pub pivot: Option<usize>,
}

impl WdvvDoc {
    /// The prepotential; `pivot` (1-based) overrides the document's pivot.
    pub fn build(&self, pivot: Option<usize>) -> Result<Prepotential> {
        let ctx = context(&self.vars)?;
        let f = expr(&self.f, &ctx, "F")?;
        let p = index(pivot.or(self.pivot).unwrap_or(1), ctx.len(), "pivot")?;
        Prepotential::new(ctx, f, p)
    }
}

pub fn echo_prepotential(p: &Prepotential) -> Value {
    json!({
        "vars": p.ctx.names(),
        "F": p.f.to_string_in(&p.ctx),
        "pivot": p.pivot + 1,
    })
}

/// `{ "vars": [...], "A": [["expr", ...], ...], "pivot": 1, "X": ["1", "0", ...] }`;
/// `X` defaults to `∂/∂x_pivot`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LenardDoc {
    pub vars: Vec<String>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(default)]
    pub pivot: Option<usize>,
    #[serde(default, rename = "X")]
    pub x: Option<Vec<String>>,
}

impl LenardDoc {
    pub fn build(&self, pivot: Option<usize>) -> Result<(SquareOfFunctions, VectorField)> {
        let ctx = context(&self.vars)?;
        let n = ctx.len();
        let a = rows(&self.a, &ctx, "A")?;
        let p = index(pivot.or(self.pivot).unwrap_or(1), n, "pivot")?;
        let x = match &self.x {
            None => VectorField::coordinate(n, p),
            Some(comps) => {
                if comps.len() != n {
                    return Err(Error::Input(format!("X: expected {n} components")));
                }
                VectorField::from_polys(
                    comps
                        .iter()
                        .enumerate()
                        .map(|(i, t)| expr(t, &ctx, &format!("X[{}]", i + 1)))
                        .collect::<Result<_>>()?,
                )
            }
        };
        Ok((SquareOfFunctions::new(ctx, a, p)?, x))
    }
}

pub fn echo_square(s: &SquareOfFunctions, x: &VectorField) -> Value {
    json!({
        "vars": s.ctx.names(),
        "A": print_rows(s.a(), &s.ctx),
        "pivot": s.pivot + 1,
        "X": x.components.iter().map(|c| c.to_string_in(&s.ctx)).collect::<Vec<_>>(),
    })
}

/// Raw data `{ "vars", "g", "C": { "j,k": ["C^1_jk", ...] }, "e" }` or
/// `{ "from_F": <WdvvDoc> }`. Missing `C` entries are zero; metric entries
/// may be JSON numbers or constant expressions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FrobeniusDoc {
    FromF {
        #[serde(rename = "from_F")]
        from_f: WdvvDoc,
    },
    Raw {
        vars: Vec<String>,
        g: Vec<Vec<Value>>,
        #[serde(rename = "C")]
        c: BTreeMap<String, Vec<String>>,
        #[serde(default)]
        e: Option<usize>,
    },
}

impl FrobeniusDoc {
    pub fn build(&self) -> Result<FrobeniusData> {
        match self {
            FrobeniusDoc::FromF { from_f } => from_prepotential(&from_f.build(None)?),
            FrobeniusDoc::Raw { vars, g, c, e } => {
                let ctx = context(vars)?;
                let n = ctx.len();
                if g.len() != n || g.iter().any(|r| r.len() != n) {
                    return Err(Error::Input(format!("g: expected a {n}x{n} array")));
                }
                let metric = g
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        r.iter()
                            .enumerate()
                            .map(|(j, v)| metric_entry(v, &ctx, &format!("g[{}][{}]", i + 1, j + 1)))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut constants = vec![Poly::zero(n); n * n * n];
                for (key, values) in c {
                    let (j, k) = pair_key(key, n)?;
                    if values.len() != n {
                        return Err(Error::Input(format!("C[\"{key}\"]: expected {n} entries")));
                    }
                    for (l, t) in values.iter().enumerate() {
                        constants[(l * n + j) * n + k] = expr(t, &ctx, &format!("C[\"{key}\"][{}]", l + 1))?;
                    }
                }
                let e = index(e.unwrap_or(1), n, "e")?;
                FrobeniusData::new(ctx, metric, constants, e)
            }
        }
    }
}

fn metric_entry(v: &Value, ctx: &VarCtx, field: &str) -> Result<Rat> {
    match v {
        Value::String(s) => constant(s, ctx, field),
        Value::Number(num) if num.is_i64() => Ok(Rat::from_integer(num.as_i64().expect("checked").into())),
        _ => Err(Error::Input(format!(
            "{field}: expected an integer or a rational string"
        ))),
    }
}

/// `"j,k"` (1-based) to a 0-based pair.
fn pair_key(key: &str, n: usize) -> Result<(usize, usize)> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    let parsed: Option<Vec<usize>> = parts.iter().map(|p| p.parse().ok()).collect();
    match parsed.as_deref() {
        Some([j, k]) => Ok((index(*j, n, "C key")?, index(*k, n, "C key")?)),
        _ => Err(Error::Input(format!("C: key \"{key}\" is not of the form \"j,k\""))),
    }
}

pub fn echo_frobenius(d: &FrobeniusData) -> Value {
    let n = d.dim();
    let mut c = serde_json::Map::new();
    for j in 0..n {
        for k in 0..n {
            let column: Vec<String> = (0..n)
                .map(|l| d.structure_constant(l, j, k).to_string_in(&d.ctx))
                .collect();
            c.insert(format!("{},{}", j + 1, k + 1), json!(column));
        }
    }
    json!({
        "vars": d.ctx.names(),
        "g": d.g().iter().map(|r| r.iter().map(crate::algebra::fmt_rat).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "C": c,
        "e": d.e_index() + 1,
    })
}

/// Input of the torsion command: an explicit operator `K` (optionally over a
/// common denominator), a square of functions, or a prepotential; the last
/// two stand for all their recursion operators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorDoc {
    Operator {
        vars: Vec<String>,
        #[serde(rename = "K")]
        k: Vec<Vec<String>>,
        #[serde(default)]
        den: Option<String>,
    },
    Square(LenardDoc),
    Prepotential(WdvvDoc),
}

impl OperatorDoc {
    pub fn build_operator(vars: &[String], k: &[Vec<String>], den: Option<&str>) -> Result<(VarCtx, RatOperator)> {
        let ctx = context(vars)?;
        let num = rows(k, &ctx, "K")?;
        let den = match den {
            Some(t) => expr(t, &ctx, "den")?,
            None => Poly::one(ctx.len()),
        };
        let op = RatOperator::new(num, den).map_err(|e| Error::Input(format!("den: {e}")))?;
        Ok((ctx, op))
    }
}

pub fn echo_operator(ctx: &VarCtx, op: &RatOperator) -> Value {
    json!({
        "vars": ctx.names(),
        "K": print_rows(op.num(), ctx),
        "den": op.den().to_string_in(ctx),
    })
}

/// Input of the Lenard checks: a square of functions, or a prepotential
/// standing for its Hessian square.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LenardInput {
    Square(LenardDoc),
    Prepotential(WdvvDoc),
}

impl LenardInput {
    pub fn build(&self, pivot: Option<usize>) -> Result<(SquareOfFunctions, VectorField)> {
        match self {
            LenardInput::Square(doc) => doc.build(pivot),
            LenardInput::Prepotential(doc) => {
                let p = doc.build(pivot)?;
                let x = VectorField::coordinate(p.dim(), p.pivot);
                Ok((SquareOfFunctions::hessian_of(p.ctx, &p.f, p.pivot)?, x))
            }
        }
    }
}

/// `{ "N": [[1, 1], [2, 1], ...] }` with consecutive `k` from 1; values may
/// be JSON integers or decimal strings (for entries beyond 64 bits).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KontsevichDoc {
    #[serde(rename = "N")]
    pub n: Vec<(u32, Value)>,
}

impl KontsevichDoc {
    pub fn build(&self) -> Result<GwTable> {
        if self.n.is_empty() {
            return Err(Error::Input("N: the table is empty".into()));
        }
        let values = self
            .n
            .iter()
            .enumerate()
            .map(|(i, (k, v))| {
                if *k as usize != i + 1 {
                    return Err(Error::Input(format!(
                        "N: expected k = {} at position {}, got {k}",
                        i + 1,
                        i + 1
                    )));
                }
                match v {
                    Value::Number(num) if num.is_i64() => Ok(BigInt::from(num.as_i64().expect("checked"))),
                    Value::String(s) => s
                        .trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::Input(format!("N[{k}]: `{s}` is not an integer"))),
                    _ => Err(Error::Input(format!("N[{k}]: expected an integer"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GwTable::from_values(values))
    }
}
