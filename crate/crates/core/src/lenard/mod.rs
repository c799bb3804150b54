//! Lenard chains and Lenard complexes built from a symmetric square of
//! functions `A_jl`.
//!
//! Operators act on 1-forms on the right, `(θ·K)_m = Σ_i θ_i K^i_m`, and on
//! vectors on the left, `(KX)^i = Σ_m K^i_m X^m`. The defining relation
//! `K_j da_l = dA_jl` then reads `M_j = M_p·K_j` where
//! `M_j[l][m] = ∂_m A_jl` and `p` is the pivot row, so `K_j = adj(M_p)·M_j / det(M_p)`.
//! For a Hessian square in its own coordinates this is `c_p⁻¹ c_j`, and
//! `K_j ∂_p = ∂_j`.

mod fields;
mod torsion;

pub use fields::{apply_operator, d_oneform, first_nonzero_2form, lie_bracket, pull_oneform, OneForm, VectorField};
pub use torsion::{haantjes, haantjes_bracket, nijenhuis, nijenhuis_bracket, Tensor12};

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;

use crate::algebra::{det_adj, Poly, PolyMatrix, Rat, RatFn, RatOperator, VarCtx};
use crate::error::{Error, Result};
use crate::report::{Clause, Report};
use crate::wdvv::{check_wdvv, Prepotential};
use crate::Index3;

/// Symmetric array of functions `A_jl` with a distinguished pivot row.
#[derive(Clone, Debug)]
pub struct SquareOfFunctions {
    pub ctx: VarCtx,
    a: PolyMatrix,
    pub pivot: usize,
}

impl SquareOfFunctions {
    pub fn new(ctx: VarCtx, a: PolyMatrix, pivot: usize) -> Result<Self> {
        if a.dim() != ctx.len() || a.nvars() != ctx.len() {
            return Err(Error::Input(format!(
                "square must be {n}x{n} over {n} variables",
                n = ctx.len()
            )));
        }
        if !a.is_symmetric() {
            return Err(Error::Input("the square of functions is not symmetric".into()));
        }
        if pivot >= ctx.len() {
            return Err(Error::IndexOutOfRange {
                index: pivot,
                nvars: ctx.len(),
            });
        }
        Ok(Self { ctx, a, pivot })
    }

    /// The Hessian square of `f`.
    pub fn hessian_of(ctx: VarCtx, f: &Poly, pivot: usize) -> Result<Self> {
        Self::new(ctx, crate::wdvv::hessian(f), pivot)
    }

    pub fn dim(&self) -> usize {
        self.ctx.len()
    }

    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn entry(&self, j: usize, l: usize) -> &Poly {
        self.a.get(j, l)
    }

    /// The pivot 1-form `dA = dA_pp`.
    pub fn pivot_form(&self) -> OneForm {
        OneForm::exact(self.entry(self.pivot, self.pivot))
    }

    /// The a-coordinates `a_l = A_pl`.
    pub fn a_coordinates(&self) -> Vec<Poly> {
        self.a.row(self.pivot).to_vec()
    }

    /// `M_j[l][m] = ∂_m A_jl`.
    pub fn differential_matrix(&self, j: usize) -> PolyMatrix {
        let n = self.dim();
        PolyMatrix::from_fn(n, n, |l, m| self.entry(j, l).derivative(m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionOperator {
    pub index: usize,
    pub op: RatOperator,
}

impl RecursionOperator {
    pub fn new(index: usize, op: RatOperator) -> Self {
        Self { index, op }
    }
}

/// `K_j` with `K_j da_l = dA_jl`, all over the common denominator `det(M_p)`.
pub fn recursion_operators(s: &SquareOfFunctions) -> Result<Vec<RecursionOperator>> {
    let m_pivot = s.differential_matrix(s.pivot);
    let (det, adj) = det_adj(&m_pivot);
    if det.is_zero() {
        return Err(Error::DegeneratePivot);
    }
    (0..s.dim())
        .map(|j| {
            let num = if j == s.pivot {
                PolyMatrix::identity(s.dim(), s.dim()).scale(&det)
            } else {
                &adj * &s.differential_matrix(j)
            };
            Ok(RecursionOperator::new(j, RatOperator::new(num, det.clone())?))
        })
        .collect()
}

/// `X_j = K_j X`.
pub fn lenard_chain(ops: &[RecursionOperator], x: &VectorField) -> Vec<VectorField> {
    ops.iter().map(|k| apply_operator(&k.op, x)).collect()
}

/// Three-point correlation functions `c_jlm = dA_jl(X_m)`.
#[derive(Clone, Debug)]
pub struct Correlations {
    n: usize,
    values: Vec<RatFn>,
}

impl Correlations {
    pub fn get(&self, j: usize, l: usize, m: usize) -> &RatFn {
        &self.values[(j * self.n + l) * self.n + m]
    }

    /// First index triple whose value differs from a permutation of itself.
    pub fn symmetry_violation(&self) -> Option<(Index3, Index3)> {
        let n = self.n;
        for j in 0..n {
            for l in 0..n {
                for m in 0..n {
                    let base = self.get(j, l, m);
                    // transpositions generate the symmetric group
                    for other in [(l, j, m), (j, m, l)] {
                        if self.get(other.0, other.1, other.2) != base {
                            return Some(((j, l, m), other));
                        }
                    }
                }
            }
        }
        None
    }
}

pub fn correlations(s: &SquareOfFunctions, chain: &[VectorField]) -> Result<Correlations> {
    let n = s.dim();
    if chain.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: chain.len(),
        });
    }
    let mut values = Vec::with_capacity(n * n * n);
    for j in 0..n {
        for l in 0..n {
            let form = OneForm::exact(s.entry(j, l));
            for x in chain {
                values.push(form.pair(x));
            }
        }
    }
    Ok(Correlations { n, values })
}

fn describe_field(v: &VectorField, ctx: &VarCtx) -> String {
    let parts: Vec<String> = v.components.iter().map(|c| c.to_string_in(ctx)).collect();
    format!("({})", parts.join(", "))
}

/// First non-commuting pair of the chain, with the bracket.
fn chain_bracket_witness(chain: &[VectorField], ctx: &VarCtx) -> Option<String> {
    for j in 0..chain.len() {
        for l in j + 1..chain.len() {
            let b = lie_bracket(&chain[j], &chain[l]);
            if !b.is_zero() {
                return Some(format!("[X{}, X{}] = {}", j + 1, l + 1, describe_field(&b, ctx)));
            }
        }
    }
    None
}

/// Generic linear independence: the determinant of the component matrix,
/// with each column's denominators cleared, is not identically zero.
pub fn chain_is_independent(chain: &[VectorField]) -> bool {
    let n = chain.len();
    let Some(nv) = chain.first().and_then(|x| x.components.first()).map(RatFn::nvars) else {
        return false;
    };
    let columns: Vec<Vec<Poly>> = chain
        .iter()
        .map(|x| {
            let clear = x.components.iter().fold(Poly::one(nv), |acc, c| &acc * c.den());
            x.components
                .iter()
                .map(|c| {
                    (c.num() * &clear)
                        .div_exact(c.den())
                        .expect("denominator divides the product")
                })
                .collect()
        })
        .collect();
    let m = PolyMatrix::from_fn(n, nv, |i, j| columns[j][i].clone());
    !m.det().is_zero()
}

/// Lemma-1 conditions: the chain of `X` commutes and is independent (I),
/// and `dA_jl(X_m)` is totally symmetric (II).
pub fn check_lemma1(s: &SquareOfFunctions, x: &VectorField) -> Result<Report> {
    let ops = recursion_operators(s)?;
    let chain = lenard_chain(&ops, x);
    let commute = chain_bracket_witness(&chain, &s.ctx);
    let independent = chain_is_independent(&chain);
    let corr = correlations(s, &chain)?;
    let symmetric = corr.symmetry_violation().map(|((j, l, m), (a, b, c))| {
        format!(
            "c[{},{},{}] = {} but c[{},{},{}] = {}",
            j + 1,
            l + 1,
            m + 1,
            corr.get(j, l, m).to_string_in(&s.ctx),
            a + 1,
            b + 1,
            c + 1,
            corr.get(a, b, c).to_string_in(&s.ctx)
        )
    });
    let chain_json: Vec<String> = chain.iter().map(|v| describe_field(v, &s.ctx)).collect();
    Ok(Report::from_clauses(
        "lemma1",
        vec![
            Clause::from_witness("chain_commutes", commute),
            Clause::from_witness(
                "chain_independent",
                (!independent).then(|| "chain component determinant vanishes identically".to_string()),
            ),
            Clause::from_witness("correlations_symmetric", symmetric),
        ],
    )
    .with_data("chain", json!(chain_json)))
}

/// Index triple where `∂_m A_jl` fails to be totally symmetric, if any.
fn third_derivative_asymmetry(s: &SquareOfFunctions) -> Option<(usize, usize, usize)> {
    let n = s.dim();
    for j in 0..n {
        for l in 0..n {
            for m in 0..n {
                if s.entry(j, l).derivative(m) != s.entry(j, m).derivative(l) {
                    return Some((j, l, m));
                }
            }
        }
    }
    None
}

/// `F` with `Hessian(F) = A`, normalized so `F` and `∇F` vanish at the origin.
///
/// Uses `F(x) = ∫₀¹ (1−t) xᵀA(tx)x dt`, term by term: a degree-`d` monomial of
/// `A_jl·x_j·x_l` picks up `1/((d+1)(d+2))`.
pub fn integrate_hessian(s: &SquareOfFunctions) -> Result<Poly> {
    if let Some((j, l, m)) = third_derivative_asymmetry(s) {
        return Err(Error::Precondition(format!(
            "d{} A[{},{}] != d{} A[{},{}]; the square is not a Hessian in these coordinates",
            m + 1,
            j + 1,
            l + 1,
            l + 1,
            j + 1,
            m + 1
        )));
    }
    let n = s.dim();
    let mut f = Poly::zero(n);
    for j in 0..n {
        for l in 0..n {
            let xjxl = &Poly::var(n, j) * &Poly::var(n, l);
            for (mono, c) in s.entry(j, l).terms() {
                let d = i64::from(mono.degree());
                let weight = Rat::new(BigInt::from(1), BigInt::from((d + 1) * (d + 2)));
                f += &(&Poly::term(mono.clone(), c * weight) * &xjxl);
            }
        }
    }
    if crate::wdvv::hessian(&f) != *s.a() {
        return Err(Error::Internal(
            "integrated potential does not reproduce the square".into(),
        ));
    }
    Ok(f)
}

/// Lemma-2 check: the recursion operators commute in pairs. When the square
/// is a Hessian in the given coordinates the verdict is cross-checked with
/// the WDVV residuals of the integrated potential.
pub fn check_lemma2(s: &SquareOfFunctions, x: &VectorField) -> Result<Report> {
    let ops = recursion_operators(s)?;
    let commute = operators_commute_witness(&ops, &s.ctx);
    let commutes = commute.is_none();
    let mut clauses = vec![Clause::from_witness("operators_commute", commute)];
    let mut report_data = Vec::new();
    if let Ok(f) = integrate_hessian(s) {
        let prep = Prepotential::new(s.ctx.clone(), f.clone(), s.pivot)?;
        let verdict = check_wdvv(&prep)?;
        clauses.push(Clause::from_witness(
            "agrees_with_wdvv",
            (verdict.satisfied != commutes).then(|| {
                format!(
                    "operators commute = {commutes} but WDVV satisfied = {}",
                    verdict.satisfied
                )
            }),
        ));
        report_data.push(("potential", json!(f.to_string_in(&s.ctx))));
        report_data.push(("wdvv_satisfied", json!(verdict.satisfied)));
    }
    let lemma1 = check_lemma1(s, x)?;
    let correspondence = commutes && lemma1.passed();
    report_data.push(("proposition_correspondence", json!(correspondence)));
    let mut report = Report::from_clauses("lemma2", clauses);
    for (k, v) in report_data {
        report = report.with_data(k, v);
    }
    Ok(report)
}

fn operators_commute_witness(ops: &[RecursionOperator], ctx: &VarCtx) -> Option<String> {
    for a in 0..ops.len() {
        for b in a + 1..ops.len() {
            let c = ops[a].op.commutator_num(&ops[b].op);
            if let Some((i, j, p)) = c.first_nonzero() {
                return Some(format!(
                    "[K{}, K{}] entry ({},{}) has term {}",
                    ops[a].index + 1,
                    ops[b].index + 1,
                    i + 1,
                    j + 1,
                    p.leading_monomial_poly().to_string_in(ctx)
                ));
            }
        }
    }
    None
}

/// Whether all pairwise operator commutators vanish identically.
pub fn operators_commute(ops: &[RecursionOperator]) -> bool {
    (0..ops.len()).all(|a| (a + 1..ops.len()).all(|b| ops[a].op.commutator_num(&ops[b].op).is_zero()))
}

/// Lenard-complex clauses: commuting operators, commuting chain `X_j = K_j X`,
/// closed `θ_j = dA·K_j` and `θ_jl = dA·K_j·K_l`, unity `K_pivot = Id`, and
/// vanishing Haantjes torsion of every `K_j`.
pub fn check_lenard_complex(
    ctx: &VarCtx,
    x: &VectorField,
    a_potential: &Poly,
    ops: &[RecursionOperator],
    pivot: usize,
) -> Result<Report> {
    let n = ctx.len();
    if ops.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: ops.len(),
        });
    }
    let commute = operators_commute_witness(ops, ctx);
    let chain = lenard_chain(ops, x);
    let chain_commutes = chain_bracket_witness(&chain, ctx);

    let da = OneForm::exact(a_potential);
    let thetas: Vec<OneForm> = ops.iter().map(|k| pull_oneform(&da, &k.op)).collect();
    let theta_closed = thetas.iter().enumerate().find_map(|(j, t)| {
        first_nonzero_2form(&d_oneform(t)).map(|(a, b, v)| {
            format!(
                "d theta_{} has ({},{}) component {}",
                j + 1,
                a + 1,
                b + 1,
                v.to_string_in(ctx)
            )
        })
    });
    let mut square_closed = None;
    'outer: for (j, theta) in thetas.iter().enumerate() {
        for (l, k) in ops.iter().enumerate() {
            let t = pull_oneform(theta, &k.op);
            if let Some((a, b, v)) = first_nonzero_2form(&d_oneform(&t)) {
                square_closed = Some(format!(
                    "d theta_{}{} has ({},{}) component {}",
                    j + 1,
                    l + 1,
                    a + 1,
                    b + 1,
                    v.to_string_in(ctx)
                ));
                break 'outer;
            }
        }
    }
    let unity = ops
        .iter()
        .find(|k| k.index == pivot)
        .is_some_and(|k| k.op.is_identity());
    let haantjes_witness = ops.iter().find_map(|k| {
        let h = haantjes(&k.op);
        h.first_nonzero().map(|(i, a, b)| {
            format!(
                "H(K{})^{}_{}{} = {}",
                k.index + 1,
                i + 1,
                a + 1,
                b + 1,
                h.component(i, a, b).to_string_in(ctx)
            )
        })
    });
    Ok(Report::from_clauses(
        "lenard-complex",
        vec![
            Clause::from_witness("operators_commute", commute),
            Clause::from_witness("chain_commutes", chain_commutes),
            Clause::from_witness("theta_closed", theta_closed),
            Clause::from_witness("theta_square_closed", square_closed),
            Clause::from_witness("unity", (!unity).then(|| format!("K{} is not the identity", pivot + 1))),
            Clause::from_witness("haantjes_zero", haantjes_witness),
        ],
    )
    .with_data("unity", json!(unity)))
}

/// Haantjes torsion of each operator, with the Nijenhuis torsion alongside.
pub fn torsion_report(ctx: &VarCtx, ops: &[RecursionOperator]) -> Report {
    let mut clauses = Vec::new();
    let mut nijenhuis_zero = Vec::new();
    for k in ops {
        let h = haantjes(&k.op);
        let witness = h.first_nonzero().map(|(i, a, b)| {
            format!(
                "H^{}_{}{} = {}",
                i + 1,
                a + 1,
                b + 1,
                h.component(i, a, b).to_string_in(ctx)
            )
        });
        clauses.push(Clause::from_witness(format!("haantjes_zero.K{}", k.index + 1), witness));
        nijenhuis_zero.push(json!([k.index + 1, nijenhuis(&k.op).is_zero()]));
    }
    Report::from_clauses("haantjes", clauses).with_data("nijenhuis_zero", json!(nijenhuis_zero))
}

/// Sample points where no denominator of `ops` vanishes.
pub fn is_regular_point(ops: &[RecursionOperator], point: &[Rat]) -> bool {
    ops.iter()
        .all(|k| k.op.den().eval(point).map(|v| !v.is_zero()).unwrap_or(false))
}
