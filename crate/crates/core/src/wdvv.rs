//! Hessian field of a prepotential and the matrix WDVV equations.
//!
//! With `h = Hessian(F)` and `c_j = ∂h/∂x_j`, the equations read
//! `c_j c_p⁻¹ c_l = c_l c_p⁻¹ c_j` for a chosen invertible pivot slice `c_p`.
//! The inverse is never formed: `c_p⁻¹ = adj(c_p) / det(c_p)` and the scalar
//! determinant commutes, so the residuals `c_j·adj·c_l − c_l·adj·c_j` are
//! polynomial matrices that vanish exactly on solutions.

use serde_json::json;

use crate::algebra::{det_adj, Poly, PolyMatrix, RatOperator, VarCtx};
use crate::error::{Error, Result};
use crate::report::{Clause, Report};

#[derive(Clone, Debug)]
pub struct Prepotential {
    pub ctx: VarCtx,
    pub f: Poly,
    /// 0-based index of the pivot slice.
    pub pivot: usize,
}

impl Prepotential {
    pub fn new(ctx: VarCtx, f: Poly, pivot: usize) -> Result<Self> {
        if ctx.len() < 2 {
            return Err(Error::Input("a prepotential needs at least two variables".into()));
        }
        if f.nvars() != ctx.len() {
            return Err(Error::Input("prepotential uses a different variable list".into()));
        }
        if pivot >= ctx.len() {
            return Err(Error::IndexOutOfRange {
                index: pivot,
                nvars: ctx.len(),
            });
        }
        Ok(Self { ctx, f, pivot })
    }

    /// Pivot `x1`.
    pub fn with_default_pivot(ctx: VarCtx, f: Poly) -> Result<Self> {
        Self::new(ctx, f, 0)
    }

    pub fn dim(&self) -> usize {
        self.ctx.len()
    }
}

#[derive(Clone, Debug)]
pub struct HessianData {
    pub h: PolyMatrix,
    /// `c[j] = ∂h/∂x_j`.
    pub c: Vec<PolyMatrix>,
    pub det1: Poly,
    pub adj1: PolyMatrix,
    pub pivot: usize,
    pub pivot_degenerate: bool,
}

pub fn hessian(f: &Poly) -> PolyMatrix {
    let n = f.nvars();
    let grad: Vec<Poly> = (0..n).map(|i| f.derivative(i)).collect();
    PolyMatrix::from_fn(n, n, |j, l| grad[j.min(l)].derivative(j.max(l)))
}

pub fn hessian_data(p: &Prepotential) -> HessianData {
    let n = p.dim();
    let h = hessian(&p.f);
    let c: Vec<PolyMatrix> = (0..n).map(|j| h.derivative(j)).collect();
    let (det1, adj1) = det_adj(&c[p.pivot]);
    let pivot_degenerate = det1.is_zero();
    HessianData {
        h,
        c,
        det1,
        adj1,
        pivot: p.pivot,
        pivot_degenerate,
    }
}

/// Cleared-denominator residual `R_jl = c_j·adj·c_l − c_l·adj·c_j`.
#[derive(Clone, Debug)]
pub struct Residual {
    pub j: usize,
    pub l: usize,
    pub matrix: PolyMatrix,
}

/// Residuals for every pair `j < l`.
pub fn wdvv_residuals(p: &Prepotential) -> Result<Vec<Residual>> {
    let data = hessian_data(p);
    residuals_from(&data)
}

fn residuals_from(data: &HessianData) -> Result<Vec<Residual>> {
    if data.pivot_degenerate {
        return Err(Error::DegeneratePivot);
    }
    let n = data.c.len();
    // adj·c_l is shared between the two products of each pair.
    let adj_c: Vec<PolyMatrix> = data.c.iter().map(|c| &data.adj1 * c).collect();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for j in 0..n {
        for l in j + 1..n {
            let matrix = &(&data.c[j] * &adj_c[l]) - &(&data.c[l] * &adj_c[j]);
            out.push(Residual { j, l, matrix });
        }
    }
    Ok(out)
}

/// A nonzero residual entry, reported by one of its monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub j: usize,
    pub l: usize,
    pub row: usize,
    pub col: usize,
    pub monomial: Poly,
}

impl Witness {
    pub fn describe(&self, ctx: &VarCtx) -> String {
        format!(
            "R[{},{}] entry ({},{}) has term {}",
            self.j + 1,
            self.l + 1,
            self.row + 1,
            self.col + 1,
            self.monomial.to_string_in(ctx)
        )
    }
}

#[derive(Clone, Debug)]
pub struct WdvvVerdict {
    /// Generalized WDVV: every residual vanishes.
    pub satisfied: bool,
    /// The pivot slice is constant (`∂c_p/∂x_j = 0` for all `j`).
    pub ordinary: bool,
    pub witnesses: Vec<Witness>,
    /// First non-constant entry of the pivot slice when `ordinary` is false.
    pub ordinary_witness: Option<(usize, usize, Poly)>,
}

impl WdvvVerdict {
    pub fn is_ordinary_solution(&self) -> bool {
        self.satisfied && self.ordinary
    }

    /// Report with `residuals_zero` and, when `require_ordinary`, `ordinary`.
    pub fn to_report(&self, ctx: &VarCtx, require_ordinary: bool) -> Report {
        let residuals = Clause::from_witness("residuals_zero", self.witnesses.first().map(|w| w.describe(ctx)));
        let ordinary_witness = self.ordinary_witness.as_ref().map(|(i, j, p)| {
            format!(
                "pivot slice entry ({},{}) = {} is not constant",
                i + 1,
                j + 1,
                p.to_string_in(ctx)
            )
        });
        let mut clauses = vec![residuals];
        if require_ordinary {
            clauses.push(Clause::from_witness("ordinary", ordinary_witness));
        }
        Report::from_clauses("check-wdvv", clauses)
            .with_data("satisfied", json!(self.satisfied))
            .with_data("ordinary", json!(self.ordinary))
    }
}

pub fn check_wdvv(p: &Prepotential) -> Result<WdvvVerdict> {
    let data = hessian_data(p);
    let residuals = residuals_from(&data)?;
    let witnesses: Vec<Witness> = residuals
        .iter()
        .filter_map(|r| {
            r.matrix.first_nonzero().map(|(row, col, poly)| Witness {
                j: r.j,
                l: r.l,
                row,
                col,
                monomial: poly.leading_monomial_poly(),
            })
        })
        .collect();
    let slice = &data.c[data.pivot];
    let ordinary_witness = slice
        .entries()
        .iter()
        .position(|e| !e.is_constant())
        .map(|k| (k / slice.dim(), k % slice.dim(), slice.entries()[k].clone()));
    Ok(WdvvVerdict {
        satisfied: witnesses.is_empty(),
        ordinary: ordinary_witness.is_none(),
        witnesses,
        ordinary_witness,
    })
}

/// `C_j = c_p⁻¹ c_j` as `(adj·c_j, det)`; `C_p` is the identity.
pub fn structure_matrices(p: &Prepotential) -> Result<Vec<RatOperator>> {
    let data = hessian_data(p);
    structure_from(&data)
}

pub(crate) fn structure_from(data: &HessianData) -> Result<Vec<RatOperator>> {
    if data.pivot_degenerate {
        return Err(Error::DegeneratePivot);
    }
    data.c
        .iter()
        .map(|c| RatOperator::new(&data.adj1 * c, data.det1.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_expr, Rat};

    fn prep(text: &str, n: usize) -> Prepotential {
        let ctx = VarCtx::standard(n);
        let f = parse_expr(text, &ctx).unwrap();
        Prepotential::with_default_pivot(ctx, f).unwrap()
    }

    fn mat(n: usize, rows: &[&[&str]]) -> PolyMatrix {
        let ctx = VarCtx::standard(n);
        PolyMatrix::from_rows(
            n,
            rows.iter()
                .map(|r| r.iter().map(|e| parse_expr(e, &ctx).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    const QUAD: &str = "1/2*(x1^2*x3 + x1*x2^2)";

    #[test]
    fn hessian_of_quadratic_example() {
        let data = hessian_data(&prep(QUAD, 3));
        let expected = mat(3, &[&["x3", "x2", "x1"], &["x2", "x1", "0"], &["x1", "0", "0"]]);
        assert_eq!(data.h, expected);
        assert_eq!(
            data.c[0],
            mat(3, &[&["0", "0", "1"], &["0", "1", "0"], &["1", "0", "0"]])
        );
        assert!(!data.pivot_degenerate);
        assert_eq!(data.det1, Poly::from_int(3, -1));
    }

    #[test]
    fn zero_prepotential_is_degenerate() {
        let p = prep("0", 3);
        let data = hessian_data(&p);
        assert!(data.h.is_zero());
        assert!(data.pivot_degenerate);
        assert!(matches!(check_wdvv(&p), Err(Error::DegeneratePivot)));
        assert!(matches!(wdvv_residuals(&p), Err(Error::DegeneratePivot)));
    }

    #[test]
    fn cubic_prepotential_has_constant_slices() {
        let data = hessian_data(&prep("1/6*x1^3 + x1*x2^2 + x1*x2*x3 + 1/2*x3^2*x1", 3));
        assert!(data.c.iter().all(PolyMatrix::is_constant));
    }

    #[test]
    fn quadratic_example_is_ordinary_solution() {
        let p = prep(QUAD, 3);
        assert!(wdvv_residuals(&p).unwrap().iter().all(|r| r.matrix.is_zero()));
        let v = check_wdvv(&p).unwrap();
        assert!(v.satisfied && v.ordinary);
        assert!(v.to_report(&p.ctx, true).passed());
    }

    #[test]
    fn quartic_perturbation_fails_with_witness() {
        let p = prep(&format!("{QUAD} + x2^4 + x3^4"), 3);
        let v = check_wdvv(&p).unwrap();
        assert!(!v.satisfied);
        assert!(!v.witnesses.is_empty());
        let w = v
            .witnesses
            .iter()
            .find(|w| w.j == 1 && w.l == 2)
            .expect("pair (2,3) fails");
        assert!(!w.monomial.is_zero());
        let report = v.to_report(&p.ctx, false);
        assert!(!report.passed());
        assert!(report.clause("residuals_zero").unwrap().witness.is_some());
    }

    #[test]
    fn two_variables_always_satisfy() {
        let p = prep("x1^5 + 3*x1^2*x2^3 - 2/7*x2^4 + x1*x2", 2);
        let v = check_wdvv(&p).unwrap();
        assert!(v.satisfied);
        assert!(!v.ordinary);
    }

    #[test]
    fn structure_matrices_of_quadratic_example() {
        let ops = structure_matrices(&prep(QUAD, 3)).unwrap();
        let c2 = ops[1].normalized();
        let c3 = ops[2].normalized();
        assert!(ops[0].is_identity());
        assert_eq!(
            c2.num(),
            &mat(3, &[&["0", "0", "0"], &["1", "0", "0"], &["0", "1", "0"]])
        );
        assert_eq!(
            c3.num(),
            &mat(3, &[&["0", "0", "0"], &["0", "0", "0"], &["1", "0", "0"]])
        );
        assert_eq!(c2.den(), &Poly::one(3));
        assert!(ops[1].commutator_num(&ops[2]).is_zero());
        // numerator of C_2 is -(antidiagonal permutation of c_2) since det = -1
        let data = hessian_data(&prep(QUAD, 3));
        let flipped = PolyMatrix::from_fn(3, 3, |i, j| data.c[1].get(2 - i, j).clone());
        assert_eq!(ops[1].num(), &flipped.scale_rat(&-Rat::from(int(1))));
    }

    #[test]
    fn pivot_choice_is_covariant_under_swaps() {
        // symmetric under x1 <-> x2
        let ctx = VarCtx::standard(3);
        for text in [
            "x1^3 + x2^3 + x1*x2*x3 + x3^2*x1 + x3^2*x2",
            "x1^2*x2^2 + x1*x3^3 + x2*x3^3 + x3^4",
        ] {
            let f = parse_expr(text, &ctx).unwrap();
            let a = check_wdvv(&Prepotential::new(ctx.clone(), f.clone(), 0).unwrap()).unwrap();
            let b = check_wdvv(&Prepotential::new(ctx.clone(), f, 1).unwrap()).unwrap();
            assert_eq!(a.satisfied, b.satisfied);
        }
    }
}
