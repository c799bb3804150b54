//! The five Frobenius-manifold axioms, checked in flat coordinates.
//!
//! With a constant metric `g` the Christoffel symbols vanish, so the axioms
//! reduce to algebraic and differential identities of the structure
//! constants `C^l_jk`:
//!
//! 1. flat: `g` symmetric and invertible (a constant metric has zero curvature);
//! 2. compatible: `c_jkm = g_ml C^l_jk` totally symmetric;
//! 3. unity: `C^l_ek = δ^l_k`;
//! 4. covariantly constant unity: automatic for a coordinate field `e`;
//! 5. potential: `∂_m c_jkl` totally symmetric, i.e. `c_jkl = ∂³F`.
//!
//! Associativity is checked alongside as commutation of the matrices
//! `(L_j)^l_k = C^l_jk`.

use num_traits::Zero;
use serde_json::json;

use crate::algebra::{Poly, PolyMatrix, Rat, VarCtx};
use crate::error::{Error, Result};
use crate::report::{Clause, Report};
use crate::wdvv::{check_wdvv, hessian_data, Prepotential};
use crate::Index3;

const REDUCTION: &str = "flat coordinates with a constant metric: Christoffel symbols vanish, \
     covariant derivatives are partial derivatives and the unity is a coordinate field";

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusData {
    pub ctx: VarCtx,
    g: Vec<Vec<Rat>>,
    /// `C^l_jk` stored at `(l·n + j)·n + k`.
    c: Vec<Poly>,
    /// 0-based unity direction.
    e_index: usize,
}

impl FrobeniusData {
    /// Validates shapes only; symmetry and invertibility of `g` are axiom 1
    /// and are reported as verdicts by [`check_axioms`].
    pub fn new(ctx: VarCtx, g: Vec<Vec<Rat>>, c: Vec<Poly>, e_index: usize) -> Result<Self> {
        let n = ctx.len();
        if g.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: g.len(),
            });
        }
        if let Some(row) = g.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                got: row.len(),
            });
        }
        if c.len() != n * n * n {
            return Err(Error::LengthMismatch {
                expected: n * n * n,
                got: c.len(),
            });
        }
        if c.iter().any(|p| p.nvars() != n) {
            return Err(Error::Input("structure constants use a different variable list".into()));
        }
        if e_index >= n {
            return Err(Error::IndexOutOfRange {
                index: e_index,
                nvars: n,
            });
        }
        Ok(Self { ctx, g, c, e_index })
    }

    pub fn dim(&self) -> usize {
        self.ctx.len()
    }

    pub fn g(&self) -> &[Vec<Rat>] {
        &self.g
    }

    pub fn e_index(&self) -> usize {
        self.e_index
    }

    /// `C^l_jk`.
    pub fn structure_constant(&self, l: usize, j: usize, k: usize) -> &Poly {
        let n = self.dim();
        &self.c[(l * n + j) * n + k]
    }

    /// Replaces `C^l_jk`; used to build controlled violations.
    pub fn set_structure_constant(&mut self, l: usize, j: usize, k: usize, value: Poly) {
        let n = self.dim();
        self.c[(l * n + j) * n + k] = value;
    }

    /// `c_jkm = Σ_l g_ml C^l_jk`.
    pub fn lowered(&self, j: usize, k: usize, m: usize) -> Poly {
        let n = self.dim();
        let mut acc = Poly::zero(n);
        for l in 0..n {
            if !self.g[m][l].is_zero() {
                acc += &self.structure_constant(l, j, k).scale(&self.g[m][l]);
            }
        }
        acc
    }

    /// Multiplication operator `(L_j)^l_k = C^l_jk`.
    pub fn multiplication(&self, j: usize) -> PolyMatrix {
        let n = self.dim();
        PolyMatrix::from_fn(n, n, |l, k| self.structure_constant(l, j, k).clone())
    }

    fn metric_matrix(&self) -> PolyMatrix {
        let n = self.dim();
        PolyMatrix::from_fn(n, n, |a, b| Poly::constant(n, self.g[a][b].clone()))
    }
}

/// Frobenius data of an ordinary prepotential: `g = c_p` (constant) and
/// `C^l_jk = (c_p⁻¹ c_j)_lk`, with the pivot as unity direction.
///
/// Refuses prepotentials whose pivot slice is not constant, since then no
/// constant metric exists in these coordinates. A prepotential violating the
/// WDVV equations is accepted; its data then fails the associativity check.
pub fn from_prepotential(p: &Prepotential) -> Result<FrobeniusData> {
    let verdict = check_wdvv(p)?;
    if let Some((i, j, e)) = &verdict.ordinary_witness {
        return Err(Error::Precondition(format!(
            "pivot slice entry ({},{}) = {} is not constant: a generalized solution has no \
             constant metric in these coordinates",
            i + 1,
            j + 1,
            e.to_string_in(&p.ctx)
        )));
    }
    let data = hessian_data(p);
    let n = p.dim();
    let slice = &data.c[p.pivot];
    let g: Vec<Vec<Rat>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| slice.get(a, b).constant_value().expect("ordinary slice is constant"))
                .collect()
        })
        .collect();
    let det = data
        .det1
        .constant_value()
        .expect("constant slice has constant determinant");
    let inv_det = det.recip();
    let mut c = vec![Poly::zero(n); n * n * n];
    for j in 0..n {
        let cj = (&data.adj1 * &data.c[j]).scale_rat(&inv_det);
        for l in 0..n {
            for k in 0..n {
                c[(l * n + j) * n + k] = cj.get(l, k).clone();
            }
        }
    }
    FrobeniusData::new(p.ctx.clone(), g, c, p.pivot)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub flat: bool,
    pub compatible: bool,
    pub unity: bool,
    pub cov_const_e: bool,
    pub potential: bool,
    pub associative: bool,
    pub f_reconstructed: Option<Poly>,
    flat_witness: Option<String>,
    compatible_witness: Option<String>,
    unity_witness: Option<String>,
    potential_witness: Option<String>,
    associative_witness: Option<String>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.flat && self.compatible && self.unity && self.cov_const_e && self.potential && self.associative
    }

    pub fn to_report(&self, ctx: &VarCtx) -> Report {
        let mut report = Report::from_clauses(
            "check-frobenius",
            vec![
                Clause::from_witness("axiom1_flat", self.flat_witness.clone()),
                Clause::from_witness("axiom2_compatible", self.compatible_witness.clone()),
                Clause::from_witness("axiom3_unity", self.unity_witness.clone()),
                Clause::pass("axiom4_unity_covariantly_constant"),
                Clause::from_witness("axiom5_potential", self.potential_witness.clone()),
                Clause::from_witness("associative", self.associative_witness.clone()),
            ],
        )
        .with_data("reduction", json!(REDUCTION));
        if let Some(f) = &self.f_reconstructed {
            report = report.with_data("F_reconstructed", json!(f.to_string_in(ctx)));
        }
        report
    }
}

pub fn check_axioms(d: &FrobeniusData) -> AxiomReport {
    let n = d.dim();
    let ctx = &d.ctx;
    let flat_witness = metric_witness(d);

    let lowered: Vec<Poly> = (0..n * n * n)
        .map(|i| d.lowered(i / (n * n), (i / n) % n, i % n))
        .collect();
    let low = |j: usize, k: usize, m: usize| &lowered[(j * n + k) * n + m];
    let compatible_witness = total_symmetry_violation(n, low).map(|((a, b, c), (p, q, r))| {
        format!(
            "c_{}{}{} = {} but c_{}{}{} = {}",
            a + 1,
            b + 1,
            c + 1,
            low(a, b, c).to_string_in(ctx),
            p + 1,
            q + 1,
            r + 1,
            low(p, q, r).to_string_in(ctx)
        )
    });

    let e = d.e_index();
    let unity_witness = (0..n)
        .flat_map(|l| (0..n).map(move |k| (l, k)))
        .find(|&(l, k)| {
            let expected = if l == k { Poly::one(n) } else { Poly::zero(n) };
            *d.structure_constant(l, e, k) != expected
        })
        .map(|(l, k)| {
            format!(
                "C^{}_{}{} = {}, expected {}",
                l + 1,
                e + 1,
                k + 1,
                d.structure_constant(l, e, k).to_string_in(ctx),
                u8::from(l == k)
            )
        });

    let potential_witness = derivative_symmetry_violation(n, low).map(|(m, j, k, l)| {
        format!(
            "d{} c_{}{}{} != d{} c_{}{}{}",
            m + 1,
            j + 1,
            k + 1,
            l + 1,
            j + 1,
            m + 1,
            k + 1,
            l + 1
        )
    });

    let mult: Vec<PolyMatrix> = (0..n).map(|j| d.multiplication(j)).collect();
    let associative_witness = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find_map(|(a, b)| {
        mult[a].commutator(&mult[b]).first_nonzero().map(|(r, s, p)| {
            format!(
                "[L{}, L{}] entry ({},{}) has term {}",
                a + 1,
                b + 1,
                r + 1,
                s + 1,
                p.leading_monomial_poly().to_string_in(ctx)
            )
        })
    });

    let compatible = compatible_witness.is_none();
    let potential = potential_witness.is_none();
    let f_reconstructed = if compatible && potential {
        Some(integrate_third_derivatives(n, low))
    } else {
        None
    };
    AxiomReport {
        flat: flat_witness.is_none(),
        compatible,
        unity: unity_witness.is_none(),
        cov_const_e: true,
        potential,
        associative: associative_witness.is_none(),
        f_reconstructed,
        flat_witness,
        compatible_witness,
        unity_witness,
        potential_witness,
        associative_witness,
    }
}

/// `F` with `∂_j∂_k∂_m F = c_jkm`, vanishing with its first and second
/// derivatives at the origin.
pub fn reconstruct_prepotential(d: &FrobeniusData) -> Result<Poly> {
    let n = d.dim();
    let lowered: Vec<Poly> = (0..n * n * n)
        .map(|i| d.lowered(i / (n * n), (i / n) % n, i % n))
        .collect();
    let low = |j: usize, k: usize, m: usize| &lowered[(j * n + k) * n + m];
    if let Some(((a, b, c), _)) = total_symmetry_violation(n, low) {
        return Err(Error::Precondition(format!(
            "axiom 2 fails: c_{}{}{} is not totally symmetric",
            a + 1,
            b + 1,
            c + 1
        )));
    }
    if let Some((m, j, k, l)) = derivative_symmetry_violation(n, low) {
        return Err(Error::Precondition(format!(
            "axiom 5 fails: d{} c_{}{}{} is not symmetric",
            m + 1,
            j + 1,
            k + 1,
            l + 1
        )));
    }
    let f = integrate_third_derivatives(n, low);
    for j in 0..n {
        for k in 0..n {
            for m in 0..n {
                if f.derivative(j).derivative(k).derivative(m) != *low(j, k, m) {
                    return Err(Error::Internal(
                        "reconstructed potential does not reproduce c_jkm".into(),
                    ));
                }
            }
        }
    }
    Ok(f)
}

fn metric_witness(d: &FrobeniusData) -> Option<String> {
    let n = d.dim();
    for a in 0..n {
        for b in a + 1..n {
            if d.g[a][b] != d.g[b][a] {
                return Some(format!("g_{}{} != g_{}{}", a + 1, b + 1, b + 1, a + 1));
            }
        }
    }
    if d.metric_matrix().det().is_zero() {
        return Some("det g = 0".into());
    }
    None
}

/// First pair of index triples, related by a transposition, whose entries differ.
fn total_symmetry_violation<'a>(n: usize, t: impl Fn(usize, usize, usize) -> &'a Poly) -> Option<(Index3, Index3)> {
    for j in 0..n {
        for k in 0..n {
            for m in 0..n {
                for other in [(k, j, m), (j, m, k)] {
                    if t(j, k, m) != t(other.0, other.1, other.2) {
                        return Some(((j, k, m), other));
                    }
                }
            }
        }
    }
    None
}

/// With `c` totally symmetric, `∂_m c_jkl = ∂_j c_mkl` for all indices is
/// total symmetry of the four-index tensor.
fn derivative_symmetry_violation<'a>(
    n: usize,
    t: impl Fn(usize, usize, usize) -> &'a Poly,
) -> Option<(usize, usize, usize, usize)> {
    for m in 0..n {
        for j in m + 1..n {
            for k in 0..n {
                for l in 0..n {
                    if t(j, k, l).derivative(m) != t(m, k, l).derivative(j) {
                        return Some((m, j, k, l));
                    }
                }
            }
        }
    }
    None
}

/// `F(x) = ½∫₀¹ (1−t)² Σ c_jkm(tx) x_j x_k x_m dt`: a degree-`d` monomial of
/// `c_jkm` picks up `1/((d+1)(d+2)(d+3))`.
fn integrate_third_derivatives<'a>(n: usize, t: impl Fn(usize, usize, usize) -> &'a Poly) -> Poly {
    let mut f = Poly::zero(n);
    for j in 0..n {
        for k in 0..n {
            for m in 0..n {
                let cubic = &(&Poly::var(n, j) * &Poly::var(n, k)) * &Poly::var(n, m);
                for (mono, coeff) in t(j, k, m).terms() {
                    let d = i64::from(mono.degree());
                    let weight = Rat::new(1.into(), ((d + 1) * (d + 2) * (d + 3)).into());
                    f += &(&Poly::term(mono.clone(), coeff * weight) * &cubic);
                }
            }
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_expr};

    fn prep(f: &str, n: usize) -> Prepotential {
        let ctx = VarCtx::standard(n);
        let f = parse_expr(f, &ctx).unwrap();
        Prepotential::with_default_pivot(ctx, f).unwrap()
    }

    const QUAD: &str = "1/2*(x1^2*x3 + x1*x2^2)";

    #[test]
    fn quadratic_example_metric_and_unity() {
        let d = from_prepotential(&prep(QUAD, 3)).unwrap();
        let anti = |a: usize, b: usize| if a + b == 2 { int(1) } else { int(0) };
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(d.g()[a][b], anti(a, b));
            }
        }
        for l in 0..3 {
            for k in 0..3 {
                let expected = if l == k { Poly::one(3) } else { Poly::zero(3) };
                assert_eq!(*d.structure_constant(l, 0, k), expected);
            }
        }
    }

    #[test]
    fn quadratic_example_passes_all_axioms_and_round_trips() {
        let p = prep(QUAD, 3);
        let d = from_prepotential(&p).unwrap();
        let axioms = check_axioms(&d);
        assert!(axioms.all_pass(), "{axioms:?}");
        assert_eq!(axioms.f_reconstructed.as_ref(), Some(&p.f));
        assert_eq!(reconstruct_prepotential(&d).unwrap(), p.f);
        assert!(axioms.to_report(&p.ctx).passed());
    }

    #[test]
    fn lowered_constants_are_third_derivatives() {
        let p = prep("1/2*(x1^2*x3 + x1*x2^2) + x2^4*x3 - 1/3*x3^5", 3);
        let d = from_prepotential(&p).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                for m in 0..3 {
                    let third = p.f.derivative(j).derivative(k).derivative(m);
                    assert_eq!(d.lowered(j, k, m), third);
                }
            }
        }
    }

    #[test]
    fn non_ordinary_prepotential_is_refused() {
        // c_1 = [[6 x2, 3 x1], [3 x1, 0]] depends on the coordinates.
        let err = from_prepotential(&prep("x1^3*x2", 2)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn broken_symmetry_fails_compatibility_with_witness() {
        let mut d = from_prepotential(&prep(QUAD, 3)).unwrap();
        // C^1_23 = 0 originally; make c_231 = 1 while c_321 stays 0.
        d.set_structure_constant(2, 1, 2, Poly::one(3));
        let axioms = check_axioms(&d);
        assert!(!axioms.compatible);
        let report = axioms.to_report(&d.ctx);
        assert_eq!(report.status, crate::Status::Fail);
        assert!(report.clause("axiom2_compatible").unwrap().witness.is_some());
        assert!(axioms.f_reconstructed.is_none());
        assert!(reconstruct_prepotential(&d).is_err());
    }

    #[test]
    fn constant_symmetric_cubic_form() {
        let p = prep("x1^2*x2 + 2*x1*x2^2 - 3*x2^3 + 1/2*x1^3", 2);
        // Build raw data from c_jkm with g = identity.
        let n = 2;
        let mut c = vec![Poly::zero(n); n * n * n];
        for l in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[(l * n + j) * n + k] = p.f.derivative(j).derivative(k).derivative(l);
                }
            }
        }
        let g = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        let d = FrobeniusData::new(p.ctx.clone(), g, c, 0).unwrap();
        let axioms = check_axioms(&d);
        assert!(axioms.compatible && axioms.potential && axioms.flat);
        assert_eq!(reconstruct_prepotential(&d).unwrap(), p.f);
    }

    #[test]
    fn singular_metric_fails_flatness() {
        let mut d = from_prepotential(&prep(QUAD, 3)).unwrap();
        d.g = vec![vec![int(0); 3]; 3];
        let axioms = check_axioms(&d);
        assert!(!axioms.flat);
    }
}
