//! Seeded generators for test corpora and the documented fixtures.
//!
//! Every generator takes an explicit RNG so corpora are reproducible from a
//! seed. The solution families are exact: for
//! `F = ½(x1²x3 + x1x2²) + f(x2, x3)` the WDVV system with pivot `x1` reduces
//! to the single equation `f₂₂₃² = f₃₃₃ + f₂₂₂·f₂₃₃`, which the families
//! below satisfy identically.

use num_bigint::BigInt;
use rand::Rng;

use crate::algebra::{parse_expr, Monomial, Poly, PolyMatrix, Rat, RatOperator, VarCtx};
use crate::kontsevich::{nk_recursion, GwTable};
use crate::wdvv::{hessian_data, Prepotential};

/// `½(x1²x3 + x1x2²)`: the ordinary solution with antidiagonal metric.
pub const QUAD: &str = "1/2*(x1^2*x3 + x1*x2^2)";

/// `QUAD + x2⁴ + x3⁴`, which violates the WDVV equations.
pub const QUAD_PERTURBED: &str = "1/2*(x1^2*x3 + x1*x2^2) + x2^4 + x3^4";

pub fn quad() -> Prepotential {
    fixture(QUAD)
}

pub fn quad_perturbed() -> Prepotential {
    fixture(QUAD_PERTURBED)
}

fn fixture(text: &str) -> Prepotential {
    let ctx = VarCtx::standard(3);
    let f = parse_expr(text, &ctx).expect("fixture parses");
    Prepotential::with_default_pivot(ctx, f).expect("fixture is well-formed")
}

/// The Kontsevich table through `order` with `N_3` replaced by 13.
pub fn perturbed_kontsevich_table(order: u32) -> GwTable {
    assert!(order >= 3, "the perturbation needs N_3");
    let mut table = nk_recursion(order).expect("the recursion is integral");
    table.set(3, BigInt::from(13));
    table
}

/// `p/q` with `|p| ≤ bound` and `1 ≤ q ≤ bound`.
pub fn random_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    Rat::new(p.into(), q.into())
}

/// Nonzero variant of [`random_rat`].
pub fn random_nonzero_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    loop {
        let r = random_rat(rng, bound);
        if !num_traits::Zero::is_zero(&r) {
            return r;
        }
    }
}

/// Polynomial with up to `terms` terms of total degree `≤ max_degree`.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..terms {
        let degree = rng.gen_range(0..=max_degree);
        p += &Poly::term(random_monomial(rng, nvars, degree), random_rat(rng, 5));
    }
    p
}

/// Uniform-ish exponent vector of the given total degree.
fn random_monomial<R: Rng>(rng: &mut R, nvars: usize, degree: u32) -> Monomial {
    let mut exps = vec![0u32; nvars];
    for _ in 0..degree {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::new(exps)
}

/// Random prepotential of degree `≤ max_degree` with a non-degenerate pivot
/// `x1`; cubic terms are always present so the third derivatives are not all
/// zero.
pub fn random_prepotential<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32) -> Prepotential {
    let ctx = VarCtx::standard(nvars);
    loop {
        let mut f = random_poly(rng, nvars, max_degree, 2 * nvars + 2);
        for _ in 0..nvars {
            f += &Poly::term(random_monomial(rng, nvars, 3.min(max_degree)), random_rat(rng, 5));
        }
        let p = Prepotential::with_default_pivot(ctx.clone(), f).expect("standard context");
        if !hessian_data(&p).pivot_degenerate {
            return p;
        }
    }
}

/// Random polynomial of degree `≤ 2` in all variables; adding it to a
/// prepotential leaves every third derivative unchanged.
pub fn random_quadratic<R: Rng>(rng: &mut R, nvars: usize) -> Poly {
    random_poly(rng, nvars, 2, nvars + 1)
}

/// `QUAD + f` with `f = a/6 x2³ + b/2 x2²x3 + c/2 x2x3² + d/6 x3³`,
/// `d = b² − ac`, plus random quadratic terms: an ordinary WDVV solution.
pub fn cubic_family<R: Rng>(rng: &mut R) -> Prepotential {
    let ctx = VarCtx::standard(3);
    let (a, b, c) = (random_rat(rng, 4), random_rat(rng, 4), random_rat(rng, 4));
    let d = &b * &b - &a * &c;
    let mono = |e2: u32, e3: u32, coeff: Rat| Poly::term(Monomial::new(vec![0, e2, e3]), coeff);
    let f = mono(3, 0, &a / Rat::from_integer(6.into()))
        + mono(2, 1, &b / Rat::from_integer(2.into()))
        + mono(1, 2, &c / Rat::from_integer(2.into()))
        + mono(0, 3, &d / Rat::from_integer(6.into()));
    let total = &(&quad().f + &f) + &random_quadratic(rng, 3);
    Prepotential::with_default_pivot(ctx, total).expect("standard context")
}

/// `QUAD + g(x2) + b/2 x2²x3 + b²/6 x3³` with `g` a random polynomial of
/// degree `≤ max_degree`, plus random quadratic terms: `f₂₃₃ = 0` makes the
/// reduced equation independent of `g`.
pub fn x2_family<R: Rng>(rng: &mut R, max_degree: u32) -> Prepotential {
    let ctx = VarCtx::standard(3);
    let b = random_rat(rng, 4);
    let mono = |e2: u32, e3: u32, coeff: Rat| Poly::term(Monomial::new(vec![0, e2, e3]), coeff);
    let mut f = mono(2, 1, &b / Rat::from_integer(2.into())) + mono(0, 3, &b * &b / Rat::from_integer(6.into()));
    for e in 3..=max_degree {
        f += &mono(e, 0, random_rat(rng, 5));
    }
    let total = &(&quad().f + &f) + &random_quadratic(rng, 3);
    Prepotential::with_default_pivot(ctx, total).expect("standard context")
}

/// Ordinary WDVV solutions of degree `≤ 4`, alternating the two families.
pub fn ordinary_solutions<R: Rng>(rng: &mut R, count: usize) -> Vec<Prepotential> {
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                cubic_family(rng)
            } else {
                x2_family(rng, 4)
            }
        })
        .collect()
}

/// Polynomial operator with entries of degree `≤ max_degree`.
pub fn random_operator<R: Rng>(rng: &mut R, dim: usize, max_degree: u32) -> RatOperator {
    let m = PolyMatrix::from_fn(dim, dim, |_, _| random_poly(rng, dim, max_degree, 2));
    RatOperator::from_matrix(m)
}

/// Random rational point with small entries.
pub fn random_point<R: Rng>(rng: &mut R, nvars: usize) -> Vec<Rat> {
    (0..nvars).map(|_| random_rat(rng, 7)).collect()
}
