//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive scheme: pick the highest-index variable that occurs, split off
//! contents (gcds of coefficients, one variable fewer) and run a primitive
//! pseudo-remainder sequence on the primitive parts.

use super::Poly;

/// Monic gcd of `a` and `b`; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.nvars());
    }
    if a == b {
        return a.monic();
    }
    let n = a.nvars();
    if a.num_terms() == 1 || b.num_terms() == 1 {
        return monomial_gcd(a, b);
    }
    // A variable occurring in only one argument cannot occur in the gcd, which
    // then divides that argument's content with respect to the variable.
    for v in 0..n {
        match (a.degree_in(v) > 0, b.degree_in(v) > 0) {
            (true, false) => return gcd(&content(a, v), b),
            (false, true) => return gcd(a, &content(b, v)),
            _ => {}
        }
    }
    let var = (0..n)
        .rev()
        .find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
        .expect("non-constant polynomial has a variable");

    let content_a = content(a, var);
    let content_b = content(b, var);
    let content_gcd = gcd(&content_a, &content_b);
    let prim_a = a.div_exact(&content_a).expect("content divides");
    let prim_b = b.div_exact(&content_b).expect("content divides");
    let prim_gcd = primitive_prs(prim_a, prim_b, var);
    (&content_gcd * &prim_gcd).monic()
}

/// Gcd when at least one argument is a single term: the common power product.
fn monomial_gcd(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars();
    let mut exps = vec![u32::MAX; n];
    for p in [a, b] {
        for (m, _) in p.terms() {
            for (e, &d) in exps.iter_mut().zip(m.exponents()) {
                *e = (*e).min(d);
            }
        }
    }
    Poly::from_terms(n, [(exps, super::int(1))])
}

/// Gcd of a list of polynomials.
pub fn gcd_many<'a>(nvars: usize, polys: impl IntoIterator<Item = &'a Poly>) -> Poly {
    let mut acc = Poly::zero(nvars);
    for p in polys {
        if acc.is_constant() && !acc.is_zero() {
            break;
        }
        acc = gcd(&acc, p);
    }
    acc
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
fn content(p: &Poly, var: usize) -> Poly {
    let deg = p.degree_in(var);
    if deg == 0 {
        return p.monic();
    }
    let mut acc = Poly::zero(p.nvars());
    for d in (0..=deg).rev() {
        let c = p.coeff_in(var, d);
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            break;
        }
    }
    acc
}

fn primitive_part(p: &Poly, var: usize) -> Poly {
    let c = content(p, var);
    p.div_exact(&c).expect("content divides")
}

fn primitive_prs(a: Poly, b: Poly, var: usize) -> Poly {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if b.is_zero() {
            return primitive_part(&a, var);
        }
        if b.degree_in(var) == 0 {
            // b is primitive and free of `var`, hence a unit.
            return Poly::one(a.nvars());
        }
        let r = pseudo_remainder(&a, &b, var);
        a = b;
        // Rational scalars are units; normalizing keeps coefficients small.
        b = if r.is_zero() {
            r
        } else {
            primitive_part(&r, var).monic()
        };
    }
}

fn pseudo_remainder(a: &Poly, b: &Poly, var: usize) -> Poly {
    let n = a.nvars();
    let db = b.degree_in(var);
    let lb = b.coeff_in(var, db);
    let x = Poly::var(n, var);
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(var);
        if dr < db {
            break;
        }
        let lr = r.coeff_in(var, dr);
        r = &(&lb * &r) - &(&(&lr * &x.pow(dr - db)) * b);
    }
    r
}
