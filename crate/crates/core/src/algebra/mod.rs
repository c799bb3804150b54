//! Exact arithmetic: rationals, polynomials, rational functions and
//! polynomial matrices over a fixed ordered list of variables.

mod ctx;
mod gcd;
mod matrix;
mod parse;
mod poly;
mod ratfn;

pub use ctx::VarCtx;
pub use gcd::{gcd, gcd_many};
pub use matrix::{det_adj, PolyMatrix, RatOperator};
pub use parse::parse_expr;
pub use poly::{Monomial, Poly, PolyDisplay};
pub use ratfn::RatFn;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rat {
    Rat::from_integer(BigInt::from(value))
}

pub(crate) fn fmt_rat(value: &Rat) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}
