//! Exact verification toolkit for the WDVV associativity equations.
//!
//! Everything is computed over arbitrary-precision rationals in a single
//! coordinate chart, so every verdict is a polynomial identity:
//!
//! * [`algebra`]: rationals, multivariate polynomials, rational functions,
//!   polynomial matrices with a fraction-free determinant/adjugate, and the
//!   expression parser used by all input documents.
//! * [`wdvv`]: Hessian field, gradient slices, residuals of the matrix WDVV
//!   equations and the associativity form.
//! * [`kontsevich`]: the rational-curve numbers `N_k` of the plane, computed
//!   by the closed recursion and independently by coefficient matching.
//! * [`lenard`]: recursion operators, Lenard chains, Nijenhuis and Haantjes
//!   torsion, and the Lenard-complex checks.
//! * [`frobenius`]: the five Frobenius-manifold axioms in flat coordinates.
//! * [`report`]: the pass/fail report shared by the command-line front end.

// Tensor code reads best with explicit index loops.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod frobenius;
pub mod input;
pub mod kontsevich;
pub mod lenard;
pub mod report;
pub mod wdvv;

/// A 0-based index triple `(j, k, m)`.
pub type Index3 = (usize, usize, usize);

pub use algebra::{det_adj, parse_expr, Poly, PolyMatrix, Rat, RatFn, RatOperator, VarCtx};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use report::{Clause, Report, Status};
