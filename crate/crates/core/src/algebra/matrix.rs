use std::ops::{Add, Mul, Sub};

use num_traits::One;

use super::{gcd_many, Poly, Rat};
use crate::error::{Error, Result};

/// Square matrix of polynomials, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    dim: usize,
    nvars: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn from_fn(dim: usize, nvars: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let e = f(i, j);
                assert_eq!(e.nvars(), nvars, "matrix entries must share one variable list");
                entries.push(e);
            }
        }
        Self { dim, nvars, entries }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Input("matrix is not square".into()));
        }
        if rows.iter().flatten().any(|p| p.nvars() != nvars) {
            return Err(Error::Input("matrix entries use different variable lists".into()));
        }
        Ok(Self {
            dim,
            nvars,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zero(dim: usize, nvars: usize) -> Self {
        Self::from_fn(dim, nvars, |_, _| Poly::zero(nvars))
    }

    pub fn identity(dim: usize, nvars: usize) -> Self {
        Self::from_fn(
            dim,
            nvars,
            |i, j| {
                if i == j {
                    Poly::one(nvars)
                } else {
                    Poly::zero(nvars)
                }
            },
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Poly) {
        assert_eq!(value.nvars(), self.nvars);
        self.entries[i * self.dim + j] = value;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self {
            dim: self.dim,
            nvars: self.nvars,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        self.map(|p| p.derivative(var))
    }

    pub fn scale(&self, factor: &Poly) -> Self {
        self.map(|p| p * factor)
    }

    pub fn scale_rat(&self, factor: &Rat) -> Self {
        self.map(|p| p.scale(factor))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, self.nvars, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(Poly::is_constant)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Poly)> {
        self.entries
            .iter()
            .position(|p| !p.is_zero())
            .map(|k| (k / self.dim, k % self.dim, &self.entries[k]))
    }

    pub fn mul_vec(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let mut acc = Poly::zero(self.nvars);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|j| {
                let mut acc = Poly::zero(self.nvars);
                for (i, a) in v.iter().enumerate() {
                    let b = self.get(i, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `(M, adj M)` with `M · adj M = det M · I`; see [`det_adj`].
    pub fn det_adj(&self) -> (Poly, PolyMatrix) {
        det_adj(self)
    }

    pub fn det(&self) -> Poly {
        bareiss_det(self)
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        PolyMatrix::from_fn(n, self.nvars, |i, j| {
            let mut acc = Poly::zero(self.nvars);
            for k in 0..n {
                let (a, b) = (self.get(i, k), rhs.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
    }
}

impl Add for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.dim, rhs.dim);
        PolyMatrix::from_fn(self.dim, self.nvars, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl Sub for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.dim, rhs.dim);
        PolyMatrix::from_fn(self.dim, self.nvars, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

/// Determinant and adjugate by fraction-free (Bareiss) Gauss-Jordan
/// elimination on `[M | I]`. Every division is exact, so intermediate
/// entries stay polynomial. Singular input falls back to cofactors for the
/// adjugate; the determinant is then the zero polynomial.
pub fn det_adj(m: &PolyMatrix) -> (Poly, PolyMatrix) {
    let n = m.dim;
    let nv = m.nvars;
    let width = 2 * n;
    let mut a: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            let mut row: Vec<Poly> = m.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { Poly::one(nv) } else { Poly::zero(nv) }));
            row
        })
        .collect();
    let mut prev = Poly::one(nv);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return (Poly::zero(nv), cofactor_adjugate(m));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let pivot_row = a[k].clone();
        let pivot = pivot_row[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            for j in 0..width {
                let updated = &(&pivot * &row[j]) - &(&factor * &pivot_row[j]);
                row[j] = updated.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = pivot;
    }
    let sign = if negate { -Rat::one() } else { Rat::one() };
    let det = a[n - 1][n - 1].scale(&sign);
    let adj = PolyMatrix::from_fn(n, nv, |i, j| a[i][n + j].scale(&sign));
    (det, adj)
}

fn bareiss_det(m: &PolyMatrix) -> Poly {
    let n = m.dim;
    let nv = m.nvars;
    if n == 0 {
        return Poly::one(nv);
    }
    let mut a: Vec<Vec<Poly>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = Poly::one(nv);
    let mut negate = false;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Poly::zero(nv);
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let updated = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = updated.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn cofactor_adjugate(m: &PolyMatrix) -> PolyMatrix {
    let n = m.dim;
    let nv = m.nvars;
    if n == 1 {
        return PolyMatrix::identity(1, nv);
    }
    PolyMatrix::from_fn(n, nv, |i, j| {
        // adj[i][j] = (-1)^(i+j) * minor(j, i)
        let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
        let minor = PolyMatrix::from_fn(n - 1, nv, |r, c| m.get(rows[r], cols[c]).clone());
        let d = bareiss_det(&minor);
        if (i + j) % 2 == 1 {
            -d
        } else {
            d
        }
    })
}

/// Matrix of rational functions held as a polynomial numerator over one
/// common scalar denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatOperator {
    num: PolyMatrix,
    den: Poly,
}

impl RatOperator {
    pub fn new(num: PolyMatrix, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Precondition("operator with zero denominator".into()));
        }
        if den.nvars() != num.nvars() {
            return Err(Error::Input("denominator uses a different variable list".into()));
        }
        Ok(Self { num, den })
    }

    pub fn from_matrix(num: PolyMatrix) -> Self {
        let den = Poly::one(num.nvars());
        Self { num, den }
    }

    pub fn identity(dim: usize, nvars: usize) -> Self {
        Self::from_matrix(PolyMatrix::identity(dim, nvars))
    }

    pub fn num(&self) -> &PolyMatrix {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn dim(&self) -> usize {
        self.num.dim()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    /// Cancels the common gcd of all entries and the denominator and makes
    /// the denominator monic.
    pub fn normalized(&self) -> Self {
        let nv = self.nvars();
        if self.num.is_zero() {
            return Self::from_matrix(PolyMatrix::zero(self.dim(), nv));
        }
        let g = if self.den.is_constant() {
            Poly::one(nv)
        } else {
            gcd_many(nv, std::iter::once(&self.den).chain(self.num.entries()))
        };
        let num = self.num.map(|p| p.div_exact(&g).expect("gcd divides entries"));
        let den = self.den.div_exact(&g).expect("gcd divides denominator");
        let inv = den.leading_term().expect("nonzero").1.recip();
        Self {
            num: num.scale_rat(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let e = self.num.get(i, j);
                if i == j {
                    *e == self.den
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    /// Numerator of `self·other − other·self` over `den(self)·den(other)`.
    pub fn commutator_num(&self, other: &Self) -> PolyMatrix {
        self.num.commutator(&other.num)
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Vec<Vec<Rat>>> {
        let d = self.den.eval(point)?;
        if num_traits::Zero::is_zero(&d) {
            return Err(Error::Precondition("denominator vanishes at the sample point".into()));
        }
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| Ok(self.num.get(i, j).eval(point)? / &d)).collect())
            .collect()
    }
}
