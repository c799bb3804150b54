//! Nijenhuis and Haantjes torsion of a (1,1)-tensor field.
//!
//! Component form works on `K = P/d` directly: with `D_m Q = d·∂_m Q − Q·∂_m d`
//! every term of the Nijenhuis torsion has denominator `d³` and every term of
//! the Haantjes torsion has denominator `d⁵`, so both are stored as a
//! polynomial numerator tensor over one scalar denominator. The bracket form
//! is kept alongside as an independent route, evaluated pointwise.

use num_traits::Zero;

use super::fields::VectorField;
use crate::algebra::{Poly, PolyMatrix, Rat, RatFn, RatOperator};
use crate::error::{Error, Result};

/// `T^i_jk`, antisymmetric in `(j, k)`, over a common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor12 {
    dim: usize,
    num: Vec<Poly>,
    den: Poly,
}

impl Tensor12 {
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.num[self.idx(i, j, k)]
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Poly::is_zero)
    }

    /// Reduced component `T^i_jk`.
    pub fn component(&self, i: usize, j: usize, k: usize) -> RatFn {
        RatFn::new(self.num(i, j, k).clone(), self.den.clone()).expect("nonzero denominator")
    }

    /// First nonzero component `(i, j, k)` with `j < k`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
            .find(|&(i, j, k)| !self.num(i, j, k).is_zero())
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| *self.num(i, j, k) == -self.num(i, k, j))))
    }

    /// `Σ_jk T^i_jk X^j Y^k` evaluated at a point from the field values there.
    pub fn eval_contracted(&self, point: &[Rat], x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>> {
        let n = self.dim;
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::Precondition("denominator vanishes at the sample point".into()));
        }
        (0..n)
            .map(|i| {
                let mut acc = Rat::from_integer(0.into());
                for j in 0..n {
                    for k in 0..n {
                        let c = self.num(i, j, k);
                        if !c.is_zero() {
                            acc += c.eval(point)? * &x[j] * &y[k];
                        }
                    }
                }
                Ok(acc / &d)
            })
            .collect()
    }
}

/// `DP[m][i][k] = d·∂_m P^i_k − P^i_k·∂_m d`.
fn scaled_derivatives(k: &RatOperator) -> Vec<Vec<Vec<Poly>>> {
    let n = k.dim();
    let p = k.num();
    let d = k.den();
    let d_const = d.is_constant();
    (0..n)
        .map(|m| {
            let dd = d.derivative(m);
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|c| {
                            let e = p.get(i, c);
                            let mut v = e.derivative(m);
                            if !v.is_zero() {
                                v = &v * d;
                            }
                            if !d_const && !e.is_zero() {
                                v -= &(e * &dd);
                            }
                            v
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn mul_nonzero(a: &Poly, b: &Poly) -> Option<Poly> {
    if a.is_zero() || b.is_zero() {
        None
    } else {
        Some(a * b)
    }
}

/// `N^i_jk = Σ_m (K^m_j ∂_m K^i_k − K^m_k ∂_m K^i_j) − Σ_m K^i_m (∂_j K^m_k − ∂_k K^m_j)`.
pub fn nijenhuis(k: &RatOperator) -> Tensor12 {
    let n = k.dim();
    let nv = k.nvars();
    let p = k.num();
    let dp = scaled_derivatives(k);
    let mut num = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for c in 0..n {
                let mut acc = Poly::zero(nv);
                if j != c {
                    for m in 0..n {
                        if let Some(t) = mul_nonzero(p.get(m, j), &dp[m][i][c]) {
                            acc += &t;
                        }
                        if let Some(t) = mul_nonzero(p.get(m, c), &dp[m][i][j]) {
                            acc -= &t;
                        }
                        let inner = &dp[j][m][c] - &dp[c][m][j];
                        if let Some(t) = mul_nonzero(p.get(i, m), &inner) {
                            acc -= &t;
                        }
                    }
                }
                num.push(acc);
            }
        }
    }
    Tensor12 {
        dim: n,
        num,
        den: k.den().pow(3),
    }
}

/// `H(X,Y) = K²N(X,Y) + N(KX,KY) − K(N(KX,Y) + N(X,KY))` in components.
pub fn haantjes(k: &RatOperator) -> Tensor12 {
    let nt = nijenhuis(k);
    let n = k.dim();
    let nv = k.nvars();
    let p = k.num();
    let p2 = p * p;
    let at = |i: usize, j: usize, c: usize| nt.num(i, j, c);

    // A^a_jk = Σ_b N^a_bk P^b_j + Σ_b N^a_jb P^b_k  (the K-shifted torsions)
    let mut shifted = vec![Poly::zero(nv); n * n * n];
    // B^i_jk = Σ_ab N^i_ab P^a_j P^b_k
    let mut both = vec![Poly::zero(nv); n * n * n];
    for a in 0..n {
        for j in 0..n {
            for c in 0..n {
                let mut acc = Poly::zero(nv);
                for b in 0..n {
                    if let Some(t) = mul_nonzero(at(a, b, c), p.get(b, j)) {
                        acc += &t;
                    }
                    if let Some(t) = mul_nonzero(at(a, j, b), p.get(b, c)) {
                        acc += &t;
                    }
                }
                shifted[(a * n + j) * n + c] = acc;
            }
        }
    }
    for i in 0..n {
        // half-contracted: Σ_a N^i_ab P^a_j
        let half: Vec<Vec<Poly>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|b| {
                        let mut acc = Poly::zero(nv);
                        for a in 0..n {
                            if let Some(t) = mul_nonzero(at(i, a, b), p.get(a, j)) {
                                acc += &t;
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        for j in 0..n {
            for c in 0..n {
                let mut acc = Poly::zero(nv);
                for b in 0..n {
                    if let Some(t) = mul_nonzero(&half[j][b], p.get(b, c)) {
                        acc += &t;
                    }
                }
                both[(i * n + j) * n + c] = acc;
            }
        }
    }
    let mut num = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for c in 0..n {
                let mut acc = both[(i * n + j) * n + c].clone();
                for a in 0..n {
                    if let Some(t) = mul_nonzero(p2.get(i, a), at(a, j, c)) {
                        acc += &t;
                    }
                    if let Some(t) = mul_nonzero(p.get(i, a), &shifted[(a * n + j) * n + c]) {
                        acc -= &t;
                    }
                }
                num.push(acc);
            }
        }
    }
    Tensor12 {
        dim: n,
        num,
        den: k.den().pow(5),
    }
}

fn eval_matrix(m: &PolyMatrix, point: &[Rat]) -> Result<Vec<Vec<Rat>>> {
    m.entries()
        .chunks(m.dim())
        .map(|row| row.iter().map(|e| e.eval(point)).collect())
        .collect()
}

/// Value and first partial derivatives of a (1,1)-tensor at a point.
struct OperatorJet {
    value: Vec<Vec<Rat>>,
    /// `d[p][i][m] = ∂_p K^i_m`.
    d: Vec<Vec<Vec<Rat>>>,
}

impl OperatorJet {
    fn new(k: &RatOperator, point: &[Rat]) -> Result<Self> {
        let n = k.dim();
        let den = k.den().eval(point)?;
        if den.is_zero() {
            return Err(Error::Precondition(
                "operator denominator vanishes at the sample point".into(),
            ));
        }
        let num = eval_matrix(k.num(), point)?;
        let den_d: Vec<Rat> = (0..n)
            .map(|p| k.den().derivative(p).eval(point))
            .collect::<Result<_>>()?;
        let num_d: Vec<Vec<Vec<Rat>>> = (0..n)
            .map(|p| eval_matrix(&k.num().derivative(p), point))
            .collect::<Result<_>>()?;
        let den2 = &den * &den;
        let value = num.iter().map(|r| r.iter().map(|e| e / &den).collect()).collect();
        // ∂(P/d) = (∂P·d − P·∂d)/d²
        let d = (0..n)
            .map(|p| {
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|m| (&num_d[p][i][m] * &den - &num[i][m] * &den_d[p]) / &den2)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Self { value, d })
    }

    fn apply_value(&self, v: &[Rat]) -> Vec<Rat> {
        self.value
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `(KX, ∂_p(KX) = ∂_pK·X + K·∂_pX)`.
    fn apply_jet(&self, x: &FieldJet) -> FieldJet {
        let n = x.value.len();
        let value = self.apply_value(&x.value);
        let d = (0..n)
            .map(|p| {
                let from_k = self.d[p]
                    .iter()
                    .map(|row| row.iter().zip(&x.value).map(|(a, b)| a * b).sum::<Rat>());
                from_k.zip(self.apply_value(&x.d[p])).map(|(a, b)| a + b).collect()
            })
            .collect();
        FieldJet { value, d }
    }
}

/// Value and first partial derivatives of a vector field at a point.
#[derive(Clone)]
struct FieldJet {
    value: Vec<Rat>,
    /// `d[p][i] = ∂_p X^i`.
    d: Vec<Vec<Rat>>,
}

impl FieldJet {
    fn new(x: &VectorField, point: &[Rat]) -> Result<Self> {
        let n = x.dim();
        let value = x.eval(point)?;
        let d = (0..n)
            .map(|p| x.components.iter().map(|c| c.derivative(p).eval(point)).collect())
            .collect::<Result<_>>()?;
        Ok(Self { value, d })
    }
}

/// `[X, Y]^i = Σ_m (X^m ∂_m Y^i − Y^m ∂_m X^i)` at the jet's point.
fn bracket_value(x: &FieldJet, y: &FieldJet) -> Vec<Rat> {
    let n = x.value.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|m| &x.value[m] * &y.d[m][i] - &y.value[m] * &x.d[m][i])
                .sum()
        })
        .collect()
}

fn combine(terms: &[(i64, &[Rat])]) -> Vec<Rat> {
    let n = terms[0].1.len();
    (0..n)
        .map(|i| terms.iter().map(|(s, v)| Rat::from_integer((*s).into()) * &v[i]).sum())
        .collect()
}

fn nijenhuis_jet(k: &OperatorJet, x: &FieldJet, y: &FieldJet) -> Vec<Rat> {
    let kx = k.apply_jet(x);
    let ky = k.apply_jet(y);
    let t1 = bracket_value(&kx, &ky);
    let t2 = k.apply_value(&bracket_value(&kx, y));
    let t3 = k.apply_value(&bracket_value(x, &ky));
    let t4 = k.apply_value(&k.apply_value(&bracket_value(x, y)));
    combine(&[(1, &t1), (-1, &t2), (-1, &t3), (1, &t4)])
}

/// `N_K(X,Y) = [KX,KY] − K[KX,Y] − K[X,KY] + K²[X,Y]` at `point`, from the
/// bracket definition. Every bracket needs only first derivatives of its
/// arguments, so the evaluation runs on exact 1-jets at the point and never
/// forms the torsion symbolically.
pub fn nijenhuis_bracket(k: &RatOperator, x: &VectorField, y: &VectorField, point: &[Rat]) -> Result<Vec<Rat>> {
    let kj = OperatorJet::new(k, point)?;
    Ok(nijenhuis_jet(&kj, &FieldJet::new(x, point)?, &FieldJet::new(y, point)?))
}

/// `H_K(X,Y) = K²N(X,Y) + N(KX,KY) − K(N(KX,Y) + N(X,KY))` at `point`, with
/// `N` from the bracket definition.
pub fn haantjes_bracket(k: &RatOperator, x: &VectorField, y: &VectorField, point: &[Rat]) -> Result<Vec<Rat>> {
    let kj = OperatorJet::new(k, point)?;
    let (x, y) = (FieldJet::new(x, point)?, FieldJet::new(y, point)?);
    let (kx, ky) = (kj.apply_jet(&x), kj.apply_jet(&y));
    let t1 = kj.apply_value(&kj.apply_value(&nijenhuis_jet(&kj, &x, &y)));
    let t2 = nijenhuis_jet(&kj, &kx, &ky);
    let mixed = combine(&[(1, &nijenhuis_jet(&kj, &kx, &y)), (1, &nijenhuis_jet(&kj, &x, &ky))]);
    let t3 = kj.apply_value(&mixed);
    Ok(combine(&[(1, &t1), (1, &t2), (-1, &t3)]))
}
