//! Rational-curve counts `N_k` of the projective plane.
//!
//! With `F = ½(x1²x3 + x1x2²) + f(x2, x3)` the WDVV system collapses to the
//! scalar equation `f₂₂₃² = f₃₃₃ + f₂₂₂·f₂₃₃`. The ansatz
//! `f = Σ N_k x3^(3k−1)/(3k−1)! · e^(k·x2)` turns it into a recursion for
//! the `N_k`. Two independent routes are provided:
//!
//! * [`nk_recursion`]: the closed binomial recursion,
//! * [`solve_from_pde`]: coefficient matching in the truncated series,
//!
//! and [`pde_residual`] certifies a table by substituting it back.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{fmt_rat, Rat};
use crate::error::{Error, Result};
use crate::report::{Clause, Report};

/// Truncated double series `Σ c[k, m] · x3^m · e^(k·x2)` with `1 ≤ k ≤ order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    order: u32,
    coeffs: BTreeMap<(u32, u32), Rat>,
}

impl QSeries {
    pub fn zero(order: u32) -> Self {
        Self {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn insert(&mut self, k: u32, m: u32, value: Rat) {
        assert!(k >= 1, "exponential degree starts at 1");
        if k > self.order || value.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((k, m)).or_insert_with(Rat::zero);
        *slot += value;
        if slot.is_zero() {
            self.coeffs.remove(&(k, m));
        }
    }

    pub fn coeff(&self, k: u32, m: u32) -> Rat {
        self.coeffs.get(&(k, m)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero entries in ascending `(k, m)` order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &Rat)> {
        self.coeffs.iter().map(|(&(k, m), c)| (k, m, c))
    }

    /// `∂/∂x2`: scales each exponential slice by `k`.
    pub fn d2(&self) -> Self {
        Self {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(k, m), c)| ((k, m), c * Rat::from_integer(BigInt::from(k))))
                .collect(),
        }
    }

    /// `∂/∂x3`.
    pub fn d3(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (&(k, m), c) in &self.coeffs {
            if m > 0 {
                out.insert(k, m - 1, c * Rat::from_integer(BigInt::from(m)));
            }
        }
        out
    }

    fn merge(&self, other: &Self, sign: i64) -> Self {
        let mut out = self.clone();
        out.order = self.order.min(other.order);
        out.coeffs.retain(|&(k, _), _| k <= out.order);
        let s = Rat::from_integer(BigInt::from(sign));
        for (&(k, m), c) in &other.coeffs {
            out.insert(k, m, c * &s);
        }
        out
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.merge(rhs, 1)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.merge(rhs, -1)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let order = self.order.min(rhs.order);
        let mut out = QSeries::zero(order);
        for (&(ka, ma), ca) in &self.coeffs {
            for (&(kb, mb), cb) in &rhs.coeffs {
                if ka + kb <= order {
                    out.insert(ka + kb, ma + mb, ca * cb);
                }
            }
        }
        out
    }
}

/// `N_1, ..., N_K` as exact integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwTable {
    values: Vec<BigInt>,
}

impl GwTable {
    pub fn from_values(values: Vec<BigInt>) -> Self {
        Self { values }
    }

    pub fn order(&self) -> u32 {
        self.values.len() as u32
    }

    /// `N_k` for `1 ≤ k ≤ order`.
    pub fn get(&self, k: u32) -> &BigInt {
        &self.values[k as usize - 1]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn set(&mut self, k: u32, value: BigInt) {
        self.values[k as usize - 1] = value;
    }

    /// `[[1, N_1], [2, N_2], ...]`; entries beyond `i64` are emitted as strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.values
                .iter()
                .enumerate()
                .map(|(i, n)| {
                    let v = match i64::try_from(n) {
                        Ok(small) => json!(small),
                        Err(_) => json!(n.to_string()),
                    };
                    json!([i + 1, v])
                })
                .collect(),
        )
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `N_k = Σ_{p+q=k} N_p N_q p²q [q·C(3k−4, 3p−2) − p·C(3k−4, 3p−1)]`, `N_1 = 1`.
pub fn nk_recursion(order: u32) -> Result<GwTable> {
    if order == 0 {
        return Err(Error::Input("order must be at least 1".into()));
    }
    let mut values: Vec<BigInt> = vec![BigInt::one()];
    for k in 2..=order {
        let top = BigInt::from(3 * k - 4);
        let mut total = BigInt::zero();
        for p in 1..k {
            let q = k - p;
            let (bp, bq) = (BigInt::from(p), BigInt::from(q));
            let bracket = &bq * binomial(top.clone(), BigInt::from(3 * p - 2))
                - &bp * binomial(top.clone(), BigInt::from(3 * p - 1));
            total += &values[p as usize - 1] * &values[q as usize - 1] * &bp * &bp * &bq * bracket;
        }
        if !total.is_positive() {
            return Err(Error::Internal(format!("N_{k} = {total} is not positive")));
        }
        values.push(total);
    }
    Ok(GwTable { values })
}

/// `f = Σ N_k x3^(3k−1)/(3k−1)! e^(k·x2)` truncated at the table's order.
pub fn build_series(table: &GwTable) -> QSeries {
    let mut f = QSeries::zero(table.order());
    for k in 1..=table.order() {
        let m = 3 * k - 1;
        f.insert(k, m, Rat::new(table.get(k).clone(), factorial(m)));
    }
    f
}

/// `f₂₂₃² − f₃₃₃ − f₂₂₂·f₂₃₃`, truncated at the series order.
pub fn pde_residual(f: &QSeries) -> QSeries {
    let f2 = f.d2();
    let f22 = f2.d2();
    let f223 = f22.d3();
    let f222 = f22.d2();
    let f233 = f2.d3().d3();
    let f333 = f.d3().d3().d3();
    &(&(&f223 * &f223) - &f333) - &(&f222 * &f233)
}

/// Determines each `N_k` from the `e^(k·x2) x3^(3k−4)` coefficient of the
/// equation, where `N_k` enters only through `f₃₃₃` with weight `1/(3k−4)!`.
pub fn solve_from_pde(order: u32) -> Result<GwTable> {
    if order == 0 {
        return Err(Error::Input("order must be at least 1".into()));
    }
    let mut table = GwTable {
        values: vec![BigInt::one()],
    };
    for k in 2..=order {
        // Known part of the series with a placeholder N_k = 0.
        let mut trial = table.clone();
        trial.values.push(BigInt::zero());
        let residual = pde_residual(&build_series(&trial));
        let m = 3 * k - 4;
        // residual(k, m) = known − N_k/(3k−4)!, so N_k = (3k−4)!·known.
        let value = residual.coeff(k, m) * Rat::from_integer(factorial(m));
        if !value.is_integer() {
            return Err(Error::Internal(format!(
                "N_{k} = {} is not an integer",
                fmt_rat(&value)
            )));
        }
        let value = value.to_integer();
        trial.values[k as usize - 1] = value;
        let check = pde_residual(&build_series(&trial));
        if let Some((kk, mm, c)) = check.iter().find(|&(kk, _, _)| kk <= k) {
            return Err(Error::Internal(format!(
                "inconsistent system: slice k={kk}, x3^{mm} keeps coefficient {}",
                fmt_rat(c)
            )));
        }
        table = trial;
    }
    Ok(table)
}

/// Substitutes a table back into the equation; fails with the first nonzero
/// coefficient as witness.
pub fn certify_table(table: &GwTable) -> Report {
    let residual = pde_residual(&build_series(table));
    let witness = residual
        .iter()
        .next()
        .map(|(k, m, c)| format!("residual coefficient of e^({k}*x2)*x3^{m} is {}", fmt_rat(c)));
    let integral = table.values.iter().all(|n| n.is_positive());
    Report::from_clauses(
        "kontsevich",
        vec![
            Clause::from_witness("pde_residual_zero", witness.clone()),
            Clause::from_witness(
                "positive_integers",
                (!integral).then(|| "a table entry is not a positive integer".to_string()),
            ),
        ],
    )
    .with_data("N", table.to_json())
    .with_data("pde_residual_zero", json!(witness.is_none()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn first_four_numbers() {
        assert_eq!(nk_recursion(4).unwrap().values(), ints(&[1, 1, 12, 620]).as_slice());
        assert_eq!(solve_from_pde(4).unwrap().values(), ints(&[1, 1, 12, 620]).as_slice());
    }

    #[test]
    fn order_one_is_the_seed() {
        assert_eq!(solve_from_pde(1).unwrap().values(), ints(&[1]).as_slice());
        assert_eq!(nk_recursion(1).unwrap().values(), ints(&[1]).as_slice());
        assert!(nk_recursion(0).is_err());
        assert!(solve_from_pde(0).is_err());
    }

    #[test]
    fn series_entries() {
        let s1 = build_series(&GwTable::from_values(ints(&[1])));
        assert_eq!(s1.iter().count(), 1);
        assert_eq!(s1.coeff(1, 2), Rat::new(1.into(), 2.into()));
        let s2 = build_series(&GwTable::from_values(ints(&[1, 1])));
        assert_eq!(s2.coeff(2, 5), Rat::new(1.into(), 120.into()));
        let s = build_series(&nk_recursion(6).unwrap());
        assert!(s.iter().all(|(k, m, _)| m == 3 * k - 1));
    }

    #[test]
    fn zero_series_has_zero_residual() {
        assert!(pde_residual(&QSeries::zero(5)).is_zero());
    }

    #[test]
    fn perturbed_n3_breaks_slice_three() {
        let mut table = nk_recursion(4).unwrap();
        table.set(3, BigInt::from(13));
        let residual = pde_residual(&build_series(&table));
        let first = residual.iter().next().unwrap();
        assert_eq!((first.0, first.1), (3, 5));
        // f₃₃₃ carries -ΔN_3/5!
        assert_eq!(first.2, &Rat::new((-1).into(), 120.into()));
        let report = certify_table(&table);
        assert_eq!(report.status, crate::report::Status::Fail);
        assert!(report.clause("pde_residual_zero").unwrap().witness.is_some());
    }

    #[test]
    fn residual_lives_on_expected_powers() {
        // for an arbitrary table only x3^(3k-4) appears in slice k
        let table = GwTable::from_values(ints(&[1, 2, 3, 4]));
        let r = pde_residual(&build_series(&table));
        assert!(!r.is_zero());
        assert!(r.iter().all(|(k, m, _)| m + 4 == 3 * k));
    }
}
