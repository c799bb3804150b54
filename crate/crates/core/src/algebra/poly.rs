use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{fmt_rat, Rat, VarCtx};
use crate::error::{Error, Result};

/// Dense exponent vector, ordered graded-lexicographically (total degree
/// first, ties broken lexicographically with `x1 > x2 > ...`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, divisor: &Self) -> Self {
        Self(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with rational coefficients.
///
/// Terms are kept in a map keyed by monomial with no zero coefficients, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, value: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), value);
        p
    }

    pub fn from_int(nvars: usize, value: i64) -> Self {
        Self::constant(nvars, Rat::from_integer(BigInt::from(value)))
    }

    /// The coordinate function `x_index` (0-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Self::term(Monomial(exps), Rat::one())
    }

    pub fn term(monomial: Monomial, coeff: Rat) -> Self {
        let nvars = monomial.0.len();
        let mut p = Self::zero(nvars);
        p.add_term(monomial, coeff);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector has the wrong length");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, monomial: &Monomial) -> Rat {
        self.terms.get(monomial).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Leading term as a single-term polynomial (zero for the zero polynomial).
    pub fn leading_monomial_poly(&self) -> Poly {
        match self.leading_term() {
            Some((m, c)) => Poly::term(m.clone(), c.clone()),
            None => Poly::zero(self.nvars),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    fn add_term(&mut self, monomial: Monomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: &Rat) -> Poly {
        if factor.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut result = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to `x_var` (0-based), index checked.
    pub fn diff(&self, var: usize) -> Result<Poly> {
        if var >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        Ok(self.derivative(var))
    }

    /// Partial derivative with respect to `x_var`. Panics if out of range.
    pub fn derivative(&self, var: usize) -> Poly {
        assert!(var < self.nvars, "variable index {var} out of range");
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c * Rat::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        // Integer arithmetic over the common denominator `L·Q^D`, with `Q`
        // clearing the point and `L` the coefficients; one reduction at the end.
        let Some(degree) = self.total_degree() else {
            return Ok(Rat::zero());
        };
        let q = point.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled: Vec<BigInt> = point.iter().map(|x| x.numer() * (&q / x.denom())).collect();
        let l = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut powers: Vec<Vec<BigInt>> = scaled.iter().map(|x| vec![BigInt::one(), x.clone()]).collect();
        let mut q_powers = vec![BigInt::one(), q.clone()];
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut value = c.numer() * (&l / c.denom());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    value *= power(&mut powers[i], e);
                }
            }
            value *= power(&mut q_powers, degree - m.degree());
            total += value;
        }
        Ok(Rat::new(total, l * power(&mut q_powers, degree).clone()))
    }

    /// Substitutes polynomials for every variable.
    pub fn compose(&self, values: &[Poly]) -> Poly {
        assert_eq!(values.len(), self.nvars);
        let target = values.first().map_or(self.nvars, Poly::nvars);
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut value = Poly::constant(target, c.clone());
            for (v, &e) in values.iter().zip(&m.0) {
                if e > 0 {
                    value = &value * &v.pow(e);
                }
            }
            out += &value;
        }
        out
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            Some((_, lc)) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.leading_term().expect("nonzero divisor");
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let q = Poly::term(m.quotient(lm), c * &lc_inv);
            rem -= &(&q * divisor);
            quot += &q;
        }
        Some(quot)
    }

    /// Coefficient of `x_var^degree` viewed as a polynomial in the other variables.
    pub fn coeff_in(&self, var: usize, degree: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[var] == degree {
                let mut exps = m.0.clone();
                exps[var] = 0;
                out.add_term(Monomial(exps), c.clone());
            }
        }
        out
    }

    /// Printable form using the given variable names.
    pub fn display<'a>(&'a self, ctx: &'a VarCtx) -> PolyDisplay<'a> {
        PolyDisplay {
            poly: self,
            names: Names::Ctx(ctx),
        }
    }

    /// Canonical text, parseable back by [`super::parse_expr`].
    pub fn to_string_in(&self, ctx: &VarCtx) -> String {
        self.display(ctx).to_string()
    }
}

enum Names<'a> {
    Ctx(&'a VarCtx),
    Standard,
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: Names<'a>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = self.poly;
        if poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in poly.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(fmt_rat(&abs));
            }
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = match &self.names {
                    Names::Ctx(ctx) => ctx.name(v).to_string(),
                    Names::Standard => format!("x{}", v + 1),
                };
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PolyDisplay {
            poly: self,
            names: Names::Standard,
        }
        .fmt(f)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        debug_assert_eq!(self.nvars, rhs.nvars);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        debug_assert_eq!(self.nvars, rhs.nvars);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// `table[e]`, extending the table of successive powers `table[1]^k` on demand.
fn power(table: &mut Vec<BigInt>, e: u32) -> &BigInt {
    while table.len() <= e as usize {
        let next = table.last().expect("table starts with 1") * &table[1];
        table.push(next);
    }
    &table[e as usize]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn power_rule() {
        // d(x1^2 x3)/dx1 = 2 x1 x3
        let p = &(&x(0) * &x(0)) * &x(2);
        let expected = (&x(0) * &x(2)).scale(&int(2));
        assert_eq!(p.diff(0).unwrap(), expected);
        assert!(Poly::from_int(3, 7).diff(1).unwrap().is_zero());
        assert!(matches!(p.diff(3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn evaluation() {
        let p = &(&x(0) * &x(0)) * &x(2);
        assert_eq!(p.eval(&[int(2), int(0), int(3)]).unwrap(), int(12));
        assert_eq!(Poly::zero(3).eval(&[int(1), int(5), rat(1, 2)]).unwrap(), int(0));
        assert!(p.eval(&[int(1)]).is_err());
    }

    #[test]
    fn graded_lex_order_puts_high_degree_first() {
        let p = &(&x(1) * &x(1)) + &(&x(0) + &Poly::one(3));
        let degrees: Vec<u32> = p.terms().map(|(m, _)| m.degree()).collect();
        assert_eq!(degrees, vec![2, 1, 0]);
        assert_eq!(p.to_string(), "x2^2 + x1 + 1");
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(2).scale(&rat(1, 2));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn display_signs_and_fractions() {
        let p = &x(0).scale(&rat(-1, 2)) - &x(1);
        assert_eq!(p.to_string(), "-1/2*x1 - x2");
        assert_eq!(Poly::from_int(3, -3).to_string(), "-3");
    }
}
