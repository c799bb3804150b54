use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{gcd, Poly, Rat, VarCtx};
use crate::error::{Error, Result};

/// Quotient of polynomials in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Precondition("rational function with zero denominator".into()));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        let n = num.nvars();
        if num.is_zero() {
            return Self { num, den: Poly::one(n) };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_term().expect("nonzero").1.clone();
        let inv = lc.recip();
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// Builds from a pair already known to be coprime; only normalizes the
    /// denominator to be monic.
    fn coprime(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            let n = num.nvars();
            return Self { num, den: Poly::one(n) };
        }
        let lc = den.leading_term().expect("nonzero").1.clone();
        if num_traits::One::is_one(&lc) {
            return Self { num, den };
        }
        let inv = lc.recip();
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        Self {
            num: p,
            den: Poly::one(n),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn derivative(&self, var: usize) -> RatFn {
        if self.den.is_constant() {
            return Self::reduced(self.num.derivative(var), self.den.clone());
        }
        let num = &(&self.num.derivative(var) * &self.den) - &(&self.num * &self.den.derivative(var));
        Self::reduced(num, &self.den * &self.den)
    }

    pub fn checked_div(&self, other: &RatFn) -> Result<RatFn> {
        if other.is_zero() {
            return Err(Error::Precondition("division by the zero rational function".into()));
        }
        Ok(Self::reduced(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn scale(&self, factor: &Rat) -> RatFn {
        Self::reduced(self.num.scale(factor), self.den.clone())
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFn {
        if self.den.is_constant() {
            return Self::coprime(&self.num * p, self.den.clone());
        }
        let g = gcd(p, &self.den);
        if g.is_constant() {
            return Self::coprime(&self.num * p, self.den.clone());
        }
        Self::coprime(
            &self.num * &p.div_exact(&g).expect("gcd divides"),
            self.den.div_exact(&g).expect("gcd divides"),
        )
    }

    /// Value at a point; errors when the denominator vanishes there.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        let d = self.den.eval(point)?;
        if num_traits::Zero::is_zero(&d) {
            return Err(Error::Precondition("denominator vanishes at the sample point".into()));
        }
        Ok(self.num.eval(point)? / d)
    }

    pub fn to_string_in(&self, ctx: &VarCtx) -> String {
        if self.den.is_constant() && num_traits::One::is_one(&self.den.constant_value().unwrap()) {
            self.num.to_string_in(ctx)
        } else {
            format!("({})/({})", self.num.to_string_in(ctx), self.den.to_string_in(ctx))
        }
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFn::reduced(&self.num + &rhs.num, self.den.clone());
        }
        // With g = gcd(d1, d2) any common factor of the sum and d1·d2/g divides g.
        let g = gcd(&self.den, &rhs.den);
        if g.is_constant() {
            return RatFn::coprime(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den);
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        let den = &self.den * &d2;
        if num.is_zero() {
            return RatFn::zero(den.nvars());
        }
        let h = gcd(&num, &g);
        if h.is_constant() {
            RatFn::coprime(num, den)
        } else {
            RatFn::coprime(
                num.div_exact(&h).expect("gcd divides"),
                den.div_exact(&h).expect("gcd divides"),
            )
        }
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero(self.nvars());
        }
        // Cross-cancel reduced factors: gcd(n1, d2) and gcd(n2, d1).
        let cancel = |n: &Poly, d: &Poly| -> (Poly, Poly) {
            if d.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = gcd(n, d);
            if g.is_constant() {
                (n.clone(), d.clone())
            } else {
                (
                    n.div_exact(&g).expect("gcd divides"),
                    d.div_exact(&g).expect("gcd divides"),
                )
            }
        };
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        RatFn::coprime(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
