use crate::algebra::{Poly, Rat, RatFn, RatOperator};
use crate::error::Result;

/// Vector field by its coordinate components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub components: Vec<RatFn>,
}

/// 1-form by its coordinate components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    pub components: Vec<RatFn>,
}

impl VectorField {
    pub fn new(components: Vec<RatFn>) -> Self {
        Self { components }
    }

    pub fn from_polys(components: Vec<Poly>) -> Self {
        Self::new(components.into_iter().map(RatFn::from_poly).collect())
    }

    /// `∂/∂x_index`.
    pub fn coordinate(nvars: usize, index: usize) -> Self {
        Self::from_polys(
            (0..nvars)
                .map(|i| {
                    if i == index {
                        Poly::one(nvars)
                    } else {
                        Poly::zero(nvars)
                    }
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RatFn::is_zero)
    }

    /// `X(f) = Σ X^m ∂_m f`.
    pub fn apply_to(&self, f: &RatFn) -> RatFn {
        let n = self.dim();
        let mut acc = RatFn::zero(f.nvars());
        for (m, xm) in self.components.iter().enumerate() {
            if xm.is_zero() {
                continue;
            }
            let d = f.derivative(m);
            if !d.is_zero() {
                acc = &acc + &(xm * &d);
            }
        }
        debug_assert_eq!(n, f.nvars());
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Vec<Rat>> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl OneForm {
    pub fn new(components: Vec<RatFn>) -> Self {
        Self { components }
    }

    /// `df` of a polynomial.
    pub fn exact(f: &Poly) -> Self {
        Self::new((0..f.nvars()).map(|m| RatFn::from_poly(f.derivative(m))).collect())
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// `θ(X) = Σ θ_m X^m`.
    pub fn pair(&self, x: &VectorField) -> RatFn {
        let nv = x.components.first().map_or(0, RatFn::nvars);
        self.components
            .iter()
            .zip(&x.components)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(RatFn::zero(nv), |acc, (a, b)| &acc + &(a * b))
    }
}

/// `[X, Y]^i = Σ_m (X^m ∂_m Y^i − Y^m ∂_m X^i)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    VectorField::new(
        (0..x.dim())
            .map(|i| &x.apply_to(&y.components[i]) - &y.apply_to(&x.components[i]))
            .collect(),
    )
}

/// Exterior derivative `(dθ)_ij = ∂_i θ_j − ∂_j θ_i`, as a full antisymmetric matrix.
pub fn d_oneform(theta: &OneForm) -> Vec<Vec<RatFn>> {
    let n = theta.dim();
    let nv = theta.components.first().map_or(0, RatFn::nvars);
    let mut out = vec![vec![RatFn::zero(nv); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = &theta.components[j].derivative(i) - &theta.components[i].derivative(j);
            out[j][i] = -&v;
            out[i][j] = v;
        }
    }
    out
}

/// First nonzero `(i, j)` entry with `i < j` of a 2-form matrix.
pub fn first_nonzero_2form(form: &[Vec<RatFn>]) -> Option<(usize, usize, &RatFn)> {
    let n = form.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !form[i][j].is_zero())
        .map(|(i, j)| (i, j, &form[i][j]))
}

/// Vector action `(K X)^i = Σ_m K^i_m X^m`.
pub fn apply_operator(k: &RatOperator, x: &VectorField) -> VectorField {
    let n = k.dim();
    let den = RatFn::new(Poly::one(k.nvars()), k.den().clone()).expect("nonzero denominator");
    VectorField::new(
        (0..n)
            .map(|i| {
                let mut acc = RatFn::zero(k.nvars());
                for (m, xm) in x.components.iter().enumerate() {
                    let e = k.num().get(i, m);
                    if !e.is_zero() && !xm.is_zero() {
                        acc = &acc + &xm.mul_poly(e);
                    }
                }
                &acc * &den
            })
            .collect(),
    )
}

/// Dual action on 1-forms `(θ·K)_m = Σ_i θ_i K^i_m`.
pub fn pull_oneform(theta: &OneForm, k: &RatOperator) -> OneForm {
    let n = k.dim();
    let den = RatFn::new(Poly::one(k.nvars()), k.den().clone()).expect("nonzero denominator");
    OneForm::new(
        (0..n)
            .map(|m| {
                let mut acc = RatFn::zero(k.nvars());
                for (i, ti) in theta.components.iter().enumerate() {
                    let e = k.num().get(i, m);
                    if !e.is_zero() && !ti.is_zero() {
                        acc = &acc + &ti.mul_poly(e);
                    }
                }
                &acc * &den
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_expr, VarCtx};

    fn field(texts: &[&str]) -> VectorField {
        let ctx = VarCtx::standard(texts.len());
        VectorField::from_polys(texts.iter().map(|t| parse_expr(t, &ctx).unwrap()).collect())
    }

    #[test]
    fn coordinate_fields_commute() {
        let b = lie_bracket(&VectorField::coordinate(3, 0), &VectorField::coordinate(3, 1));
        assert!(b.is_zero());
    }

    #[test]
    fn euler_like_bracket() {
        // [x1 ∂1, ∂1] = -∂1
        let b = lie_bracket(&field(&["x1", "0"]), &field(&["1", "0"]));
        assert_eq!(b, field(&["-1", "0"]));
    }

    #[test]
    fn exterior_derivative() {
        let ctx = VarCtx::standard(3);
        let f = parse_expr("x1^2*x2 + x3^3*x1", &ctx).unwrap();
        let df = OneForm::exact(&f);
        assert!(first_nonzero_2form(&d_oneform(&df)).is_none());
        let theta = OneForm::new(
            ["-x2", "x1", "0"]
                .iter()
                .map(|t| RatFn::from_poly(parse_expr(t, &ctx).unwrap()))
                .collect(),
        );
        let d = d_oneform(&theta);
        assert_eq!(d[0][1], RatFn::from_poly(Poly::from_int(3, 2)));
        assert_eq!(d[1][0], RatFn::from_poly(Poly::from_int(3, -2)));
    }

    #[test]
    fn operator_actions_are_dual() {
        let ctx = VarCtx::standard(2);
        let p = |t: &str| parse_expr(t, &ctx).unwrap();
        let num =
            crate::algebra::PolyMatrix::from_rows(2, vec![vec![p("x1"), p("1")], vec![p("x2^2"), p("3")]]).unwrap();
        let k = RatOperator::new(num, p("x1 + 2")).unwrap();
        let x = field(&["x2", "1 - x1"]);
        let theta = OneForm::new(vec![RatFn::from_poly(p("x1*x2")), RatFn::from_poly(p("5"))]);
        // θ(KX) = (θK)(X)
        assert_eq!(theta.pair(&apply_operator(&k, &x)), pull_oneform(&theta, &k).pair(&x));
        let value = theta.pair(&x).eval(&[int(1), int(2)]).unwrap();
        assert_eq!(value, int(4));
    }
}
