use std::ops::{Add, Mul, Neg, Sub};

use super::Field;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// Trailing (exact) zeros are trimmed, so the zero polynomial has no
/// coefficients and `degree()` is `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<F: Field> {
    ctx: F::Ctx,
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(ctx: F::Ctx, coeffs: Vec<F>) -> Self {
        let mut p = Self { ctx, coeffs };
        p.trim();
        p
    }

    pub fn zero(ctx: F::Ctx) -> Self {
        Self {
            ctx,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: F::Ctx) -> Self {
        let one = F::one(&ctx);
        Self {
            ctx,
            coeffs: vec![one],
        }
    }

    pub fn x(ctx: F::Ctx) -> Self {
        Self::monomial(F::one(&ctx), 1)
    }

    /// `c * X^n`.
    pub fn monomial(c: F, n: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![F::zero(&ctx); n];
        coeffs.push(c);
        Self::new(ctx, coeffs)
    }

    /// `X - root`.
    pub fn linear(root: &F) -> Self {
        let ctx = root.ctx();
        Self {
            coeffs: vec![-root.clone(), F::one(&ctx)],
            ctx,
        }
    }

    /// Polynomial with integer coefficients, ascending.
    pub fn from_i64s(ctx: F::Ctx, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&v| F::from_i64(&ctx, v)).collect();
        Self::new(ctx, c)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `X^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    /// Scale to leading coefficient one.
    pub fn monic(&self) -> Result<Self> {
        let lead = self.lead().ok_or(Error::ZeroPolynomial)?;
        let inv = lead.inv();
        Ok(self.scale(&inv))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(
            self.ctx.clone(),
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(&self.ctx), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, a: &Matrix<F>) -> Matrix<F> {
        let n = a.order();
        let mut acc = Matrix::zeros(self.ctx.clone(), n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * a;
            acc.add_diagonal(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * F::from_i64(&self.ctx, i as i64))
            .collect();
        Self::new(self.ctx.clone(), coeffs)
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one(self.ctx.clone());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv_lead = d.lead().unwrap().inv();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(self.ctx.clone()), self.clone());
        }
        let mut q = vec![F::zero(&self.ctx); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * inv_lead.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (
            Self::new(self.ctx.clone(), q),
            Self::new(self.ctx.clone(), r),
        )
    }

    /// Exact quotient when `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Coefficients of `p(c + u)` as a polynomial in `u`.
    pub fn taylor_shift(&self, c: &F) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                a[j] = a[j].clone() + c.clone() * a[j + 1].clone();
            }
        }
        Self::new(self.ctx.clone(), a)
    }

    /// Least common multiple, monic. Exact fields only.
    pub fn lcm(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ctx.clone()));
        }
        let g = poly_gcd(self, other)?;
        let prod = self * other;
        prod.exact_div(&g)
            .expect("gcd divides the product")
            .monic()
    }
}

/// Monic greatest common divisor over an exact field.
pub fn poly_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>> {
    if a.ctx != b.ctx {
        return Err(Error::MixedFields);
    }
    if !F::EXACT {
        return Err(Error::NumericFieldUnsupported);
    }
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y);
        x = y;
        y = r;
    }
    x.monic()
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::new(self.ctx.clone(), c)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::new(self.ctx.clone(), c)
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.ctx.clone());
        }
        let mut c = vec![F::zero(&self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(self.ctx.clone(), c)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::new(
            self.ctx.clone(),
            self.coeffs.iter().map(|c| -c.clone()).collect(),
        )
    }
}
