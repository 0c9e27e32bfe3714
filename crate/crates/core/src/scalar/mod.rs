//! Field arithmetic and univariate polynomials.
//!
//! Three fields are supported: exact rationals ([`BigRational`]), prime
//! fields ([`Fp`]) and double-precision complex numbers ([`Complex64`]).
//! Algorithms are written once against the [`Field`] trait; the few steps
//! that genuinely differ per field (root finding, minimal polynomials) are
//! trait hooks.

mod factor;
mod fp;
mod poly;
mod stirling;

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::Result;
use crate::linalg::Matrix;

pub use factor::{durand_kerner, poly_factor, poly_factor_with_tol, FactoredPoly};
pub(crate) use factor::{derivative_c, polish};
pub use fp::{Fp, PrimeModulus};
pub use poly::{poly_gcd, Poly};
pub use stirling::{stirling_first, stirling_second};

/// Default clustering / rank tolerance for the numeric path.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Which of the supported fields a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Rational,
    PrimeField(u64),
    Complex,
}

/// A field of scalars.
///
/// Elements carry enough context to build zeros and ones of the same field
/// (`Ctx` is `()` except for prime fields, where it is the modulus).
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: Clone + Debug + PartialEq + Send + Sync;

    /// True for Q and F_p; equality and zero tests are exact there.
    const EXACT: bool;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_bigint(ctx: &Self::Ctx, n: &BigInt) -> Self;
    /// Image of a rational number; `None` when the denominator vanishes in the field.
    fn from_rational(ctx: &Self::Ctx, q: &BigRational) -> Option<Self>;
    fn characteristic(ctx: &Self::Ctx) -> u64;
    fn tag(ctx: &Self::Ctx) -> FieldTag;

    fn is_zero(&self) -> bool;
    fn try_inv(&self) -> Option<Self>;
    /// Deterministic total order used to sort eigenvalues and roots.
    fn canonical_cmp(&self, other: &Self) -> Ordering;
    /// Equality up to the clustering tolerance (exact equality on exact fields).
    fn same_point(&self, other: &Self, tol: f64) -> bool;
    fn to_complex(&self) -> Option<Complex64>;

    /// Factor a monic polynomial into linear factors plus a non-split remainder.
    fn factor_monic(p: &Poly<Self>, tol: f64) -> Result<FactoredPoly<Self>>;
    /// Monic minimal polynomial of a square matrix.
    fn minimal_polynomial(a: &Matrix<Self>, tol: f64) -> Poly<Self>;
    /// Minimal polynomial as a product of linear factors, or `NonSplitField`.
    fn split_minimal_polynomial(a: &Matrix<Self>, tol: f64) -> Result<FactoredPoly<Self>>;

    /// `det(X I - A)`; Berkowitz unless the field has something better.
    fn characteristic_polynomial(a: &Matrix<Self>) -> Poly<Self> {
        crate::linalg::berkowitz(a)
    }

    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_bigint(ctx, &BigInt::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero")
    }

    fn div(&self, rhs: &Self) -> Self {
        self.clone() * rhs.inv()
    }

    fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Field for BigRational {
    type Ctx = ();
    const EXACT: bool = true;

    fn ctx(&self) {}

    fn zero(_: &()) -> Self {
        <BigRational as num_traits::Zero>::zero()
    }

    fn one(_: &()) -> Self {
        <BigRational as num_traits::One>::one()
    }

    fn from_bigint(_: &(), n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn from_rational(_: &(), q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }

    fn characteristic(_: &()) -> u64 {
        0
    }

    fn tag(_: &()) -> FieldTag {
        FieldTag::Rational
    }

    fn is_zero(&self) -> bool {
        <BigRational as num_traits::Zero>::is_zero(self)
    }

    fn try_inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn same_point(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn to_complex(&self) -> Option<Complex64> {
        use num_traits::ToPrimitive;
        Some(Complex64::new(self.to_f64()?, 0.0))
    }

    fn factor_monic(p: &Poly<Self>, _tol: f64) -> Result<FactoredPoly<Self>> {
        factor::factor_rational(p)
    }

    fn minimal_polynomial(a: &Matrix<Self>, _tol: f64) -> Poly<Self> {
        crate::linalg::krylov_minpoly(a)
    }

    fn split_minimal_polynomial(a: &Matrix<Self>, tol: f64) -> Result<FactoredPoly<Self>> {
        factor::split_exact(&Self::minimal_polynomial(a, tol), tol)
    }
}

impl Field for Complex64 {
    type Ctx = ();
    const EXACT: bool = false;

    fn ctx(&self) {}

    fn zero(_: &()) -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one(_: &()) -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_bigint(_: &(), n: &BigInt) -> Self {
        use num_traits::ToPrimitive;
        Complex64::new(n.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_i64(_: &(), n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_rational(_: &(), q: &BigRational) -> Option<Self> {
        use num_traits::ToPrimitive;
        Some(Complex64::new(q.to_f64()?, 0.0))
    }

    fn characteristic(_: &()) -> u64 {
        0
    }

    fn tag(_: &()) -> FieldTag {
        FieldTag::Complex
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn try_inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / *self)
        }
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        let scale = 1f64.max(self.norm()).max(other.norm());
        let tol = DEFAULT_TOL * scale;
        if (self.re - other.re).abs() > tol {
            return self.re.total_cmp(&other.re);
        }
        if (self.im - other.im).abs() > tol {
            return self.im.total_cmp(&other.im);
        }
        Ordering::Equal
    }

    fn same_point(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() <= tol * 1f64.max(self.norm()).max(other.norm())
    }

    fn to_complex(&self) -> Option<Complex64> {
        Some(*self)
    }

    fn factor_monic(p: &Poly<Self>, tol: f64) -> Result<FactoredPoly<Self>> {
        factor::factor_complex(p, tol)
    }

    fn minimal_polynomial(a: &Matrix<Self>, tol: f64) -> Poly<Self> {
        Self::split_minimal_polynomial(a, tol)
            .expect("complex spectra always split")
            .expand()
    }

    fn split_minimal_polynomial(a: &Matrix<Self>, tol: f64) -> Result<FactoredPoly<Self>> {
        crate::linalg::numeric_split_minpoly(a, tol)
    }

    /// Expanded from Schur eigenvalues: backward stable, where Berkowitz in
    /// floating point loses the small coefficients of ill-conditioned matrices.
    fn characteristic_polynomial(a: &Matrix<Self>) -> Poly<Self> {
        crate::linalg::schur_char_poly(a)
    }
}

impl Field for Fp {
    type Ctx = PrimeModulus;
    const EXACT: bool = true;

    fn ctx(&self) -> PrimeModulus {
        self.modulus()
    }

    fn zero(m: &PrimeModulus) -> Self {
        Fp::new(0, *m)
    }

    fn one(m: &PrimeModulus) -> Self {
        Fp::new(1, *m)
    }

    fn from_bigint(m: &PrimeModulus, n: &BigInt) -> Self {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let r = n.mod_floor(&BigInt::from(m.get()));
        Fp::new(r.to_i64().expect("residue fits"), *m)
    }

    fn from_i64(m: &PrimeModulus, n: i64) -> Self {
        Fp::new(n, *m)
    }

    fn from_rational(m: &PrimeModulus, q: &BigRational) -> Option<Self> {
        let num = Self::from_bigint(m, q.numer());
        let den = Self::from_bigint(m, q.denom());
        den.try_inv().map(|d| num * d)
    }

    fn characteristic(m: &PrimeModulus) -> u64 {
        m.get()
    }

    fn tag(m: &PrimeModulus) -> FieldTag {
        FieldTag::PrimeField(m.get())
    }

    fn is_zero(&self) -> bool {
        self.value() == 0
    }

    fn try_inv(&self) -> Option<Self> {
        Fp::checked_inv(*self)
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.value().cmp(&other.value())
    }

    fn same_point(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn to_complex(&self) -> Option<Complex64> {
        None
    }

    fn factor_monic(p: &Poly<Self>, _tol: f64) -> Result<FactoredPoly<Self>> {
        factor::factor_prime_field(p)
    }

    fn minimal_polynomial(a: &Matrix<Self>, _tol: f64) -> Poly<Self> {
        crate::linalg::krylov_minpoly(a)
    }

    fn split_minimal_polynomial(a: &Matrix<Self>, tol: f64) -> Result<FactoredPoly<Self>> {
        factor::split_exact(&Self::minimal_polynomial(a, tol), tol)
    }
}

/// Binomial coefficient C(k, i) as an exact integer; zero when `i > k`.
pub fn binomial(k: u64, i: u64) -> BigInt {
    if i > k {
        return BigInt::from(0);
    }
    let i = i.min(k - i);
    let mut acc = BigInt::from(1);
    for j in 0..i {
        acc = acc * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    acc
}

/// Shorthand for an exact rational `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for a complex number.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
