//! P-canonical form of a matrix: the power sequence `A^k` written as a finite
//! nilpotent part plus eigenvalue terms `lambda^k C(k,i)` (Lambda basis) or
//! `lambda^k k^i` (Gamma basis).

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::{spectral_projections_with_tol, Matrix};
use crate::scalar::{binomial, stirling_first, stirling_second, Field, Poly, DEFAULT_TOL};

/// Sequence basis attached to the eigenvalue terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `lambda^k * C(k, i)`
    Lambda,
    /// `lambda^k * k^i`
    Gamma,
}

/// Coefficient matrices attached to one nonzero eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricTerm<F: Field> {
    pub eigenvalue: F,
    /// `C_{j,0}, ..., C_{j,t_j - 1}`; the last one is nonzero.
    pub coeffs: Vec<Matrix<F>>,
}

/// `A^k = sum_{i<t0} V_i [k = i] + sum_j sum_i C_{j,i} lambda_j^k b_i(k)`
/// with `b_i(k) = C(k,i)` or `k^i` depending on the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PCanonicalForm<F: Field> {
    ctx: F::Ctx,
    order: usize,
    basis: Basis,
    nilpotent: Vec<Matrix<F>>,
    geometric: Vec<GeometricTerm<F>>,
}

impl<F: Field> PCanonicalForm<F> {
    /// Assemble a form from its parts, checking shapes and the uniqueness
    /// conditions (distinct nonzero eigenvalues, nonzero last coefficients).
    pub fn from_parts(
        ctx: F::Ctx,
        order: usize,
        basis: Basis,
        nilpotent: Vec<Matrix<F>>,
        geometric: Vec<GeometricTerm<F>>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::Shape("order must be positive".into()));
        }
        if basis == Basis::Gamma && F::characteristic(&ctx) != 0 {
            return Err(Error::CharPositive);
        }
        let all = nilpotent.iter().chain(geometric.iter().flat_map(|g| &g.coeffs));
        for m in all {
            if m.order() != order || *m.ctx() != ctx {
                return Err(Error::Shape("coefficient matrix has the wrong order".into()));
            }
        }
        if nilpotent.last().is_some_and(Matrix::is_zero) {
            return Err(Error::Shape("last nilpotent coefficient is zero".into()));
        }
        for (j, g) in geometric.iter().enumerate() {
            if g.eigenvalue.is_zero() {
                return Err(Error::Shape("geometric eigenvalue is zero".into()));
            }
            if g.coeffs.last().is_none_or(Matrix::is_zero) {
                return Err(Error::Shape("last geometric coefficient is zero".into()));
            }
            if geometric[..j].iter().any(|h| h.eigenvalue == g.eigenvalue) {
                return Err(Error::Shape("repeated eigenvalue".into()));
            }
        }
        Ok(Self {
            ctx,
            order,
            basis,
            nilpotent,
            geometric,
        })
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// `V_0, ..., V_{t0-1}`.
    pub fn nilpotent(&self) -> &[Matrix<F>] {
        &self.nilpotent
    }

    pub fn geometric(&self) -> &[GeometricTerm<F>] {
        &self.geometric
    }

    /// Index of the eigenvalue 0.
    pub fn nilpotent_index(&self) -> usize {
        self.nilpotent.len()
    }

    /// Complex image; `None` over prime fields.
    pub fn to_complex(&self) -> Option<PCanonicalForm<Complex64>> {
        let geometric = self
            .geometric
            .iter()
            .map(|g| {
                Some(GeometricTerm {
                    eigenvalue: g.eigenvalue.to_complex()?,
                    coeffs: g
                        .coeffs
                        .iter()
                        .map(Matrix::to_complex)
                        .collect::<Option<Vec<_>>>()?,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(PCanonicalForm {
            ctx: (),
            order: self.order,
            basis: self.basis,
            nilpotent: self
                .nilpotent
                .iter()
                .map(Matrix::to_complex)
                .collect::<Option<Vec<_>>>()?,
            geometric,
        })
    }
}

fn trim_zeros<F: Field>(mut v: Vec<Matrix<F>>) -> Vec<Matrix<F>> {
    while v.last().is_some_and(Matrix::is_zero) {
        v.pop();
    }
    v
}

pub fn pcf_build<F: Field>(a: &Matrix<F>) -> Result<PCanonicalForm<F>> {
    pcf_build_with_tol(a, DEFAULT_TOL)
}

/// Lambda-basis form with `V_i = A^i pi_0` and
/// `C_{j,i} = lambda_j^{-i} (A - lambda_j I)^i pi_j`.
pub fn pcf_build_with_tol<F: Field>(a: &Matrix<F>, tol: f64) -> Result<PCanonicalForm<F>> {
    let sd = spectral_projections_with_tol(a, tol)?;
    let mut nilpotent = Vec::with_capacity(sd.nilpotent_index);
    if let Some(p0) = &sd.zero_projection {
        let mut v = p0.clone();
        for _ in 0..sd.nilpotent_index {
            let next = a * &v;
            nilpotent.push(v);
            v = next;
        }
    }
    let geometric = sd
        .eigen
        .into_iter()
        .map(|e| {
            let b = a.shift(&e.value).scale(&e.value.inv());
            let mut coeffs = Vec::with_capacity(e.index);
            let mut c = e.projection;
            for _ in 0..e.index {
                let next = &b * &c;
                coeffs.push(c);
                c = next;
            }
            GeometricTerm {
                eigenvalue: e.value,
                coeffs: trim_zeros(coeffs),
            }
        })
        .collect();
    Ok(PCanonicalForm {
        ctx: a.ctx().clone(),
        order: a.order(),
        basis: Basis::Lambda,
        nilpotent: trim_zeros(nilpotent),
        geometric,
    })
}

/// `A^k` from the form (with `0^0 = 1` and `C(k, i) = 0` for `k < i`).
pub fn pcf_eval<F: Field>(f: &PCanonicalForm<F>, k: u64) -> Matrix<F> {
    let ctx = &f.ctx;
    let mut acc = match f.nilpotent.get(k as usize) {
        Some(v) => v.clone(),
        None => Matrix::zeros(ctx.clone(), f.order),
    };
    for g in &f.geometric {
        let lk = g.eigenvalue.pow(k);
        for (i, c) in g.coeffs.iter().enumerate() {
            let b = match f.basis {
                Basis::Lambda => F::from_bigint(ctx, &binomial(k, i as u64)),
                Basis::Gamma => F::from_i64(ctx, k as i64).pow(i as u64),
            };
            if b.is_zero() {
                continue;
            }
            acc = &acc + &c.scale(&(lk.clone() * b));
        }
    }
    acc
}

fn rational<F: Field>(ctx: &F::Ctx, n: BigInt, d: BigInt) -> F {
    F::from_rational(ctx, &BigRational::new(n, d)).expect("characteristic zero")
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

fn change_basis<F: Field>(
    f: &PCanonicalForm<F>,
    to: Basis,
    weight: impl Fn(usize, usize) -> F,
) -> Result<PCanonicalForm<F>> {
    if F::characteristic(&f.ctx) != 0 {
        return Err(Error::CharPositive);
    }
    if f.basis == to {
        return Err(Error::WrongBasis);
    }
    let geometric = f
        .geometric
        .iter()
        .map(|g| {
            let t = g.coeffs.len();
            let coeffs = (0..t)
                .map(|m| {
                    (m..t).fold(Matrix::zeros(f.ctx.clone(), f.order), |acc, i| {
                        &acc + &g.coeffs[i].scale(&weight(i, m))
                    })
                })
                .collect();
            GeometricTerm {
                eigenvalue: g.eigenvalue.clone(),
                coeffs,
            }
        })
        .collect();
    Ok(PCanonicalForm {
        ctx: f.ctx.clone(),
        order: f.order,
        basis: to,
        nilpotent: f.nilpotent.clone(),
        geometric,
    })
}

/// Lambda to Gamma basis: `C'_{j,m} = sum_{i>=m} s(i,m)/i! C_{j,i}`.
pub fn pcf_to_gamma<F: Field>(f: &PCanonicalForm<F>) -> Result<PCanonicalForm<F>> {
    let ctx = f.ctx.clone();
    change_basis(f, Basis::Gamma, |i, m| {
        rational(&ctx, stirling_first(i, m), factorial(i))
    })
}

/// Gamma to Lambda basis: `C_{j,i} = sum_{m>=i} S(m,i) i! C'_{j,m}`.
pub fn pcf_to_lambda<F: Field>(f: &PCanonicalForm<F>) -> Result<PCanonicalForm<F>> {
    let ctx = f.ctx.clone();
    change_basis(f, Basis::Lambda, |m, i| {
        F::from_bigint(&ctx, &(stirling_second(m, i) * factorial(i)))
    })
}

/// `X^{t0} prod_j (X - lambda_j)^{t_j}`, indices read off the stored lengths.
pub fn pcf_minpoly<F: Field>(f: &PCanonicalForm<F>) -> Poly<F> {
    let x = Poly::x(f.ctx.clone());
    f.geometric
        .iter()
        .fold(x.pow(f.nilpotent.len()), |acc, g| {
            &acc * &Poly::linear(&g.eigenvalue).pow(g.coeffs.len())
        })
}

/// An eigenvalue term of a real form.
#[derive(Debug, Clone, PartialEq)]
pub enum RealTerm {
    /// Real eigenvalue `lambda`: `lambda^k b_i(k) C_i`.
    Real {
        eigenvalue: f64,
        coeffs: Vec<DMatrix<f64>>,
    },
    /// Conjugate pair `r e^{±i theta}`, `theta` in `(0, pi)`:
    /// `r^k (cos(k theta) P_i + sin(k theta) Q_i) b_i(k)`.
    Spiral {
        r: f64,
        theta: f64,
        cos_coeffs: Vec<DMatrix<f64>>,
        sin_coeffs: Vec<DMatrix<f64>>,
    },
}

impl RealTerm {
    pub fn len(&self) -> usize {
        match self {
            RealTerm::Real { coeffs, .. } => coeffs.len(),
            RealTerm::Spiral { cos_coeffs, .. } => cos_coeffs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// P-canonical form of a real matrix over the reals, conjugate pairs merged.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPCF {
    pub order: usize,
    pub basis: Basis,
    pub nilpotent: Vec<DMatrix<f64>>,
    pub terms: Vec<RealTerm>,
}

fn basis_value(basis: Basis, k: u64, i: usize) -> f64 {
    match basis {
        Basis::Lambda => {
            use num_traits::ToPrimitive;
            binomial(k, i as u64).to_f64().unwrap_or(f64::INFINITY)
        }
        Basis::Gamma => (k as f64).powi(i as i32),
    }
}

impl RealPCF {
    /// `A^k` as a real matrix.
    pub fn eval(&self, k: u64) -> DMatrix<f64> {
        let n = self.order;
        let mut acc = self
            .nilpotent
            .get(k as usize)
            .cloned()
            .unwrap_or_else(|| DMatrix::zeros(n, n));
        for term in &self.terms {
            match term {
                RealTerm::Real { eigenvalue, coeffs } => {
                    let lk = eigenvalue.powi(k as i32);
                    for (i, c) in coeffs.iter().enumerate() {
                        acc += c * (lk * basis_value(self.basis, k, i));
                    }
                }
                RealTerm::Spiral {
                    r,
                    theta,
                    cos_coeffs,
                    sin_coeffs,
                } => {
                    let rk = r.powi(k as i32);
                    let (s, c) = (k as f64 * theta).sin_cos();
                    for (i, (p, q)) in cos_coeffs.iter().zip(sin_coeffs).enumerate() {
                        let b = rk * basis_value(self.basis, k, i);
                        acc += p * (b * c) + q * (b * s);
                    }
                }
            }
        }
        acc
    }
}

pub fn pcf_realify(f: &PCanonicalForm<Complex64>) -> Result<RealPCF> {
    pcf_realify_with_tol(f, DEFAULT_TOL)
}

fn real_matrix(m: &Matrix<Complex64>, tol: f64) -> Result<DMatrix<f64>> {
    if m.max_imag() > tol * m.max_norm().max(1.0) {
        return Err(Error::NotReal);
    }
    Ok(m.real_part())
}

/// Merge conjugate eigenvalue pairs into cosine/sine terms:
/// `cos_coeffs = 2 Re C`, `sin_coeffs = -2 Im C` for the member with
/// positive imaginary part.
pub fn pcf_realify_with_tol(f: &PCanonicalForm<Complex64>, tol: f64) -> Result<RealPCF> {
    let nilpotent = f
        .nilpotent
        .iter()
        .map(|m| real_matrix(m, tol))
        .collect::<Result<Vec<_>>>()?;
    let is_real = |z: &Complex64| z.im.abs() <= tol * z.norm().max(1.0);
    let mut terms = Vec::new();
    for g in &f.geometric {
        let z = g.eigenvalue;
        if is_real(&z) {
            terms.push(RealTerm::Real {
                eigenvalue: z.re,
                coeffs: g
                    .coeffs
                    .iter()
                    .map(|m| real_matrix(m, tol))
                    .collect::<Result<Vec<_>>>()?,
            });
            continue;
        }
        let partner = f
            .geometric
            .iter()
            .find(|h| h.eigenvalue.same_point(&z.conj(), tol))
            .ok_or(Error::NotConjugateSymmetric)?;
        if partner.coeffs.len() != g.coeffs.len() {
            return Err(Error::NotConjugateSymmetric);
        }
        for (c, d) in g.coeffs.iter().zip(&partner.coeffs) {
            let conj = c.map(|x| x.conj());
            if conj.max_diff(d) > tol * c.max_norm().max(1.0) {
                return Err(Error::NotReal);
            }
        }
        if z.im < 0.0 {
            continue;
        }
        terms.push(RealTerm::Spiral {
            r: z.norm(),
            theta: z.arg(),
            cos_coeffs: g.coeffs.iter().map(|c| c.real_part() * 2.0).collect(),
            sin_coeffs: g
                .coeffs
                .iter()
                .map(|c| DMatrix::from_fn(f.order, f.order, |i, j| -2.0 * c.get(i, j).im))
                .collect(),
        });
    }
    Ok(RealPCF {
        order: f.order,
        basis: f.basis,
        nilpotent,
        terms,
    })
}
