//! Closed-form matrix exponentials and logarithms read off the P-canonical form.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pcf::{
    pcf_build_with_tol, pcf_realify_with_tol, pcf_to_lambda, Basis, GeometricTerm, PCanonicalForm, RealPCF,
    RealTerm,
};
use crate::scalar::{Field, DEFAULT_TOL};

type C = Complex64;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// P-canonical form over C. Exact rational inputs with split spectra are
/// decomposed exactly and converted afterwards; anything else goes through
/// the numeric path.
pub fn complex_pcf<F: Field>(a: &Matrix<F>, tol: f64) -> Result<PCanonicalForm<C>> {
    if F::characteristic(a.ctx()) != 0 {
        return Err(Error::CharPositive);
    }
    let numeric = || pcf_build_with_tol(&a.to_complex().expect("characteristic zero"), tol);
    if !F::EXACT {
        return numeric();
    }
    match pcf_build_with_tol(a, tol) {
        Ok(f) => Ok(f.to_complex().expect("characteristic zero")),
        Err(Error::NonSplitField) => numeric(),
        Err(e) => Err(e),
    }
}

fn lambda_basis(f: &PCanonicalForm<C>) -> Result<PCanonicalForm<C>> {
    match f.basis() {
        Basis::Lambda => Ok(f.clone()),
        Basis::Gamma => pcf_to_lambda(f),
    }
}

/// One exponential term `e^{lambda t} sum_i coeffs[i] t^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpTerm {
    pub exponent: C,
    pub coeffs: Vec<Matrix<C>>,
}

/// `e^{tA} = sum_i M_i t^i + sum_j e^{lambda_j t} sum_i M_{j,i} t^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormExp {
    pub order: usize,
    /// `M_i = A^i pi_0 / i!`.
    pub polynomial_part: Vec<Matrix<C>>,
    /// `M_{j,i} = (A - lambda_j I)^i pi_j / i!`.
    pub exponential_terms: Vec<ExpTerm>,
}

impl ClosedFormExp {
    /// Substitute `t^i/i!` for the nilpotent slots and `(t lambda)^i e^{t lambda}/i!`
    /// for the eigenvalue terms of a Lambda-basis form.
    pub fn from_pcf(f: &PCanonicalForm<C>) -> Result<Self> {
        let f = lambda_basis(f)?;
        let polynomial_part = f
            .nilpotent()
            .iter()
            .enumerate()
            .map(|(i, v)| v.scale(&C::new(1.0 / factorial(i), 0.0)))
            .collect();
        let exponential_terms = f
            .geometric()
            .iter()
            .map(|g| ExpTerm {
                exponent: g.eigenvalue,
                coeffs: g
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c.scale(&(g.eigenvalue.powu(i as u32) / factorial(i))))
                    .collect(),
            })
            .collect();
        Ok(Self {
            order: f.order(),
            polynomial_part,
            exponential_terms,
        })
    }

    pub fn eval(&self, t: C) -> Matrix<C> {
        closedform_eval(self, t)
    }

    /// `d/dt e^{tA}` at `t = 0`.
    pub fn derivative_at_zero(&self) -> Matrix<C> {
        let mut acc = self
            .polynomial_part
            .get(1)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros((), self.order));
        for term in &self.exponential_terms {
            acc = &acc + &term.coeffs[0].scale(&term.exponent);
            if let Some(c1) = term.coeffs.get(1) {
                acc = &acc + c1;
            }
        }
        acc
    }
}

pub fn expm_closed<F: Field>(a: &Matrix<F>) -> Result<ClosedFormExp> {
    expm_closed_with_tol(a, DEFAULT_TOL)
}

pub fn expm_closed_with_tol<F: Field>(a: &Matrix<F>, tol: f64) -> Result<ClosedFormExp> {
    ClosedFormExp::from_pcf(&complex_pcf(a, tol)?)
}

fn poly_in_t(coeffs: &[Matrix<C>], t: C, order: usize) -> Matrix<C> {
    coeffs
        .iter()
        .rev()
        .fold(Matrix::zeros((), order), |acc, c| &acc.scale(&t) + c)
}

pub fn closedform_eval(e: &ClosedFormExp, t: C) -> Matrix<C> {
    let mut acc = poly_in_t(&e.polynomial_part, t, e.order);
    for term in &e.exponential_terms {
        let p = poly_in_t(&term.coeffs, t, e.order);
        acc = &acc + &p.scale(&(term.exponent * t).exp());
    }
    acc
}

/// Choice of logarithm branch per eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogBranchSpec {
    /// Principal logarithm; requires no eigenvalue on `(-inf, 0]`.
    Principal,
    /// `log lambda_j = ln|lambda_j| + i (Arg lambda_j + 2 pi k_j)`, one `k_j`
    /// per nonzero eigenvalue (or real term) in canonical order.
    Branches(Vec<i64>),
}

fn on_real_axis(z: C, tol: f64) -> bool {
    z.im.abs() <= tol * z.norm().max(1.0)
}

/// Argument in `(-pi, pi]`, with numerically real values pinned to `0` or `pi`.
fn arg(z: C, tol: f64) -> f64 {
    if on_real_axis(z, tol) {
        if z.re < 0.0 {
            PI
        } else {
            0.0
        }
    } else {
        z.arg()
    }
}

/// `log lambda` on branch `k`, or the principal value (`k = None`).
fn branch_log(lambda: C, k: Option<i64>, tol: f64) -> Result<C> {
    if lambda.norm() == 0.0 {
        return Err(Error::SingularMatrix);
    }
    let k = match k {
        Some(k) => k,
        None => {
            if on_real_axis(lambda, tol) && lambda.re < 0.0 {
                return Err(Error::PrincipalUndefined);
            }
            0
        }
    };
    Ok(C::new(
        lambda.norm().ln(),
        arg(lambda, tol) + 2.0 * PI * k as f64,
    ))
}

fn branch_logs(eigs: &[C], branch: &LogBranchSpec, tol: f64) -> Result<Vec<C>> {
    let ks: Vec<Option<i64>> = match branch {
        LogBranchSpec::Principal => vec![None; eigs.len()],
        LogBranchSpec::Branches(ks) => {
            if ks.len() != eigs.len() {
                return Err(Error::BranchCount {
                    expected: eigs.len(),
                    got: ks.len(),
                });
            }
            ks.iter().copied().map(Some).collect()
        }
    };
    let zs = eigs
        .iter()
        .zip(ks)
        .map(|(&l, k)| branch_log(l, k, tol))
        .collect::<Result<Vec<_>>>()?;
    check_distinct(&zs, tol)?;
    Ok(zs)
}

fn check_distinct(zs: &[C], tol: f64) -> Result<()> {
    for (i, a) in zs.iter().enumerate() {
        if zs[..i].iter().any(|b| a.same_point(b, tol)) {
            return Err(Error::ZeroLogClash);
        }
    }
    Ok(())
}

pub fn logm<F: Field>(a: &Matrix<F>, branch: &LogBranchSpec) -> Result<Matrix<C>> {
    logm_with_tol(a, branch, DEFAULT_TOL)
}

pub fn logm_with_tol<F: Field>(a: &Matrix<F>, branch: &LogBranchSpec, tol: f64) -> Result<Matrix<C>> {
    logm_from_pcf(&complex_pcf(a, tol)?, branch, tol)
}

/// `sum_j z_j pi_j + sum_j sum_{i>=1} ((-1)^{i-1}/i) C_{j,i}` with `z_j` on the
/// requested branch.
pub fn logm_from_pcf(f: &PCanonicalForm<C>, branch: &LogBranchSpec, tol: f64) -> Result<Matrix<C>> {
    let f = lambda_basis(f)?;
    if f.nilpotent_index() > 0 {
        return Err(Error::SingularMatrix);
    }
    let eigs: Vec<C> = f.geometric().iter().map(|g| g.eigenvalue).collect();
    let zs = branch_logs(&eigs, branch, tol)?;
    let mut acc = Matrix::zeros((), f.order());
    for (g, z) in f.geometric().iter().zip(zs) {
        acc = &acc + &g.coeffs[0].scale(&z);
        for (i, c) in g.coeffs.iter().enumerate().skip(1) {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            acc = &acc + &c.scale(&C::new(sign / i as f64, 0.0));
        }
    }
    Ok(acc)
}

pub fn log_pcf(f: &PCanonicalForm<C>, branch: &LogBranchSpec) -> Result<PCanonicalForm<C>> {
    log_pcf_with_tol(f, branch, DEFAULT_TOL)
}

/// Per-eigenvalue Gamma coefficients of `A^k = sum C'_{i} lambda^k k^i`.
struct GammaGroup {
    z: C,
    coeffs: Vec<Matrix<C>>,
}

/// Lambda-basis form of `L^k` for the logarithm `L`: the Gamma coefficient
/// `C'_{j,i}` becomes `i! z_j^{-i} C'_{j,i}` on eigenvalue `z_j`, or the
/// nilpotent slot `i` (times `i!`) when `z_j = 0`.
fn assemble_log(order: usize, groups: Vec<GammaGroup>, tol: f64) -> Result<PCanonicalForm<C>> {
    check_distinct(&groups.iter().map(|g| g.z).collect::<Vec<_>>(), tol)?;
    let mut nilpotent = Vec::new();
    let mut geometric = Vec::new();
    for g in groups {
        if g.z.norm() == 0.0 {
            nilpotent = g
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.scale(&C::new(factorial(i), 0.0)))
                .collect();
            while nilpotent.last().is_some_and(|m: &Matrix<C>| m.is_zero()) {
                nilpotent.pop();
            }
        } else {
            let mut coeffs: Vec<Matrix<C>> = g
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.scale(&(g.z.powi(-(i as i32)) * factorial(i))))
                .collect();
            while coeffs.last().is_some_and(Matrix::is_zero) {
                coeffs.pop();
            }
            if coeffs.is_empty() {
                continue;
            }
            geometric.push(GeometricTerm {
                eigenvalue: g.z,
                coeffs,
            });
        }
    }
    geometric.sort_by(|a, b| a.eigenvalue.canonical_cmp(&b.eigenvalue));
    PCanonicalForm::from_parts((), order, Basis::Lambda, nilpotent, geometric)
}

pub fn log_pcf_with_tol(
    f: &PCanonicalForm<C>,
    branch: &LogBranchSpec,
    tol: f64,
) -> Result<PCanonicalForm<C>> {
    if f.basis() != Basis::Gamma {
        return Err(Error::WrongBasis);
    }
    if f.nilpotent_index() > 0 {
        return Err(Error::SingularMatrix);
    }
    let eigs: Vec<C> = f.geometric().iter().map(|g| g.eigenvalue).collect();
    let zs = branch_logs(&eigs, branch, tol)?;
    let groups = f
        .geometric()
        .iter()
        .zip(zs)
        .map(|(g, z)| GammaGroup {
            z,
            coeffs: g.coeffs.clone(),
        })
        .collect();
    assemble_log(f.order(), groups, tol)
}

fn complex_of(m: &DMatrix<f64>, scale: C) -> Matrix<C> {
    Matrix::from_fn((), m.nrows(), |i, j| scale * m[(i, j)])
}

/// Logarithm of a real form (Gamma basis): real eigenvalues map as in
/// [`log_pcf`]; a spiral `r e^{±i theta}` maps to the conjugate pair
/// `w = log(r e^{i theta})`, `u = conj(w)`. One branch entry per term.
pub fn logm_real_pcf(f: &RealPCF, branch: &LogBranchSpec) -> Result<PCanonicalForm<C>> {
    logm_real_pcf_with_tol(f, branch, DEFAULT_TOL)
}

pub fn logm_real_pcf_with_tol(
    f: &RealPCF,
    branch: &LogBranchSpec,
    tol: f64,
) -> Result<PCanonicalForm<C>> {
    if f.basis != Basis::Gamma {
        return Err(Error::WrongBasis);
    }
    if !f.nilpotent.is_empty() {
        return Err(Error::SingularMatrix);
    }
    let eigs: Vec<C> = f
        .terms
        .iter()
        .map(|t| match t {
            RealTerm::Real { eigenvalue, .. } => C::new(*eigenvalue, 0.0),
            RealTerm::Spiral { r, theta, .. } => C::from_polar(*r, *theta),
        })
        .collect();
    let ks: Vec<Option<i64>> = match branch {
        LogBranchSpec::Principal => vec![None; eigs.len()],
        LogBranchSpec::Branches(ks) if ks.len() == eigs.len() => ks.iter().copied().map(Some).collect(),
        LogBranchSpec::Branches(ks) => {
            return Err(Error::BranchCount {
                expected: eigs.len(),
                got: ks.len(),
            })
        }
    };
    let half = C::new(0.5, 0.0);
    let mut groups = Vec::new();
    for ((term, &l), k) in f.terms.iter().zip(&eigs).zip(ks) {
        let w = branch_log(l, k, tol)?;
        match term {
            RealTerm::Real { coeffs, .. } => groups.push(GammaGroup {
                z: w,
                coeffs: coeffs.iter().map(|c| complex_of(c, C::new(1.0, 0.0))).collect(),
            }),
            RealTerm::Spiral {
                cos_coeffs,
                sin_coeffs,
                ..
            } => {
                // r^k cos = (mu^k + conj(mu)^k)/2, r^k sin = (mu^k - conj(mu)^k)/(2i)
                let pair = |sign: f64| -> Vec<Matrix<C>> {
                    cos_coeffs
                        .iter()
                        .zip(sin_coeffs)
                        .map(|(p, q)| &complex_of(p, half) + &complex_of(q, C::new(0.0, -0.5 * sign)))
                        .collect()
                };
                groups.push(GammaGroup { z: w, coeffs: pair(1.0) });
                groups.push(GammaGroup {
                    z: w.conj(),
                    coeffs: pair(-1.0),
                });
            }
        }
    }
    assemble_log(f.order, groups, tol)
}

/// Real closed form of `e^{tA}`: term `i` of an eigenvalue carries
/// `f_i(z) = z^i e^z / i!` evaluated at `t lambda`; spirals use
/// `cos_i Re f_i(t mu) + sin_i Im f_i(t mu)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealClosedForm {
    pub order: usize,
    /// `t^i / i!` coefficients of the nilpotent part.
    pub polynomial_part: Vec<DMatrix<f64>>,
    /// Lambda-basis real terms.
    pub terms: Vec<RealTerm>,
}

fn f_j(j: usize, z: C) -> C {
    z.powu(j as u32) * z.exp() / factorial(j)
}

impl RealClosedForm {
    pub fn eval(&self, t: f64) -> DMatrix<f64> {
        let n = self.order;
        let mut acc = DMatrix::zeros(n, n);
        for (i, v) in self.polynomial_part.iter().enumerate() {
            acc += v * (t.powi(i as i32) / factorial(i));
        }
        for term in &self.terms {
            match term {
                RealTerm::Real { eigenvalue, coeffs } => {
                    for (i, c) in coeffs.iter().enumerate() {
                        acc += c * f_j(i, C::new(t * eigenvalue, 0.0)).re;
                    }
                }
                RealTerm::Spiral {
                    r,
                    theta,
                    cos_coeffs,
                    sin_coeffs,
                } => {
                    let mu = C::from_polar(*r, *theta);
                    for (i, (p, q)) in cos_coeffs.iter().zip(sin_coeffs).enumerate() {
                        let v = f_j(i, mu * t);
                        acc += p * v.re + q * v.im;
                    }
                }
            }
        }
        acc
    }
}

pub fn expm_real<F: Field>(a: &Matrix<F>) -> Result<RealClosedForm> {
    expm_real_with_tol(a, DEFAULT_TOL)
}

pub fn expm_real_with_tol<F: Field>(a: &Matrix<F>, tol: f64) -> Result<RealClosedForm> {
    let ac = a.to_complex().ok_or(Error::CharPositive)?;
    if ac.max_imag() > tol * ac.max_norm().max(1.0) {
        return Err(Error::NotReal);
    }
    let f = lambda_basis(&complex_pcf(a, tol)?)?;
    let r = pcf_realify_with_tol(&f, tol)?;
    Ok(RealClosedForm {
        order: r.order,
        polynomial_part: r.nilpotent,
        terms: r.terms,
    })
}
