//! Minimal polynomials of Kronecker products, computed symbolically from the
//! factors' spectra, and the closure polynomial for termwise products of
//! linear recurrence sequences.

use crate::error::{Error, Result};
use crate::linalg::{companion, kron, minpoly_with_tol, Matrix};
use crate::scalar::{poly_factor_with_tol, Field, Poly, DEFAULT_TOL};
use crate::wedge::{wedge, WedgeContext};

/// Largest Kronecker order the direct oracle accepts.
pub const MAX_DIRECT_ORDER: usize = 4096;

/// Factored minimal polynomial `X^{zero_index} prod (X - lambda)^{index}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigSpec<F: Field> {
    pub ctx: F::Ctx,
    pub zero_index: usize,
    /// Distinct nonzero eigenvalues with their indices.
    pub nonzero: Vec<(F, usize)>,
}

impl<F: Field> EigSpec<F> {
    pub fn from_poly(p: &Poly<F>) -> Result<Self> {
        Self::from_poly_with_tol(p, DEFAULT_TOL)
    }

    pub fn from_poly_with_tol(p: &Poly<F>, tol: f64) -> Result<Self> {
        let f = poly_factor_with_tol(p, tol)?;
        if !f.is_split() {
            return Err(Error::NonSplitField);
        }
        let mut spec = Self {
            ctx: p.ctx().clone(),
            zero_index: 0,
            nonzero: Vec::new(),
        };
        for (root, mult) in f.roots {
            if root.is_zero() {
                spec.zero_index = mult;
            } else {
                spec.nonzero.push((root, mult));
            }
        }
        Ok(spec)
    }

    /// Spectrum of a matrix's minimal polynomial.
    pub fn from_matrix(a: &Matrix<F>) -> Result<Self> {
        Self::from_matrix_with_tol(a, DEFAULT_TOL)
    }

    pub fn from_matrix_with_tol(a: &Matrix<F>, tol: f64) -> Result<Self> {
        let f = F::split_minimal_polynomial(a, tol)?;
        let mut spec = Self {
            ctx: a.ctx().clone(),
            zero_index: 0,
            nonzero: Vec::new(),
        };
        for (root, mult) in f.roots {
            if root.is_zero() {
                spec.zero_index = mult;
            } else {
                spec.nonzero.push((root, mult));
            }
        }
        Ok(spec)
    }

    pub fn to_poly(&self) -> Poly<F> {
        let x = Poly::x(self.ctx.clone());
        self.nonzero.iter().fold(x.pow(self.zero_index), |acc, (l, t)| {
            &acc * &Poly::linear(l).pow(*t)
        })
    }
}

/// Products of eigenvalue tuples with the largest iterated wedge of their
/// indices, one entry per distinct product.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductClassTable<F: Field> {
    pub classes: Vec<(F, usize)>,
}

impl<F: Field> ProductClassTable<F> {
    pub fn build(specs: &[EigSpec<F>], ctx: &WedgeContext, tol: f64) -> Self {
        let mut classes: Vec<(F, usize)> = Vec::new();
        let Some(first) = specs.first() else {
            return Self { classes };
        };
        // running tuples: (product, folded wedge)
        let mut tuples: Vec<(F, usize)> = first.nonzero.clone();
        for spec in &specs[1..] {
            tuples = tuples
                .iter()
                .flat_map(|(p, w)| {
                    spec.nonzero
                        .iter()
                        .map(move |(l, t)| (p.clone() * l.clone(), wedge(*w, *t, ctx)))
                })
                .collect();
        }
        for (p, w) in tuples {
            match classes.iter_mut().find(|(q, _)| q.same_point(&p, tol)) {
                Some(entry) => entry.1 = entry.1.max(w),
                None => classes.push((p, w)),
            }
        }
        classes.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        Self { classes }
    }

    /// `prod (X - product)^{exponent}`.
    pub fn to_poly(&self, ctx: &F::Ctx) -> Poly<F> {
        self.classes.iter().fold(Poly::one(ctx.clone()), |acc, (p, e)| {
            &acc * &Poly::linear(p).pow(*e)
        })
    }
}

fn check_specs<F: Field>(specs: &[EigSpec<F>], ctx: &WedgeContext) -> Result<F::Ctx> {
    let first = specs.first().ok_or(Error::EmptyInput)?;
    if specs.iter().any(|s| s.ctx != first.ctx) {
        return Err(Error::MixedFields);
    }
    let field = F::characteristic(&first.ctx);
    if field != ctx.characteristic() {
        return Err(Error::CharacteristicMismatch {
            ctx: ctx.characteristic(),
            field,
        });
    }
    Ok(first.ctx.clone())
}

/// Nilpotent index of the Kronecker product: the smallest zero index among
/// purely nilpotent factors if there are any, otherwise the largest.
pub fn kron_zero_index<F: Field>(specs: &[EigSpec<F>]) -> usize {
    let nilpotent = specs
        .iter()
        .filter(|s| s.nonzero.is_empty())
        .map(|s| s.zero_index)
        .min();
    nilpotent.unwrap_or_else(|| specs.iter().map(|s| s.zero_index).max().unwrap_or(0))
}

pub fn kron_minpoly_symbolic<F: Field>(specs: &[EigSpec<F>], ctx: &WedgeContext) -> Result<Poly<F>> {
    kron_minpoly_symbolic_with_tol(specs, ctx, DEFAULT_TOL)
}

/// `X^rho * prod (X - product)^{exponent}` for the Kronecker product of
/// matrices with the given spectra.
pub fn kron_minpoly_symbolic_with_tol<F: Field>(
    specs: &[EigSpec<F>],
    ctx: &WedgeContext,
    tol: f64,
) -> Result<Poly<F>> {
    let fctx = check_specs(specs, ctx)?;
    let rho = kron_zero_index(specs);
    let upsilon = ProductClassTable::build(specs, ctx, tol).to_poly(&fctx);
    Ok(&Poly::x(fctx).pow(rho) * &upsilon)
}

pub fn kron_minpoly_direct<F: Field>(mats: &[Matrix<F>]) -> Result<Poly<F>> {
    kron_minpoly_direct_with_tol(mats, DEFAULT_TOL)
}

/// Minimal polynomial of the explicit Kronecker product.
pub fn kron_minpoly_direct_with_tol<F: Field>(mats: &[Matrix<F>], tol: f64) -> Result<Poly<F>> {
    let (first, rest) = mats.split_first().ok_or(Error::EmptyInput)?;
    let order = mats
        .iter()
        .try_fold(1usize, |acc, m| acc.checked_mul(m.order()))
        .unwrap_or(usize::MAX);
    if order > MAX_DIRECT_ORDER {
        return Err(Error::OrderTooLarge(order));
    }
    let mut k = first.clone();
    for m in rest {
        k = kron(&k, m)?;
    }
    Ok(minpoly_with_tol(&k, tol))
}

pub fn lrs_product_poly<F: Field>(polys: &[Poly<F>], ctx: &WedgeContext) -> Result<Poly<F>> {
    lrs_product_poly_with_tol(polys, ctx, DEFAULT_TOL)
}

/// Characteristic polynomial of the termwise products of sequences with
/// characteristic polynomials `polys`: the minimal polynomial of the
/// Kronecker product of their companion matrices.
pub fn lrs_product_poly_with_tol<F: Field>(
    polys: &[Poly<F>],
    ctx: &WedgeContext,
    tol: f64,
) -> Result<Poly<F>> {
    if polys.is_empty() {
        return Err(Error::EmptyInput);
    }
    let companions = polys.iter().map(companion).collect::<Result<Vec<_>>>()?;
    let specs: Result<Vec<EigSpec<F>>> =
        polys.iter().map(|p| EigSpec::from_poly_with_tol(p, tol)).collect();
    match specs {
        Ok(specs) => kron_minpoly_symbolic_with_tol(&specs, ctx, tol),
        Err(Error::NonSplitField) | Err(Error::PrimeTooLarge(_)) => {
            let field = F::characteristic(polys[0].ctx());
            if field != ctx.characteristic() {
                return Err(Error::CharacteristicMismatch {
                    ctx: ctx.characteristic(),
                    field,
                });
            }
            kron_minpoly_direct_with_tol(&companions, tol)
        }
        Err(e) => Err(e),
    }
}
