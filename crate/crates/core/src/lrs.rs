//! Linear recurrence sequences with constant coefficients.

use crate::error::{Error, Result};
use crate::linalg::solve_linear;
use crate::scalar::{Field, Poly};

/// Sequence satisfying `a_{n+d} = -sum_{i<d} c_i a_{n+i}` for the monic
/// characteristic polynomial `X^d + sum c_i X^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinRecSeq<F: Field> {
    char_poly: Poly<F>,
    initial: Vec<F>,
}

impl<F: Field> LinRecSeq<F> {
    pub fn new(char_poly: Poly<F>, initial: Vec<F>) -> Result<Self> {
        let d = char_poly.degree().ok_or(Error::ZeroPolynomial)?;
        if !char_poly.is_monic() {
            return Err(Error::NonMonic);
        }
        if d == 0 {
            return Err(Error::DegreeZero);
        }
        if initial.len() != d {
            return Err(Error::Shape(format!(
                "expected {d} initial terms, got {}",
                initial.len()
            )));
        }
        if initial.iter().any(|x| x.ctx() != *char_poly.ctx()) {
            return Err(Error::MixedFields);
        }
        Ok(Self { char_poly, initial })
    }

    pub fn char_poly(&self) -> &Poly<F> {
        &self.char_poly
    }

    pub fn initial(&self) -> &[F] {
        &self.initial
    }

    pub fn order(&self) -> usize {
        self.initial.len()
    }

    /// The first `count` terms.
    pub fn terms(&self, count: usize) -> Vec<F> {
        let d = self.order();
        let c = self.char_poly.coeffs();
        let mut out: Vec<F> = self.initial.iter().take(count).cloned().collect();
        while out.len() < count {
            let n = out.len() - d;
            let next = (0..d).fold(F::zero(self.char_poly.ctx()), |acc, i| {
                acc - c[i].clone() * out[n + i].clone()
            });
            out.push(next);
        }
        out
    }
}

/// The `n`-th term, by unrolling the recurrence.
pub fn lrs_eval<F: Field>(s: &LinRecSeq<F>, n: usize) -> F {
    s.terms(n + 1).pop().expect("nonempty")
}

/// True when `prefix` satisfies the recurrence of `p` wherever it applies.
pub fn satisfies<F: Field>(prefix: &[F], p: &Poly<F>) -> bool {
    let Some(d) = p.degree() else {
        return false;
    };
    let c = p.coeffs();
    (0..prefix.len().saturating_sub(d)).all(|n| {
        (0..=d)
            .fold(F::zero(p.ctx()), |acc, i| acc + c[i].clone() * prefix[n + i].clone())
            .is_zero()
    })
}

/// Termwise product of sequences, carried with the annihilator `p`
/// (checked on the first `3 deg p` terms).
pub fn lrs_mul<F: Field>(xs: &[LinRecSeq<F>], p: &Poly<F>) -> Result<LinRecSeq<F>> {
    let first = xs.first().ok_or(Error::EmptyInput)?;
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    let window = 3 * d.max(1);
    let mut prod = first.terms(window);
    for s in &xs[1..] {
        if s.char_poly.ctx() != first.char_poly.ctx() {
            return Err(Error::MixedFields);
        }
        for (a, b) in prod.iter_mut().zip(s.terms(window)) {
            *a = a.clone() * b;
        }
    }
    if p.ctx() != first.char_poly.ctx() {
        return Err(Error::MixedFields);
    }
    let out = LinRecSeq::new(p.clone(), prod[..d].to_vec())?;
    if !satisfies(&prod, p) {
        return Err(Error::AnnihilatorMismatch);
    }
    Ok(out)
}

/// Minimal monic polynomial annihilating `prefix`, searched up to degree
/// `len/2 - 1` by solving the Hankel system exactly.
pub fn lrs_min_annihilator<F: Field>(prefix: &[F]) -> Result<Poly<F>> {
    if !F::EXACT {
        return Err(Error::NumericFieldUnsupported);
    }
    let first = prefix.first().ok_or(Error::InsufficientData)?;
    let ctx = first.ctx();
    let len = prefix.len();
    if len < 2 {
        return Err(Error::InsufficientData);
    }
    for d in 0..len / 2 {
        if d == 0 {
            if prefix.iter().all(F::is_zero) {
                return Ok(Poly::one(ctx));
            }
            continue;
        }
        let rows: Vec<Vec<F>> = (0..len - d).map(|n| prefix[n..n + d].to_vec()).collect();
        let rhs: Vec<F> = (0..len - d).map(|n| -prefix[n + d].clone()).collect();
        if let Some(c) = solve_linear(&ctx, &rows, &rhs, d) {
            let mut coeffs = c;
            coeffs.push(F::one(&ctx));
            return Ok(Poly::new(ctx, coeffs));
        }
    }
    Err(Error::InsufficientData)
}
