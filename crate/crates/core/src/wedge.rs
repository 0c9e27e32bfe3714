//! The operations `s ∧ t` and `t ∧_λ s` governing nilpotency indices of
//! Kronecker products, in characteristic zero and prime characteristic.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::scalar::{binomial, Field, Fp, PrimeModulus};

/// Characteristic of the working field: 0 or a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WedgeContext {
    characteristic: u64,
}

impl WedgeContext {
    /// Characteristic 0.
    pub fn zero() -> Self {
        Self { characteristic: 0 }
    }

    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic != 0 {
            PrimeModulus::new(characteristic)?;
        }
        Ok(Self { characteristic })
    }

    /// Context matching the characteristic of a field.
    pub fn of_field<F: Field>(ctx: &F::Ctx) -> Self {
        Self {
            characteristic: F::characteristic(ctx),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }
}

/// True when adding `i` and `j` in base `p` produces no carry, i.e. when
/// `C(i+j, i)` is nonzero mod `p`.
fn no_carry(mut i: usize, mut j: usize, p: usize) -> bool {
    while i > 0 || j > 0 {
        if i % p + j % p >= p {
            return false;
        }
        i /= p;
        j /= p;
    }
    true
}

/// `s ∧ t`: the largest `i + j + 1` with `i < s`, `j < t` and `C(i+j, i) != 0`
/// in the field; zero when either argument is zero.
pub fn wedge(s: usize, t: usize, ctx: &WedgeContext) -> usize {
    if s == 0 || t == 0 {
        return 0;
    }
    let p = ctx.characteristic as usize;
    if p == 0 {
        return s + t - 1;
    }
    let mut best = 0;
    for i in (0..s).rev() {
        if i + t <= best {
            break;
        }
        for j in (0..t).rev() {
            if i + j < best {
                break;
            }
            if no_carry(i, j, p) {
                best = i + j + 1;
                break;
            }
        }
    }
    best
}

/// `s ∧ t` read directly off a table of binomial coefficients.
pub fn wedge_binomial_table(s: usize, t: usize, ctx: &WedgeContext) -> usize {
    if s == 0 || t == 0 {
        return 0;
    }
    let p = ctx.characteristic;
    let mut best = 0;
    for i in 0..s {
        for j in 0..t {
            let b = binomial((i + j) as u64, i as u64);
            let nonzero = if p == 0 {
                b != BigInt::from(0)
            } else {
                b % BigInt::from(p) != BigInt::from(0)
            };
            if nonzero {
                best = best.max(i + j + 1);
            }
        }
    }
    best
}

/// `t ∧_λ s`, the nilpotency index contributed by `J_t(0) ⊗ J_s(λ)`.
pub fn wedge_lambda(t: usize, s: usize, lambda_is_zero: bool) -> usize {
    if lambda_is_zero {
        t.min(s)
    } else if s != 0 {
        t
    } else {
        0
    }
}

/// Dimension of the span of the termwise products `C(k,a) C(k,b)`,
/// `a < s`, `b < t`, observed on `k < horizon`.
pub fn wedge_oracle_dim(s: usize, t: usize, ctx: &WedgeContext, horizon: usize) -> Result<usize> {
    let required = s + t + 2;
    if horizon < required {
        return Err(Error::HorizonTooSmall { horizon, required });
    }
    let products = |a: usize, b: usize| -> Vec<BigInt> {
        (0..horizon as u64)
            .map(|k| binomial(k, a as u64) * binomial(k, b as u64))
            .collect()
    };
    let rows: Vec<Vec<BigInt>> = (0..s)
        .flat_map(|a| (0..t).map(move |b| (a, b)))
        .map(|(a, b)| products(a, b))
        .collect();
    Ok(match ctx.characteristic {
        0 => rank(
            &rows
                .into_iter()
                .map(|r| r.into_iter().map(BigRational::from_integer).collect())
                .collect::<Vec<Vec<_>>>(),
        ),
        p => {
            let m = PrimeModulus::new(p)?;
            rank(
                &rows
                    .iter()
                    .map(|r| r.iter().map(|v| Fp::from_bigint(&m, v)).collect())
                    .collect::<Vec<Vec<_>>>(),
            )
        }
    })
}
