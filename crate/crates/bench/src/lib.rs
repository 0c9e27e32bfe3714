//! Fixture matrices shared by the benchmarks.

use num_complex::Complex64;
use num_rational::BigRational;
use pcform::{rat, Field, Matrix};

/// `S A S^{-1}` for a product `S` of elementary shears, so the Jordan
/// structure of `a` is kept but the entries are dense.
pub fn scramble<F: Field>(a: &Matrix<F>, shears: usize) -> Matrix<F> {
    let n = a.order();
    let ctx = a.ctx().clone();
    let mut m = a.clone();
    if n < 2 {
        return m;
    }
    for s in 0..shears {
        let (i, j) = (s % n, (3 * s + 1) % n);
        if i == j {
            continue;
        }
        let c = if s % 2 == 0 { F::one(&ctx) } else { -F::one(&ctx) };
        let e = Matrix::from_fn(ctx.clone(), n, |r, k| {
            if r == k {
                F::one(&ctx)
            } else if r == i && k == j {
                c.clone()
            } else {
                F::zero(&ctx)
            }
        });
        let e_inv = Matrix::from_fn(ctx.clone(), n, |r, k| {
            if r == k {
                F::one(&ctx)
            } else if r == i && k == j {
                -c.clone()
            } else {
                F::zero(&ctx)
            }
        });
        m = &(&e * &m) * &e_inv;
    }
    m
}

/// Direct sum of rational Jordan blocks `(eigenvalue, size)`.
pub fn jordan_type(blocks: &[(i64, usize)]) -> Matrix<BigRational> {
    let mats: Vec<_> = blocks
        .iter()
        .map(|&(l, s)| Matrix::jordan_block(&rat(l, 1), s))
        .collect();
    Matrix::direct_sum(&mats)
}

/// A dense rational matrix of order `n` with repeated eigenvalues and
/// nontrivial blocks.
pub fn dense_rational(n: usize) -> Matrix<BigRational> {
    let mut blocks = Vec::new();
    let mut left = n;
    let mut lambda = 2;
    while left > 0 {
        let s = left.min(3);
        blocks.push((lambda, s));
        left -= s;
        lambda = if lambda == 2 { -1 } else { 2 };
    }
    scramble(&jordan_type(&blocks), 3 * n)
}

/// The same matrix over C.
pub fn dense_complex(n: usize) -> Matrix<Complex64> {
    dense_rational(n).to_complex().expect("rational entries fit in f64")
}
