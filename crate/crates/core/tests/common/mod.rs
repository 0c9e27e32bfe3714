#![allow(dead_code)]

use num_complex::Complex64;
use num_rational::BigRational;
use pcform::{c64, rat, Matrix};
use rand::Rng;

pub type Q = BigRational;
pub type C = Complex64;

/// Reference exponential: 40-term Taylor series with scaling and squaring.
pub fn expm_series(m: &Matrix<C>) -> Matrix<C> {
    let norm = m.max_norm() * m.order() as f64;
    let mut s = 0;
    while norm / 2f64.powi(s) > 0.5 {
        s += 1;
    }
    let x = m.scale(&c64(1.0 / 2f64.powi(s), 0.0));
    let mut term = Matrix::identity((), m.order());
    let mut acc = term.clone();
    for n in 1..=40 {
        term = (&term * &x).scale(&c64(1.0 / n as f64, 0.0));
        acc = &acc + &term;
    }
    for _ in 0..s {
        acc = &acc * &acc;
    }
    acc
}

pub fn real_matrix(rows: &[&[f64]]) -> Matrix<C> {
    Matrix::from_rows(
        (),
        rows.iter().map(|r| r.iter().map(|&x| c64(x, 0.0)).collect()).collect(),
    )
    .unwrap()
}

pub fn q_matrix(rows: &[&[i64]]) -> Matrix<Q> {
    Matrix::from_i64_rows((), rows)
}

pub fn semicirculant_2423() -> Matrix<Q> {
    Matrix::semicirculant(&[rat(2, 1), rat(4, 1), rat(2, 1), rat(3, 1)])
}

pub fn four_by_four() -> Matrix<Q> {
    q_matrix(&[&[1, 1, 1, 0], &[1, 1, 1, -1], &[0, 0, -1, 1], &[0, 0, 1, -1]])
}

/// The 3x3 matrix with eigenvalues `2 e^{±i pi/6}` and `x`.
pub fn conjugate_pair_matrix(x: f64) -> Matrix<C> {
    let s = 3f64.sqrt();
    real_matrix(&[
        &[2.0 * s - x - 10.0, 2.0 * s - 2.0 * x - 23.0, s - x - 5.0],
        &[4.0, s + 9.0, 2.0],
        &[-2.0 * s + 2.0 * x + 2.0, -4.0 * s + 4.0 * x + 5.0, -s + 2.0 * x + 1.0],
    ])
}

pub fn negative_eigen_block() -> Matrix<Q> {
    q_matrix(&[&[1, 3], &[-3, -5]])
}

pub fn jordan(lambda: i64, n: usize) -> Matrix<Q> {
    Matrix::jordan_block(&rat(lambda, 1), n)
}

pub fn jordan_type(blocks: &[(i64, usize)]) -> Matrix<Q> {
    let mats: Vec<Matrix<Q>> = blocks.iter().map(|&(l, s)| jordan(l, s)).collect();
    Matrix::direct_sum(&mats)
}

fn inverse_unit_lower(l: &Matrix<Q>) -> Matrix<Q> {
    let n = l.order();
    let mut inv = Matrix::<Q>::identity((), n);
    for j in 0..n {
        for i in j + 1..n {
            let mut s = rat(0, 1);
            for k in j..i {
                s += l[(i, k)].clone() * inv[(k, j)].clone();
            }
            inv.set(i, j, -s);
        }
    }
    inv
}

/// `S D S^{-1}` with `S = L U` unimodular (unit triangular factors).
pub fn conjugate_unimodular<R: Rng>(d: &Matrix<Q>, rng: &mut R) -> Matrix<Q> {
    let (s, s_inv) = unimodular(d.order(), rng);
    &(&s * d) * &s_inv
}

/// Random integer `S` with integer inverse, returned as `(S, S^{-1})`.
pub fn unimodular<R: Rng>(n: usize, rng: &mut R) -> (Matrix<Q>, Matrix<Q>) {
    let mut l = Matrix::<Q>::identity((), n);
    let mut u = Matrix::<Q>::identity((), n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, rat(rng.random_range(-2..=2), 1));
            u.set(j, i, rat(rng.random_range(-2..=2), 1));
        }
    }
    let s = &l * &u;
    let u_inv = inverse_unit_lower(&u.transpose()).transpose();
    let s_inv = &u_inv * &inverse_unit_lower(&l);
    (s, s_inv)
}

/// Random Jordan type with integer eigenvalues in `lo..=hi`, order 2..=6.
pub fn random_jordan_type<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Vec<(i64, usize)> {
    loop {
        let count = rng.random_range(1..=3);
        let blocks: Vec<(i64, usize)> = (0..count)
            .map(|_| (rng.random_range(lo..=hi), rng.random_range(1..=3)))
            .collect();
        let order: usize = blocks.iter().map(|b| b.1).sum();
        if (2..=6).contains(&order) {
            return blocks;
        }
    }
}

pub fn rel_diff(a: &Matrix<C>, b: &Matrix<C>) -> f64 {
    a.max_diff(b) / b.max_norm().max(1.0)
}
