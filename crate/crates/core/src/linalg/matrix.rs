use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{Field, Poly};

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F: Field> {
    ctx: F::Ctx,
    order: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(ctx: F::Ctx, n: usize) -> Self {
        let data = vec![F::zero(&ctx); n * n];
        Self { ctx, order: n, data }
    }

    pub fn identity(ctx: F::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n);
        let one = F::one(&m.ctx);
        for i in 0..n {
            m.data[i * n + i] = one.clone();
        }
        m
    }

    pub fn from_fn(ctx: F::Ctx, n: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { ctx, order: n, data }
    }

    /// Build from rows; the rows must form a nonempty square array.
    pub fn from_rows(ctx: F::Ctx, rows: Vec<Vec<F>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("matrix must have at least one row".into()));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::Shape(format!(
                "row {bad} has {} entries, expected {n}",
                rows[bad].len()
            )));
        }
        Ok(Self {
            ctx,
            order: n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix; panics unless `rows` is square.
    pub fn from_i64_rows(ctx: F::Ctx, rows: &[&[i64]]) -> Self {
        let r = rows
            .iter()
            .map(|row| row.iter().map(|&v| F::from_i64(&ctx, v)).collect())
            .collect();
        Self::from_rows(ctx, r).expect("square integer matrix")
    }

    /// `J_n(lambda)`: `lambda` on the diagonal, ones on the superdiagonal.
    pub fn jordan_block(lambda: &F, n: usize) -> Self {
        let ctx = lambda.ctx();
        let one = F::one(&ctx);
        Self::from_fn(ctx.clone(), n, |i, j| {
            if i == j {
                lambda.clone()
            } else if j == i + 1 {
                one.clone()
            } else {
                F::zero(&ctx)
            }
        })
    }

    /// Upper-triangular Toeplitz matrix with the given first row.
    pub fn semicirculant(first_row: &[F]) -> Self {
        let ctx = first_row[0].ctx();
        Self::from_fn(ctx.clone(), first_row.len(), |i, j| {
            if j >= i {
                first_row[j - i].clone()
            } else {
                F::zero(&ctx)
            }
        })
    }

    /// Block-diagonal matrix.
    pub fn direct_sum(blocks: &[Matrix<F>]) -> Self {
        let ctx = blocks[0].ctx.clone();
        let n = blocks.iter().map(|b| b.order).sum();
        let mut m = Self::zeros(ctx, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.order {
                for j in 0..b.order {
                    m.data[(off + i) * n + off + j] = b.get(i, j).clone();
                }
            }
            off += b.order;
        }
        m
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.order + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        (0..self.order).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add_diagonal(&mut self, c: &F) {
        for i in 0..self.order {
            let k = i * self.order + i;
            self.data[k] = self.data[k].clone() + c.clone();
        }
    }

    /// `self - c I`.
    pub fn shift(&self, c: &F) -> Self {
        let mut m = self.clone();
        m.add_diagonal(&-c.clone());
        m
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        Self {
            ctx: self.ctx.clone(),
            order: self.order,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn map_field<G: Field>(&self, ctx: G::Ctx, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            ctx,
            order: self.order,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Complex image of the matrix; `None` over prime fields.
    pub fn to_complex(&self) -> Option<Matrix<Complex64>> {
        let data = self
            .data
            .iter()
            .map(|x| x.to_complex())
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix {
            ctx: (),
            order: self.order,
            data,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ctx.clone(), self.order, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> F {
        (0..self.order).fold(F::zero(&self.ctx), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::identity(self.ctx.clone(), self.order);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        (0..self.order)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(&self.ctx), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        (0..self.order)
            .map(|j| {
                (0..self.order).fold(F::zero(&self.ctx), |acc, i| {
                    acc + v[i].clone() * self.get(i, j).clone()
                })
            })
            .collect()
    }

    fn check_order(&self, rhs: &Self) {
        assert_eq!(self.order, rhs.order, "matrix order mismatch");
    }
}

impl Matrix<Complex64> {
    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.check_order(other);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest imaginary part among the entries.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_row_slice(self.order, self.order, &self.data)
    }

    pub fn real_part(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.order, self.order, |i, j| self.get(i, j).re)
    }
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        self.get(i, j)
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.check_order(rhs);
        Matrix {
            ctx: self.ctx.clone(),
            order: self.order,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.check_order(rhs);
        Matrix {
            ctx: self.ctx.clone(),
            order: self.order,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.check_order(rhs);
        let n = self.order;
        let mut data = vec![F::zero(&self.ctx); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[k * n + j];
                    if !b.is_zero() {
                        data[i * n + j] = data[i * n + j].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Matrix {
            ctx: self.ctx.clone(),
            order: n,
            data,
        }
    }
}

impl<F: Field> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        self.map(|x| -x.clone())
    }
}

/// Kronecker product; block `(i, j)` of the result is `a[i][j] * b`.
pub fn kron<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    if a.ctx != b.ctx {
        return Err(Error::MixedFields);
    }
    let (p, q) = (a.order, b.order);
    Ok(Matrix::from_fn(a.ctx.clone(), p * q, |r, c| {
        a.get(r / q, c / q).clone() * b.get(r % q, c % q).clone()
    }))
}

/// Companion matrix: ones on the subdiagonal, last column `-c_0 .. -c_{n-1}`.
pub fn companion<F: Field>(p: &Poly<F>) -> Result<Matrix<F>> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if !p.is_monic() {
        return Err(Error::NonMonic);
    }
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    let ctx = p.ctx().clone();
    let one = F::one(&ctx);
    Ok(Matrix::from_fn(ctx.clone(), n, |i, j| {
        if j == n - 1 {
            -p.coeff(i)
        } else if i == j + 1 {
            one.clone()
        } else {
            F::zero(&ctx)
        }
    }))
}

/// Rank of a list of row vectors by exact elimination.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() * inv.clone();
            for k in c..cols {
                let v = m[r][k].clone() * f.clone();
                m[i][k] = m[i][k].clone() - v;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Solve `rows * x = rhs` exactly; returns one solution (free variables zero)
/// or `None` when the system is inconsistent.
pub fn solve_linear<F: Field>(ctx: &F::Ctx, rows: &[Vec<F>], rhs: &[F], unknowns: usize) -> Option<Vec<F>> {
    let mut m: Vec<Vec<F>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for k in c..=unknowns {
            m[r][k] = m[r][k].clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in c..=unknowns {
                let v = m[r][k].clone() * f.clone();
                m[i][k] = m[i][k].clone() - v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut x = vec![F::zero(ctx); unknowns];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][unknowns].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Fp, PrimeModulus};
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn kron_identities() {
        let i2 = Matrix::<Q>::identity((), 2);
        let i3 = Matrix::<Q>::identity((), 3);
        assert_eq!(kron(&i2, &i3).unwrap(), Matrix::identity((), 6));
    }

    #[test]
    fn kron_nilpotent_square_vanishes() {
        let j = Matrix::<Q>::jordan_block(&rat(0, 1), 2);
        let k = kron(&j, &j).unwrap();
        assert!(!k.is_zero());
        assert!(k.pow(2).is_zero());
    }

    #[test]
    fn kron_scalars() {
        let a = companion(&Poly::<Q>::from_i64s((), &[-2, 1])).unwrap();
        let b = companion(&Poly::<Q>::from_i64s((), &[-3, 1])).unwrap();
        assert_eq!(kron(&a, &b).unwrap(), Matrix::from_i64_rows((), &[&[6]]));
    }

    #[test]
    fn kron_rejects_mixed_moduli() {
        let a = Matrix::<Fp>::identity(PrimeModulus::new(3).unwrap(), 1);
        let b = Matrix::<Fp>::identity(PrimeModulus::new(5).unwrap(), 1);
        assert_eq!(kron(&a, &b), Err(Error::MixedFields));
    }

    #[test]
    fn companion_layout() {
        // X^2 - X - 1
        let c = companion(&Poly::<Q>::from_i64s((), &[-1, -1, 1])).unwrap();
        assert_eq!(c, Matrix::from_i64_rows((), &[&[0, 1], &[1, 1]]));
        assert_eq!(
            companion(&Poly::<Q>::from_i64s((), &[-1, 2])),
            Err(Error::NonMonic)
        );
        assert_eq!(companion(&Poly::<Q>::from_i64s((), &[1])), Err(Error::DegreeZero));
    }

    #[test]
    fn rank_and_solve() {
        let rows: Vec<Vec<Q>> = vec![
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(2, 1), rat(4, 1)],
            vec![rat(0, 1), rat(1, 1)],
        ];
        assert_eq!(rank(&rows), 2);
        let x = solve_linear(&(), &rows, &[rat(3, 1), rat(6, 1), rat(1, 1)], 2).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(1, 1)]);
        assert!(solve_linear(&(), &rows, &[rat(3, 1), rat(7, 1), rat(1, 1)], 2).is_none());
    }

    #[test]
    fn shapes_are_checked() {
        assert!(Matrix::<Q>::from_rows((), vec![]).is_err());
        assert!(Matrix::<Q>::from_rows((), vec![vec![rat(1, 1)], vec![]]).is_err());
    }

    #[test]
    fn semicirculant_and_direct_sum() {
        let s = Matrix::<Q>::semicirculant(&[rat(2, 1), rat(4, 1), rat(2, 1)]);
        assert_eq!(
            s,
            Matrix::from_i64_rows((), &[&[2, 4, 2], &[0, 2, 4], &[0, 0, 2]])
        );
        let d = Matrix::direct_sum(&[Matrix::<Q>::identity((), 1), s]);
        assert_eq!(d.order(), 4);
        assert_eq!(d[(1, 2)], rat(4, 1));
        assert_eq!(d[(0, 1)], rat(0, 1));
    }
}
