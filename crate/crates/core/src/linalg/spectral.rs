use super::Matrix;
use crate::error::Result;
use crate::scalar::{Field, Poly, DEFAULT_TOL};

/// One nonzero eigenvalue with its index and spectral projection.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenComponent<F: Field> {
    pub value: F,
    pub index: usize,
    pub projection: Matrix<F>,
}

/// Eigenvalues, indices and spectral projections of a matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData<F: Field> {
    /// Index of the eigenvalue 0 (0 when the matrix is invertible).
    pub nilpotent_index: usize,
    /// Projection onto the generalized kernel; present iff `nilpotent_index > 0`.
    pub zero_projection: Option<Matrix<F>>,
    /// Nonzero eigenvalues in canonical order.
    pub eigen: Vec<EigenComponent<F>>,
}

impl<F: Field> SpectralData<F> {
    /// All projections, the zero eigenvalue's first.
    pub fn projections(&self) -> impl Iterator<Item = &Matrix<F>> {
        self.zero_projection
            .iter()
            .chain(self.eigen.iter().map(|e| &e.projection))
    }
}

pub fn spectral_projections<F: Field>(a: &Matrix<F>) -> Result<SpectralData<F>> {
    spectral_projections_with_tol(a, DEFAULT_TOL)
}

/// Projections `pi_j = (q_j M_j)(A)` from the partial-fraction identity
/// `sum_j q_j M_j = 1`, where `M_j` is the minimal polynomial with the
/// `(X - lambda_j)^{t_j}` factor removed.
pub fn spectral_projections_with_tol<F: Field>(a: &Matrix<F>, tol: f64) -> Result<SpectralData<F>> {
    let factored = F::split_minimal_polynomial(a, tol)?;
    let ctx = a.ctx().clone();
    let roots = &factored.roots;
    let mut out = SpectralData {
        nilpotent_index: 0,
        zero_projection: None,
        eigen: Vec::new(),
    };
    for (j, (lambda, t)) in roots.iter().enumerate() {
        let cofactor = roots
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .fold(Poly::one(ctx.clone()), |acc, (_, (mu, s))| {
                &acc * &Poly::linear(mu).pow(*s)
            });
        let q = local_inverse(&cofactor, lambda, *t);
        let projection = (&q * &cofactor).eval_matrix(a);
        if lambda.is_zero() {
            out.nilpotent_index = *t;
            out.zero_projection = Some(projection);
        } else {
            out.eigen.push(EigenComponent {
                value: lambda.clone(),
                index: *t,
                projection,
            });
        }
    }
    Ok(out)
}

/// `q` of degree `< t` with `q * m == 1 mod (X - lambda)^t`.
fn local_inverse<F: Field>(m: &Poly<F>, lambda: &F, t: usize) -> Poly<F> {
    let ctx = m.ctx().clone();
    let shifted = m.taylor_shift(lambda);
    let c: Vec<F> = (0..t).map(|i| shifted.coeff(i)).collect();
    let inv0 = c[0].inv();
    let mut r: Vec<F> = Vec::with_capacity(t);
    r.push(inv0.clone());
    for k in 1..t {
        let s = (1..=k).fold(F::zero(&ctx), |acc, i| acc + c[i].clone() * r[k - i].clone());
        r.push(-(s * inv0.clone()));
    }
    Poly::new(ctx, r).taylor_shift(&-lambda.clone())
}
