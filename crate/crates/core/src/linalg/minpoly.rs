use num_complex::Complex64;

use super::Matrix;
use crate::error::Result;
use crate::scalar::{derivative_c, polish, Field, FactoredPoly, Poly, DEFAULT_TOL};

/// Monic minimal polynomial (exact Krylov path, or numeric on C).
pub fn minpoly<F: Field>(a: &Matrix<F>) -> Poly<F> {
    minpoly_with_tol(a, DEFAULT_TOL)
}

pub fn minpoly_with_tol<F: Field>(a: &Matrix<F>, tol: f64) -> Poly<F> {
    F::minimal_polynomial(a, tol)
}

/// Characteristic polynomial `det(X I - A)` by Berkowitz's division-free
/// algorithm; on C it falls back to Schur eigenvalues when Berkowitz is
/// visibly inaccurate.
pub fn char_poly<F: Field>(a: &Matrix<F>) -> Poly<F> {
    F::characteristic_polynomial(a)
}

/// Berkowitz is kept when it agrees with the polynomial expanded from Schur
/// eigenvalues; a disagreement beyond `1e-10` (relative to the coefficient
/// scale) signals cancellation, and the backward-stable Schur version wins.
pub(crate) fn schur_char_poly(a: &Matrix<Complex64>) -> Poly<Complex64> {
    let n = a.order();
    let t = a.to_nalgebra().schur().unpack().1;
    let schur = (0..n).fold(Poly::one(()), |acc, i| &acc * &Poly::linear(&t[(i, i)]));
    let direct = berkowitz(a);
    let scale: f64 = schur.coeffs().iter().map(|c| c.norm()).sum();
    let gap = (0..=n)
        .map(|i| (schur.coeff(i) - direct.coeff(i)).norm())
        .fold(0.0, f64::max);
    if gap <= 1e-10 * scale {
        direct
    } else {
        schur
    }
}

pub(crate) fn berkowitz<F: Field>(a: &Matrix<F>) -> Poly<F> {
    let n = a.order();
    let ctx = a.ctx().clone();
    // descending coefficients of the trailing principal submatrix
    let mut p = vec![F::one(&ctx)];
    for k in (0..n).rev() {
        let m = n - k - 1;
        let r: Vec<F> = (k + 1..n).map(|j| a.get(k, j).clone()).collect();
        let mut v: Vec<F> = (k + 1..n).map(|i| a.get(i, k).clone()).collect();
        let mut col = vec![F::one(&ctx), -a.get(k, k).clone()];
        for _ in 0..m {
            let dot = r
                .iter()
                .zip(&v)
                .fold(F::zero(&ctx), |acc, (x, y)| acc + x.clone() * y.clone());
            col.push(-dot);
            // v <- A1 v
            v = (0..m)
                .map(|i| {
                    (0..m).fold(F::zero(&ctx), |acc, j| {
                        acc + a.get(k + 1 + i, k + 1 + j).clone() * v[j].clone()
                    })
                })
                .collect();
        }
        let next = (0..m + 2)
            .map(|i| {
                (0..=i.min(m)).fold(F::zero(&ctx), |acc, j| {
                    acc + col[i - j].clone() * p[j].clone()
                })
            })
            .collect();
        p = next;
    }
    p.reverse();
    Poly::new(ctx, p)
}

/// Minimal polynomial over an exact field: LCM over the standard basis of
/// the local Krylov annihilators.
pub fn krylov_minpoly<F: Field>(a: &Matrix<F>) -> Poly<F> {
    let n = a.order();
    let ctx = a.ctx().clone();
    let mut acc = Poly::one(ctx.clone());
    for i in 0..n {
        let mut e = vec![F::zero(&ctx); n];
        e[i] = F::one(&ctx);
        if acc.degree() == Some(n) {
            break;
        }
        if is_annihilated(&acc, a, &e) {
            continue;
        }
        let local = local_annihilator(a, e);
        acc = acc.lcm(&local).expect("exact field");
    }
    acc
}

fn is_annihilated<F: Field>(p: &Poly<F>, a: &Matrix<F>, v: &[F]) -> bool {
    // Horner on the vector: p(A) v
    let ctx = a.ctx();
    let mut acc = vec![F::zero(ctx); v.len()];
    for c in p.coeffs().iter().rev() {
        acc = a.mul_vec(&acc);
        for (x, y) in acc.iter_mut().zip(v) {
            *x = x.clone() + c.clone() * y.clone();
        }
    }
    acc.iter().all(|x| x.is_zero())
}

/// First linear dependence among `v, Av, A^2 v, ...` as a monic polynomial.
fn local_annihilator<F: Field>(a: &Matrix<F>, v: Vec<F>) -> Poly<F> {
    let ctx = a.ctx().clone();
    // reduced rows: (pivot column, reduced vector, combination of powers)
    let mut rows: Vec<(usize, Vec<F>, Vec<F>)> = Vec::new();
    let mut cur = v;
    for d in 0.. {
        let mut w = cur.clone();
        let mut combo = vec![F::zero(&ctx); d + 1];
        combo[d] = F::one(&ctx);
        for (piv, rv, rc) in &rows {
            if w[*piv].is_zero() {
                continue;
            }
            let f = w[*piv].div(&rv[*piv]);
            for (x, y) in w.iter_mut().zip(rv) {
                *x = x.clone() - f.clone() * y.clone();
            }
            for (x, y) in combo.iter_mut().zip(rc) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => return Poly::new(ctx, combo),
            Some(piv) => rows.push((piv, w, combo)),
        }
        cur = a.mul_vec(&cur);
    }
    unreachable!()
}

/// Numeric minimal polynomial on C. Schur eigenvalues are clustered
/// agglomeratively; a merge is kept only when `(A - mu I)^m` has nullity `m`
/// at the cluster mean `mu`, since a defective eigenvalue of order `m` is
/// smeared over a ring of radius about `eps^(1/m)`. Centers are then polished
/// by Newton on the characteristic polynomial, and indices come from rank tests.
pub(crate) fn numeric_split_minpoly(
    a: &Matrix<Complex64>,
    tol: f64,
) -> Result<FactoredPoly<Complex64>> {
    let n = a.order();
    let schur = a.to_nalgebra().schur().unpack().1;
    let eigs: Vec<Complex64> = (0..n).map(|i| schur[(i, i)]).collect();
    let clusters = cluster_eigenvalues(a, eigs, tol);

    let chi = char_poly(a);
    let mut derivs = vec![chi.coeffs().to_vec()];
    while derivs.last().unwrap().len() > 1 {
        let d = derivative_c(derivs.last().unwrap());
        derivs.push(d);
    }
    let centers: Vec<(Complex64, usize, f64)> = clusters
        .iter()
        .map(|c| (mean(c), c.len(), radius(c)))
        .collect();
    let mut roots: Vec<(Complex64, usize)> = centers
        .iter()
        .enumerate()
        .map(|(i, &(mu, m, r))| {
            let gap = centers
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, c)| (c.0 - mu).norm())
                .fold(f64::INFINITY, f64::min);
            let polished = polish(&derivs, mu, m);
            let limit = (2.0 * r).max(tol * mu.norm().max(1.0)).min(gap / 4.0);
            let mut lambda = if (polished - mu).norm() <= limit { polished } else { mu };
            if lambda.norm() <= tol {
                lambda = Complex64::new(0.0, 0.0);
            }
            (lambda, eigen_index(a, lambda, m, tol))
        })
        .collect();
    roots.sort_by(|x, y| x.0.canonical_cmp(&y.0));
    Ok(FactoredPoly {
        roots,
        remainder: Poly::one(()),
    })
}

fn mean(c: &[Complex64]) -> Complex64 {
    c.iter().sum::<Complex64>() / c.len() as f64
}

fn radius(c: &[Complex64]) -> f64 {
    let mu = mean(c);
    c.iter().map(|z| (z - mu).norm()).fold(0.0, f64::max)
}

fn cluster_eigenvalues(a: &Matrix<Complex64>, eigs: Vec<Complex64>, tol: f64) -> Vec<Vec<Complex64>> {
    let mut clusters: Vec<Vec<Complex64>> = eigs.into_iter().map(|z| vec![z]).collect();
    loop {
        let mut pairs = Vec::new();
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                pairs.push(((mean(&clusters[i]) - mean(&clusters[j])).norm(), i, j));
            }
        }
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut chosen = None;
        for (d, i, j) in pairs {
            // the pair alone, then the pair with every cluster in its ball
            let center = (mean(&clusters[i]) + mean(&clusters[j])) / 2.0;
            let ball: Vec<usize> = (0..clusters.len())
                .filter(|&k| (mean(&clusters[k]) - center).norm() <= d)
                .collect();
            for members in [vec![i, j], ball] {
                if acceptable_cluster(a, &clusters, &members, tol) {
                    chosen = Some(members);
                    break;
                }
            }
            if chosen.is_some() {
                break;
            }
        }
        match chosen {
            Some(mut members) => {
                members.sort_unstable();
                let mut merged = Vec::new();
                for &k in members.iter().rev() {
                    merged.extend(clusters.swap_remove(k));
                }
                clusters.push(merged);
            }
            None => return clusters,
        }
    }
}

/// A merged cluster must be no wider than the `tol^(1/m)` smear of an
/// `m`-fold root, well separated from the rest of the spectrum, and pass
/// the rank test at its mean.
fn acceptable_cluster(a: &Matrix<Complex64>, clusters: &[Vec<Complex64>], members: &[usize], tol: f64) -> bool {
    let pts: Vec<Complex64> = members.iter().flat_map(|&k| clusters[k].clone()).collect();
    let m = pts.len();
    let mu = mean(&pts);
    let rho = radius(&pts);
    if rho > tol.powf(1.0 / m as f64) * mu.norm().max(1.0) {
        return false;
    }
    let gap = (0..clusters.len())
        .filter(|k| !members.contains(k))
        .flat_map(|k| clusters[k].iter())
        .map(|z| (z - mu).norm())
        .fold(f64::INFINITY, f64::min);
    if rho > 0.1 * gap {
        return false;
    }
    let b = a.shift(&mu);
    let s = b.max_norm().max(1.0);
    nullity(&b.pow(m as u64), tol * s.powi(m as i32)) >= m
}

/// Smallest `k` with `dim ker (A - lambda I)^k` equal to the algebraic multiplicity.
fn eigen_index(a: &Matrix<Complex64>, lambda: Complex64, mult: usize, tol: f64) -> usize {
    let b = a.shift(&lambda);
    let scale = b.max_norm().max(1.0);
    let mut power = b.clone();
    for k in 1..=mult {
        if nullity(&power, tol * scale.powi(k as i32)) >= mult {
            return k;
        }
        power = &power * &b;
    }
    mult
}

fn nullity(m: &Matrix<Complex64>, threshold: f64) -> usize {
    let sv = m.to_nalgebra().svd(false, false).singular_values;
    sv.iter().filter(|&&s| s <= threshold).count()
}
