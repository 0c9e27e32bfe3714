use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Field, Fp, Poly, DEFAULT_TOL};
use crate::error::{Error, Result};

/// A polynomial split as `prod (X - root)^mult * remainder`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredPoly<F: Field> {
    /// Distinct roots with multiplicities, in canonical order.
    pub roots: Vec<(F, usize)>,
    /// Monic factor with no roots in the field (`1` when the input splits).
    pub remainder: Poly<F>,
}

impl<F: Field> FactoredPoly<F> {
    pub fn is_split(&self) -> bool {
        self.remainder.degree() == Some(0)
    }

    pub fn multiplicity_of(&self, x: &F, tol: f64) -> usize {
        self.roots
            .iter()
            .find(|(r, _)| r.same_point(x, tol))
            .map_or(0, |(_, m)| *m)
    }

    /// Multiply the factorization back out.
    pub fn expand(&self) -> Poly<F> {
        self.roots.iter().fold(self.remainder.clone(), |acc, (r, m)| {
            &acc * &Poly::linear(r).pow(*m)
        })
    }
}

/// Factor a nonzero monic polynomial with the default numeric tolerance.
pub fn poly_factor<F: Field>(p: &Poly<F>) -> Result<FactoredPoly<F>> {
    poly_factor_with_tol(p, DEFAULT_TOL)
}

pub fn poly_factor_with_tol<F: Field>(p: &Poly<F>, tol: f64) -> Result<FactoredPoly<F>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(Error::NonMonic);
    }
    F::factor_monic(p, tol)
}

pub(crate) fn split_exact<F: Field>(p: &Poly<F>, tol: f64) -> Result<FactoredPoly<F>> {
    let f = F::factor_monic(p, tol)?;
    if f.is_split() {
        Ok(f)
    } else {
        Err(Error::NonSplitField)
    }
}

fn sort_roots<F: Field>(roots: &mut [(F, usize)]) {
    roots.sort_by(|a, b| a.0.canonical_cmp(&b.0));
}

/// Yun's squarefree decomposition: `p = prod_i a_i^i` with each `a_i` squarefree.
fn squarefree_decomposition<F: Field>(p: &Poly<F>) -> Result<Vec<Poly<F>>> {
    let one = Poly::one(p.ctx().clone());
    let d = p.derivative();
    if d.is_zero() {
        return Ok(vec![p.clone()]);
    }
    let g = super::poly_gcd(p, &d)?;
    let mut w = p.exact_div(&g).expect("gcd divides");
    let mut y = d.exact_div(&g).expect("gcd divides");
    let mut z = &y - &w.derivative();
    let mut out = Vec::new();
    while w != one {
        let a = super::poly_gcd(&w, &z)?;
        w = w.exact_div(&a).expect("gcd divides");
        y = z.exact_div(&a).expect("gcd divides");
        z = &y - &w.derivative();
        out.push(a);
    }
    Ok(out)
}

pub(crate) fn factor_rational(p: &Poly<BigRational>) -> Result<FactoredPoly<BigRational>> {
    let mut roots = Vec::new();
    let mut remainder = Poly::one(());
    for (i, part) in squarefree_decomposition(p)?.into_iter().enumerate() {
        let mult = i + 1;
        let mut rest = part;
        for r in rational_roots(&rest) {
            rest = rest.exact_div(&Poly::linear(&r)).expect("verified root");
            roots.push((r, mult));
        }
        remainder = &remainder * &rest.pow(mult);
    }
    sort_roots(&mut roots);
    Ok(FactoredPoly { roots, remainder })
}

/// Rational roots of a squarefree rational polynomial.
fn rational_roots(f: &Poly<BigRational>) -> Vec<BigRational> {
    let n = match f.degree() {
        Some(n) if n > 0 => n,
        _ => return Vec::new(),
    };
    let lcm = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in &mut ints {
        *c = &*c / &content;
    }

    let mut found = Vec::new();
    let mut low = 0;
    if ints[0].is_zero() {
        found.push(<BigRational as Zero>::zero());
        low = 1;
    }
    let is_root = |x: &BigRational| Field::is_zero(&f.eval(x));
    let a0 = ints[low].abs();
    let an = ints[n].abs();
    match (small_divisors(&a0), small_divisors(&an)) {
        (Some(num_divs), Some(den_divs)) => {
            'outer: for d in &num_divs {
                for e in &den_divs {
                    for sign in [1, -1] {
                        let cand = BigRational::new(BigInt::from(sign) * d, e.clone());
                        if !found.contains(&cand) && is_root(&cand) {
                            found.push(cand);
                            if found.len() == n {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        _ => {
            // Coefficients too large for divisor enumeration: use numeric root
            // approximations as candidates and confirm each one exactly.
            let cf: Vec<Complex64> = f
                .coeffs()
                .iter()
                .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
                .collect();
            for z in durand_kerner(&cf) {
                if z.im.abs() > 1e-6 * z.norm().max(1.0) {
                    continue;
                }
                for cand in convergents(z.re, 1_000_000_000) {
                    if !found.contains(&cand) && is_root(&cand) {
                        found.push(cand);
                        break;
                    }
                }
            }
        }
    }
    found
}

/// Positive divisors of `n` when `n` is small enough for trial division.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let v = n.to_u64().filter(|&v| v > 0 && v <= 1_000_000_000_000)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            small.push(BigInt::from(d));
            if d * d != v {
                large.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Continued-fraction convergents of `x` with bounded denominators.
fn convergents(x: f64, max_den: i64) -> Vec<BigRational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::from(0), BigInt::from(1));
    let (mut k0, mut k1) = (BigInt::from(1), BigInt::from(0));
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        out.push(BigRational::new(h2.clone(), k2.clone()));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

const MAX_SCAN_PRIME: u64 = 1_000_000;

pub(crate) fn factor_prime_field(p: &Poly<Fp>) -> Result<FactoredPoly<Fp>> {
    let m = *p.ctx();
    if m.get() > MAX_SCAN_PRIME {
        return Err(Error::PrimeTooLarge(m.get()));
    }
    let mut rest = p.clone();
    let mut roots = Vec::new();
    for v in 0..m.get() {
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        let x = Fp::new(v as i64, m);
        let lin = Poly::linear(&x);
        let mut mult = 0;
        while rest.degree().unwrap_or(0) > 0 && rest.eval(&x).is_zero() {
            rest = rest.exact_div(&lin).expect("root divides");
            mult += 1;
        }
        if mult > 0 {
            roots.push((x, mult));
        }
    }
    Ok(FactoredPoly {
        roots,
        remainder: rest,
    })
}

const DK_MAX_ITER: usize = 500;
const DK_STEP_TOL: f64 = 1e-12;
const DK_SEED: u64 = 0x5eed_d00d;

/// Durand–Kerner simultaneous iteration for all roots of a polynomial
/// (coefficients ascending; normalized to monic internally).
pub fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let c: Vec<Complex64> = coeffs.iter().map(|x| x / lead).collect();
    let radius = 1.0 + c[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(DK_SEED);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * PI * (k as f64) / (n as f64) + 0.4 + 0.2 * rng.random::<f64>();
            let r = radius * (0.9 + 0.1 * rng.random::<f64>());
            Complex64::from_polar(r, angle)
        })
        .collect();
    let eval = |x: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * x + a);
    for _ in 0..DK_MAX_ITER {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(f64::EPSILON, 0.0);
            }
            let step = eval(z[k]) / denom;
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step < DK_STEP_TOL {
            break;
        }
    }
    z
}

fn eval_c(c: &[Complex64], x: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * x + a)
}

pub(crate) fn derivative_c(c: &[Complex64]) -> Vec<Complex64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a * i as f64)
        .collect()
}

/// Radius within which an `m`-fold root at `x` is smeared by rounding of
/// the coefficients.
fn noise_radius(c: &[Complex64], derivs: &[Vec<Complex64>], x: Complex64, m: usize) -> f64 {
    let scale: f64 = c
        .iter()
        .enumerate()
        .map(|(i, a)| a.norm() * x.norm().powi(i as i32))
        .sum();
    let dm = match derivs.get(m) {
        Some(d) => eval_c(d, x).norm(),
        None => return f64::INFINITY,
    };
    if dm == 0.0 {
        return f64::INFINITY;
    }
    let fact: f64 = (1..=m).map(|k| k as f64).product();
    let eps = f64::EPSILON * c.len() as f64;
    10.0 * (fact * eps * scale / dm).powf(1.0 / m as f64)
}

fn mean(pts: &[Complex64]) -> Complex64 {
    pts.iter().sum::<Complex64>() / pts.len() as f64
}

/// Group approximate roots into clusters of a multiple root.
fn cluster(c: &[Complex64], derivs: &[Vec<Complex64>], roots: Vec<Complex64>, tol: f64) -> Vec<Vec<Complex64>> {
    let mut clusters: Vec<Vec<Complex64>> = roots.into_iter().map(|r| vec![r]).collect();
    loop {
        let mut pairs = Vec::new();
        for a in 0..clusters.len() {
            for b in a + 1..clusters.len() {
                let d = (mean(&clusters[a]) - mean(&clusters[b])).norm();
                pairs.push((d, a, b));
            }
        }
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut merged = None;
        for (_, a, b) in pairs {
            let members: Vec<Complex64> = clusters[a].iter().chain(&clusters[b]).copied().collect();
            let center = mean(&members);
            let radius = (tol * center.norm().max(1.0))
                .max(noise_radius(c, derivs, center, members.len()));
            if members.iter().all(|z| (z - center).norm() <= radius) {
                merged = Some((a, b));
                break;
            }
        }
        match merged {
            Some((a, b)) => {
                let moved = clusters.swap_remove(b);
                clusters[a].extend(moved);
            }
            None => return clusters,
        }
    }
}

/// Newton refinement of an `m`-fold root on the `(m-1)`-th derivative,
/// where it is a simple root.
pub(crate) fn polish(derivs: &[Vec<Complex64>], mut x: Complex64, m: usize) -> Complex64 {
    let (f, df) = (&derivs[m - 1], &derivs[m]);
    let mut resid = eval_c(f, x).norm();
    for _ in 0..20 {
        let d = eval_c(df, x);
        if d.norm() == 0.0 {
            break;
        }
        let next = x - eval_c(f, x) / d;
        let r = eval_c(f, next).norm();
        if !(r < resid) {
            break;
        }
        x = next;
        resid = r;
    }
    x
}

pub(crate) fn factor_complex(p: &Poly<Complex64>, tol: f64) -> Result<FactoredPoly<Complex64>> {
    let mut c: Vec<Complex64> = p.coeffs().to_vec();
    let mut zero_mult = 0;
    while c.len() > 1 && c[0] == Complex64::new(0.0, 0.0) {
        c.remove(0);
        zero_mult += 1;
    }
    let mut derivs = vec![c.clone()];
    while derivs.last().unwrap().len() > 1 {
        let d = derivative_c(derivs.last().unwrap());
        derivs.push(d);
    }
    let approx = durand_kerner(&c);
    let mut roots: Vec<(Complex64, usize)> = cluster(&c, &derivs, approx, tol)
        .into_iter()
        .map(|members| {
            let m = members.len();
            (polish(&derivs, mean(&members), m), m)
        })
        .collect();

    // merge anything within the clustering tolerance and snap tiny roots to 0
    if zero_mult > 0 {
        roots.push((Complex64::new(0.0, 0.0), zero_mult));
    }
    let mut merged: Vec<(Complex64, usize)> = Vec::new();
    for (mut r, m) in roots {
        if r.norm() <= tol {
            r = Complex64::new(0.0, 0.0);
        }
        match merged.iter_mut().find(|(s, _)| s.same_point(&r, tol)) {
            Some(entry) => {
                let total = entry.1 + m;
                entry.0 = (entry.0 * entry.1 as f64 + r * m as f64) / total as f64;
                entry.1 = total;
            }
            None => merged.push((r, m)),
        }
    }
    sort_roots(&mut merged);
    Ok(FactoredPoly {
        roots: merged,
        remainder: Poly::one(()),
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, PrimeModulus};

    fn q(c: &[i64]) -> Poly<BigRational> {
        Poly::from_i64s((), c)
    }

    #[test]
    fn rational_split_quadratic() {
        let f = poly_factor(&q(&[2, -3, 1])).unwrap();
        assert_eq!(f.roots, vec![(rat(1, 1), 1), (rat(2, 1), 1)]);
        assert_eq!(f.remainder, q(&[1]));
    }

    #[test]
    fn rational_irreducible_remainder() {
        let f = poly_factor(&q(&[1, 0, 1])).unwrap();
        assert!(f.roots.is_empty());
        assert_eq!(f.remainder, q(&[1, 0, 1]));
    }

    #[test]
    fn rational_partial_split() {
        // X^3 - 2X^2 - 2X + 1 = (X + 1)(X^2 - 3X + 1)
        let f = poly_factor(&q(&[1, -2, -2, 1])).unwrap();
        assert_eq!(f.roots, vec![(rat(-1, 1), 1)]);
        assert_eq!(f.remainder, q(&[1, -3, 1]));
    }

    #[test]
    fn rational_multiplicities_and_fractions() {
        // (X - 1/2)^3 X^2 (X + 3)
        let p = &(&Poly::linear(&rat(1, 2)).pow(3) * &q(&[0, 0, 1])) * &q(&[3, 1]);
        let f = poly_factor(&p).unwrap();
        assert_eq!(f.roots, vec![(rat(-3, 1), 1), (rat(0, 1), 2), (rat(1, 2), 3)]);
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(poly_factor(&q(&[])), Err(Error::ZeroPolynomial));
        assert_eq!(poly_factor(&q(&[1, 2])), Err(Error::NonMonic));
    }

    #[test]
    fn large_coefficients_use_numeric_candidates() {
        // (X - 1234567891)(X + 987654321/7)(X^2 + 1)
        let a = rat(1_234_567_891, 1);
        let b = rat(-987_654_321, 7);
        let p = &(&Poly::linear(&a) * &Poly::linear(&b)) * &q(&[1, 0, 1]);
        let f = poly_factor(&p).unwrap();
        assert_eq!(f.roots, vec![(b, 1), (a, 1)]);
        assert_eq!(f.remainder, q(&[1, 0, 1]));
    }

    #[test]
    fn prime_field_scan() {
        let m = PrimeModulus::new(5).unwrap();
        // (X - 1)^2 (X^2 + 2) over F_5; X^2 + 2 has no roots (squares mod 5: 0,1,4)
        let p = &Poly::<Fp>::from_i64s(m, &[-1, 1]).pow(2) * &Poly::from_i64s(m, &[2, 0, 1]);
        let f = poly_factor(&p).unwrap();
        assert_eq!(f.roots, vec![(Fp::new(1, m), 2)]);
        assert_eq!(f.remainder, Poly::from_i64s(m, &[2, 0, 1]));
    }

    #[test]
    fn prime_field_too_large() {
        let m = PrimeModulus::new(1_000_003).unwrap();
        let p = Poly::<Fp>::from_i64s(m, &[1, 1]);
        assert_eq!(poly_factor(&p), Err(Error::PrimeTooLarge(1_000_003)));
    }

    fn cpoly(c: &[f64]) -> Poly<Complex64> {
        Poly::new((), c.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    #[test]
    fn durand_kerner_clustered_roots() {
        // (X-1)^3 (X-2) = X^4 - 5X^3 + 9X^2 - 7X + 2
        let f = poly_factor(&cpoly(&[2.0, -7.0, 9.0, -5.0, 1.0])).unwrap();
        assert_eq!(f.roots.len(), 2);
        assert_eq!(f.roots[0].1, 3);
        assert_eq!(f.roots[1].1, 1);
        assert!((f.roots[0].0 - Complex64::new(1.0, 0.0)).norm() < 1e-6);
        assert!((f.roots[1].0 - Complex64::new(2.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn complex_high_multiplicity() {
        // (X-3)^5
        let p = Poly::linear(&Complex64::new(3.0, 0.0)).pow(5);
        let f = poly_factor(&p).unwrap();
        assert_eq!(f.roots.len(), 1);
        assert_eq!(f.roots[0].1, 5);
        assert!((f.roots[0].0 - Complex64::new(3.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn complex_conjugate_pair_and_zero() {
        // X^2 (X^2 + 1)
        let f = poly_factor(&cpoly(&[0.0, 0.0, 1.0, 0.0, 1.0])).unwrap();
        let mults: Vec<usize> = f.roots.iter().map(|r| r.1).collect();
        assert_eq!(mults, vec![1, 2, 1]);
        assert_eq!(f.roots[1].0, Complex64::new(0.0, 0.0));
        assert!((f.roots[0].0 - Complex64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn convergents_recover_fraction() {
        let c = convergents(22.0 / 7.0, 1000);
        assert_eq!(c.last().unwrap(), &rat(22, 7));
    }
}
