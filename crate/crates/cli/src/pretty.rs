//! ASCII rendering of forms, closed forms, matrices and polynomials.
//!
//! A form is printed as one matrix-level line, with coefficient matrices
//! named `I`, `A` (or scalar multiples) when possible and `C[j,i]`-style
//! labels otherwise; when any label is generic the entries follow, one
//! line each, as scalar sums such as `2^{k+3}*C(k,3) + 3*2^{k-1}*C(k,1)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use pcform::{Basis, ClosedFormExp, Matrix, PCanonicalForm, Poly, RealClosedForm, RealPCF, RealTerm};

use crate::scalar::{fmt_f64, real_coef, CliScalar, Coef};

enum Label {
    Multiple(Coef, &'static str),
    Named(String),
}

struct Term {
    label: Label,
    factors: Vec<String>,
    /// Factors go before the label (`t*A`) instead of after (`I*1^k`).
    factors_first: bool,
    /// Row-major entry terms; `None` where the entry vanishes.
    entries: Vec<Option<(Coef, Vec<String>)>>,
}

fn product(coef: &Coef, factors: &[String]) -> (String, bool) {
    let body = if factors.is_empty() {
        coef.body.clone()
    } else if coef.is_one() {
        factors.join("*")
    } else if coef.atomic {
        format!("{}*{}", coef.body, factors.join("*"))
    } else {
        format!("({})*{}", coef.body, factors.join("*"))
    };
    (body, coef.negative)
}

fn sum(items: &[(String, bool)]) -> String {
    if items.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (body, negative)) in items.iter().enumerate() {
        match (k, negative) {
            (0, false) => out.push_str(body),
            (0, true) => {
                out.push('-');
                out.push_str(body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(body);
            }
        }
    }
    out
}

fn matrix_term_text(t: &Term) -> (String, bool) {
    match &t.label {
        Label::Multiple(c, name) => {
            let mut factors = t.factors.clone();
            if t.factors_first {
                factors.push((*name).into());
            } else {
                factors.insert(0, (*name).into());
            }
            product(c, &factors)
        }
        Label::Named(name) => {
            let mut factors = t.factors.clone();
            if t.factors_first {
                factors.push(name.clone());
            } else {
                factors.insert(0, name.clone());
            }
            (factors.join("*"), false)
        }
    }
}

fn render_series(lhs: &str, entry_lhs: &str, n: usize, terms: &[Term]) -> String {
    let items: Vec<(String, bool)> = terms.iter().map(matrix_term_text).collect();
    let mut out = format!("{lhs} = {}\n", sum(&items));
    if terms.iter().any(|t| matches!(t.label, Label::Named(_))) {
        for r in 0..n {
            for c in 0..n {
                let items: Vec<(String, bool)> = terms
                    .iter()
                    .filter_map(|t| t.entries[r * n + c].as_ref())
                    .map(|(coef, f)| product(coef, f))
                    .collect();
                out.push_str(&format!("{} = {}\n", entry_lhs.replace("{r}", &(r + 1).to_string()).replace("{c}", &(c + 1).to_string()), sum(&items)));
            }
        }
    }
    out
}

/// `m = c * base` for a scalar `c`, up to `tol` on numeric fields.
fn multiple_of<F: CliScalar>(m: &Matrix<F>, base: &Matrix<F>, tol: f64) -> Option<F> {
    let (p, b) = base.entries().iter().enumerate().find(|(_, x)| !x.is_zero())?;
    let c = m.entries()[p].div(b);
    let scale = scale_of(m);
    let rest = m - &base.scale(&c);
    rest.entries().iter().all(|x| x.negligible(tol * scale)).then_some(c)
}

fn scale_of<F: CliScalar>(m: &Matrix<F>) -> f64 {
    m.entries().iter().map(F::magnitude).fold(1.0, f64::max)
}

fn label<F: CliScalar>(m: &Matrix<F>, a: Option<&Matrix<F>>, name: String, tol: f64) -> Label {
    let id = Matrix::identity(m.ctx().clone(), m.order());
    if let Some(c) = multiple_of(m, &id, tol) {
        return Label::Multiple(c.coef(), "I");
    }
    if let Some(c) = a.and_then(|a| multiple_of(m, a, tol)) {
        return Label::Multiple(c.coef(), "A");
    }
    Label::Named(name)
}

fn real_label(m: &DMatrix<f64>, name: String, tol: f64) -> Label {
    let c = m[(0, 0)];
    let scale = m.amax().max(1.0);
    let off = m - DMatrix::identity(m.nrows(), m.ncols()) * c;
    if off.amax() <= tol * scale {
        Label::Multiple(real_coef(c), "I")
    } else {
        Label::Named(name)
    }
}

fn basis_factor(basis: Basis, i: usize) -> Option<String> {
    match (basis, i) {
        (_, 0) => None,
        (Basis::Lambda, i) => Some(format!("C(k,{i})")),
        (Basis::Gamma, 1) => Some("k".into()),
        (Basis::Gamma, i) => Some(format!("k^{i}")),
    }
}

fn t_power(i: usize) -> Option<String> {
    match i {
        0 => None,
        1 => Some("t".into()),
        i => Some(format!("t^{i}")),
    }
}

fn power(base: &str, e: i64) -> String {
    match e {
        0 => format!("{base}^k"),
        e if e > 0 => format!("{base}^{{k+{e}}}"),
        e => format!("{base}^{{k-{}}}", -e),
    }
}

fn entries<F: CliScalar>(m: &Matrix<F>, tol: f64, f: impl Fn(&F) -> (Coef, Vec<String>)) -> Vec<Option<(Coef, Vec<String>)>> {
    let scale = scale_of(m);
    m.entries()
        .iter()
        .map(|x| (!x.negligible(tol * scale)).then(|| f(x)))
        .collect()
}

fn real_entries(m: &DMatrix<f64>, tol: f64, factors: &[String]) -> Vec<Option<(Coef, Vec<String>)>> {
    let scale = m.amax().max(1.0);
    let n = m.nrows();
    (0..n * n)
        .map(|k| {
            let x = m[(k / n, k % n)];
            (x.abs() > tol * scale).then(|| (real_coef(x), factors.to_vec()))
        })
        .collect()
}

/// `A^k` as nilpotent plus eigenvalue terms; `a` enables the `A` label.
pub fn pcf<F: CliScalar>(f: &PCanonicalForm<F>, a: Option<&Matrix<F>>, tol: f64) -> String {
    let mut terms = Vec::new();
    for (i, v) in f.nilpotent().iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let delta = format!("[k={i}]");
        terms.push(Term {
            label: label(v, a, format!("V[{i}]"), tol),
            factors: vec![delta.clone()],
            factors_first: false,
            entries: entries(v, tol, |x| (x.coef(), vec![delta.clone()])),
        });
    }
    for (j, g) in f.geometric().iter().enumerate() {
        let base = g.eigenvalue.base_text();
        for (i, c) in g.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let b = basis_factor(f.basis(), i);
            let mut factors = vec![power(&base, 0)];
            factors.extend(b.clone());
            terms.push(Term {
                label: label(c, a, format!("C[{},{i}]", j + 1), tol),
                factors,
                factors_first: false,
                entries: entries(c, tol, |x| {
                    let (u, e) = F::absorb_power(x, &g.eigenvalue);
                    let mut fs = vec![power(&base, e)];
                    fs.extend(b.clone());
                    (u.coef(), fs)
                }),
            });
        }
    }
    render_series("A^k", "a[{r},{c}](k)", f.order(), &terms)
}

fn exponent_text(lambda: &Complex64) -> String {
    let c = lambda.coef();
    let body = if c.is_one() {
        "t".to_string()
    } else if c.atomic {
        format!("{}t", c.body)
    } else {
        format!("({})t", c.body)
    };
    if c.negative {
        format!("e^{{-{body}}}")
    } else {
        format!("e^{{{body}}}")
    }
}

/// `e^{tA}` as a polynomial part plus `e^{lambda t} t^i` terms.
pub fn closed_form(e: &ClosedFormExp, a: Option<&Matrix<Complex64>>, tol: f64) -> String {
    let mut terms = Vec::new();
    for (i, m) in e.polynomial_part.iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        let f: Vec<String> = t_power(i).into_iter().collect();
        terms.push(Term {
            label: label(m, a, format!("M[{i}]"), tol),
            factors: f.clone(),
            factors_first: true,
            entries: entries(m, tol, |x| (x.coef(), f.clone())),
        });
    }
    for (j, t) in e.exponential_terms.iter().enumerate() {
        let ex = exponent_text(&t.exponent);
        for (i, m) in t.coeffs.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let mut f = vec![ex.clone()];
            f.extend(t_power(i));
            terms.push(Term {
                label: label(m, a, format!("E[{},{i}]", j + 1), tol),
                factors: f.clone(),
                factors_first: false,
                entries: entries(m, tol, |x| (x.coef(), f.clone())),
            });
        }
    }
    render_series("e^{tA}", "e[{r},{c}](t)", e.order, &terms)
}

fn spiral_header(terms: &[RealTerm]) -> String {
    let mut out = String::new();
    for (j, t) in terms.iter().enumerate() {
        if let RealTerm::Spiral { r, theta, .. } = t {
            out.push_str(&format!("mu_{} = {}*e^{{{}i}}\n", j + 1, fmt_f64(*r), fmt_f64(*theta)));
        }
    }
    out
}

/// Real form with conjugate pairs as `r^k cos(k theta)` / `r^k sin(k theta)`.
pub fn real_pcf(f: &RealPCF, tol: f64) -> String {
    let mut terms = Vec::new();
    for (i, v) in f.nilpotent.iter().enumerate() {
        let delta = vec![format!("[k={i}]")];
        terms.push(Term {
            label: real_label(v, format!("V[{i}]"), tol),
            factors: delta.clone(),
            factors_first: false,
            entries: real_entries(v, tol, &delta),
        });
    }
    for (j, t) in f.terms.iter().enumerate() {
        match t {
            RealTerm::Real { eigenvalue, coeffs } => {
                let base = if *eigenvalue < 0.0 {
                    format!("({})", fmt_f64(*eigenvalue))
                } else {
                    fmt_f64(*eigenvalue)
                };
                for (i, c) in coeffs.iter().enumerate().rev() {
                    let mut fs = vec![power(&base, 0)];
                    fs.extend(basis_factor(f.basis, i));
                    terms.push(Term {
                        label: real_label(c, format!("C[{},{i}]", j + 1), tol),
                        factors: fs.clone(),
                        factors_first: false,
                        entries: real_entries(c, tol, &fs),
                    });
                }
            }
            RealTerm::Spiral { r, theta, cos_coeffs, sin_coeffs } => {
                for (i, (p, q)) in cos_coeffs.iter().zip(sin_coeffs).enumerate().rev() {
                    for (m, trig, name) in [(p, "cos", "P"), (q, "sin", "Q")] {
                        if m.amax() == 0.0 {
                            continue;
                        }
                        let mut fs = vec![power(&fmt_f64(*r), 0), format!("{trig}({}*k)", fmt_f64(*theta))];
                        fs.extend(basis_factor(f.basis, i));
                        terms.push(Term {
                            label: real_label(m, format!("{name}[{},{i}]", j + 1), tol),
                            factors: fs.clone(),
                            factors_first: false,
                            entries: real_entries(m, tol, &fs),
                        });
                    }
                }
            }
        }
    }
    render_series("A^k", "a[{r},{c}](k)", f.order, &terms)
}

/// Real closed form `e^{tA}` with `f_i(z) = z^i e^z / i!`.
pub fn real_closed_form(e: &RealClosedForm, tol: f64) -> String {
    let mut terms = Vec::new();
    for (i, v) in e.polynomial_part.iter().enumerate() {
        let fs: Vec<String> = match i {
            0 => vec![],
            1 => vec!["t".into()],
            i => vec![format!("t^{i}/{i}!")],
        };
        terms.push(Term {
            label: real_label(v, format!("V[{i}]"), tol),
            factors: fs.clone(),
            factors_first: true,
            entries: real_entries(v, tol, &fs),
        });
    }
    for (j, t) in e.terms.iter().enumerate() {
        match t {
            RealTerm::Real { eigenvalue, coeffs } => {
                let arg = format!("{}t", fmt_f64(*eigenvalue));
                for (i, c) in coeffs.iter().enumerate() {
                    let fs = vec![format!("f_{i}({arg})")];
                    terms.push(Term {
                        label: real_label(c, format!("C[{},{i}]", j + 1), tol),
                        factors: fs.clone(),
                        factors_first: false,
                        entries: real_entries(c, tol, &fs),
                    });
                }
            }
            RealTerm::Spiral { cos_coeffs, sin_coeffs, .. } => {
                for (i, (p, q)) in cos_coeffs.iter().zip(sin_coeffs).enumerate() {
                    for (m, part, name) in [(p, "Re", "P"), (q, "Im", "Q")] {
                        if m.amax() == 0.0 {
                            continue;
                        }
                        let fs = vec![format!("{part} f_{i}(mu_{} t)", j + 1)];
                        terms.push(Term {
                            label: real_label(m, format!("{name}[{},{i}]", j + 1), tol),
                            factors: fs.clone(),
                            factors_first: false,
                            entries: real_entries(m, tol, &fs),
                        });
                    }
                }
            }
        }
    }
    let mut out = spiral_header(&e.terms);
    out.push_str(&render_series("e^{tA}", "e[{r},{c}](t)", e.order, &terms));
    out
}

pub fn matrix<F: CliScalar>(m: &Matrix<F>) -> String {
    let mut out = String::new();
    for r in m.rows() {
        let cells: Vec<String> = r.iter().map(|x| x.coef().signed()).collect();
        out.push_str(&format!("[{}]\n", cells.join(", ")));
    }
    out
}

pub fn real_matrix(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let cells: Vec<String> = (0..m.ncols()).map(|j| fmt_f64(m[(i, j)])).collect();
        out.push_str(&format!("[{}]\n", cells.join(", ")));
    }
    out
}

/// Descending powers of `X`, e.g. `X^3-2X^2-2X+1`.
pub fn poly<F: CliScalar>(p: &Poly<F>) -> String {
    let mut out = String::new();
    for (d, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let coef = c.coef();
        let x = match d {
            0 => String::new(),
            1 => "X".into(),
            d => format!("X^{d}"),
        };
        let body = if d == 0 {
            coef.body.clone()
        } else if coef.is_one() {
            x
        } else if coef.atomic {
            format!("{}{x}", coef.body)
        } else {
            format!("({}){x}", coef.body)
        };
        match (out.is_empty(), coef.negative) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&format!("-{body}")),
            (false, false) => out.push_str(&format!("+{body}")),
            (false, true) => out.push_str(&format!("-{body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use pcform::{expm_closed, pcf_build, pcf_to_gamma};

    type Q = BigRational;

    #[test]
    fn identity_form() {
        let f = pcf_build(&Matrix::<Q>::identity((), 2)).unwrap();
        assert_eq!(pcf(&f, None, 1e-8), "A^k = I*1^k\n");
    }

    #[test]
    fn nilpotent_exponential() {
        let a = Matrix::<Q>::from_i64_rows((), &[&[0, 1], &[0, 0]]);
        let e = expm_closed(&a).unwrap();
        let ac = a.to_complex().unwrap();
        assert_eq!(closed_form(&e, Some(&ac), 1e-8), "e^{tA} = I + t*A\n");
    }

    #[test]
    fn semicirculant_corner_entry() {
        let a = Matrix::<Q>::from_i64_rows((), &[&[2, 4, 2, 3], &[0, 2, 4, 2], &[0, 0, 2, 4], &[0, 0, 0, 2]]);
        let f = pcf_build(&a).unwrap();
        let text = pcf(&f, Some(&a), 1e-8);
        let first = text.lines().next().unwrap();
        assert_eq!(first, "A^k = C[1,3]*2^k*C(k,3) + C[1,2]*2^k*C(k,2) + C[1,1]*2^k*C(k,1) + I*2^k");
        assert!(text.contains("a[1,4](k) = 2^{k+3}*C(k,3) + 2^{k+2}*C(k,2) + 3*2^{k-1}*C(k,1)\n"), "{text}");
        assert!(text.contains("a[2,1](k) = 0\n"));
        let g = pcf_to_gamma(&f).unwrap();
        assert!(pcf(&g, Some(&a), 1e-8).contains("k^3"));
    }

    #[test]
    fn nilpotent_part_uses_delta() {
        let a = Matrix::<Q>::from_i64_rows((), &[&[0, 1], &[0, 0]]);
        let f = pcf_build(&a).unwrap();
        assert_eq!(pcf(&f, Some(&a), 1e-8), "A^k = I*[k=0] + A*[k=1]\n");
    }

    #[test]
    fn polynomial_text() {
        let p = Poly::<Q>::from_i64s((), &[1, -2, -2, 1]);
        assert_eq!(poly(&p), "X^3-2X^2-2X+1\n");
        let p = Poly::<Q>::from_i64s((), &[-4, 0, 1]);
        assert_eq!(poly(&p), "X^2-4\n");
        assert_eq!(poly(&Poly::<Q>::zero(())), "0\n");
    }
}
