//! Lossless JSON documents for every object the command line emits.
//!
//! Each document is an object with a `type` tag and the field descriptor;
//! rationals are strings, complex numbers `{re, im}` objects, polynomials
//! ascending coefficient arrays. Matrix and polynomial documents double as
//! input documents.

use nalgebra::DMatrix;
use num_complex::Complex64;
use pcform::{Basis, ClosedFormExp, ExpTerm, GeometricTerm, Matrix, PCanonicalForm, Poly, RealClosedForm, RealPCF, RealTerm};
use serde_json::{json, Map, Value};

use crate::scalar::{CliScalar, FieldDesc};
use crate::ParseError;

pub type Object = Map<String, Value>;

fn header(kind: &str, field: FieldDesc) -> Object {
    let mut obj = Object::new();
    obj.insert("type".into(), json!(kind));
    field.write(&mut obj);
    obj
}

pub fn render(obj: Object) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn parse_object(text: &str) -> Result<Object, ParseError> {
    match serde_json::from_str::<Value>(text) {
        Ok(Value::Object(o)) => Ok(o),
        Ok(other) => Err(ParseError::new(format!("expected a JSON object, got {other}"))),
        Err(e) => Err(ParseError::new(format!("invalid JSON: {e}"))),
    }
}

pub fn get<'a>(obj: &'a Object, key: &str) -> Result<&'a Value, ParseError> {
    obj.get(key).ok_or_else(|| ParseError::new(format!("missing key {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, ParseError> {
    v.as_array().ok_or_else(|| ParseError::new(format!("{what} must be an array, got {v}")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize, ParseError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| ParseError::new(format!("{what} must be a nonnegative integer, got {v}")))
}

fn f64_of(v: &Value, what: &str) -> Result<f64, ParseError> {
    v.as_f64().ok_or_else(|| ParseError::new(format!("{what} must be a number, got {v}")))
}

pub fn check_type(obj: &Object, kind: &str) -> Result<(), ParseError> {
    match obj.get("type") {
        Some(Value::String(s)) if s == kind => Ok(()),
        Some(other) => Err(ParseError::new(format!("expected a {kind} document, got type {other}"))),
        None => Err(ParseError::new(format!("expected a {kind} document, missing \"type\""))),
    }
}

// scalars, matrices, polynomials

pub fn matrix_value<F: CliScalar>(m: &Matrix<F>) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(F::to_json).collect()))
            .collect(),
    )
}

pub fn parse_matrix<F: CliScalar>(ctx: &F::Ctx, v: &Value) -> Result<Matrix<F>, ParseError> {
    let rows = array(v, "matrix")?;
    if rows.is_empty() {
        return Err(ParseError::new("matrix is empty"));
    }
    let n = rows.len();
    let parsed = rows
        .iter()
        .map(|r| {
            let r = array(r, "matrix row")?;
            if r.len() != n {
                return Err(ParseError::new(format!("matrix is not square: row of length {} in {n} rows", r.len())));
            }
            r.iter().map(|x| F::parse(ctx, x)).collect::<Result<Vec<F>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(ctx.clone(), parsed).map_err(|e| ParseError::new(e.to_string()))
}

pub fn poly_value<F: CliScalar>(p: &Poly<F>) -> Value {
    Value::Array(p.coeffs().iter().map(F::to_json).collect())
}

pub fn parse_poly<F: CliScalar>(ctx: &F::Ctx, v: &Value) -> Result<Poly<F>, ParseError> {
    let c = array(v, "polynomial")?
        .iter()
        .map(|x| F::parse(ctx, x))
        .collect::<Result<Vec<F>, _>>()?;
    Ok(Poly::new(ctx.clone(), c))
}

pub fn scalars_value<F: CliScalar>(xs: &[F]) -> Value {
    Value::Array(xs.iter().map(F::to_json).collect())
}

pub fn parse_scalars<F: CliScalar>(ctx: &F::Ctx, v: &Value) -> Result<Vec<F>, ParseError> {
    array(v, "sequence")?.iter().map(|x| F::parse(ctx, x)).collect()
}

fn matrices_value<F: CliScalar>(ms: &[Matrix<F>]) -> Value {
    Value::Array(ms.iter().map(matrix_value).collect())
}

fn parse_matrices<F: CliScalar>(ctx: &F::Ctx, v: &Value) -> Result<Vec<Matrix<F>>, ParseError> {
    array(v, "matrix list")?.iter().map(|m| parse_matrix(ctx, m)).collect()
}

pub fn matrix_doc<F: CliScalar>(m: &Matrix<F>) -> Object {
    let mut obj = header("matrix", F::descriptor(m.ctx()));
    obj.insert("matrix".into(), matrix_value(m));
    obj
}

pub fn poly_doc<F: CliScalar>(p: &Poly<F>) -> Object {
    let mut obj = header("polynomial", F::descriptor(p.ctx()));
    obj.insert("polynomial".into(), poly_value(p));
    obj
}

pub fn scalar_doc<F: CliScalar>(ctx: &F::Ctx, x: &F) -> Object {
    let mut obj = header("scalar", F::descriptor(ctx));
    obj.insert("value".into(), x.to_json());
    obj
}

// P-canonical forms

fn basis_value(b: Basis) -> Value {
    json!(match b {
        Basis::Lambda => "lambda",
        Basis::Gamma => "gamma",
    })
}

fn parse_basis(v: &Value) -> Result<Basis, ParseError> {
    match v.as_str() {
        Some("lambda") => Ok(Basis::Lambda),
        Some("gamma") => Ok(Basis::Gamma),
        _ => Err(ParseError::new(format!("basis must be \"lambda\" or \"gamma\", got {v}"))),
    }
}

pub fn pcf_doc<F: CliScalar>(f: &PCanonicalForm<F>) -> Object {
    let mut obj = header("pcf", F::descriptor(f.ctx()));
    obj.insert("order".into(), json!(f.order()));
    obj.insert("basis".into(), basis_value(f.basis()));
    obj.insert("nilpotent".into(), matrices_value(f.nilpotent()));
    let terms = f
        .geometric()
        .iter()
        .map(|g| json!({ "eigenvalue": g.eigenvalue.to_json(), "coeffs": matrices_value(&g.coeffs) }))
        .collect();
    obj.insert("geometric".into(), Value::Array(terms));
    obj
}

/// Rebuilds a form; structural violations surface as parse errors.
pub fn parse_pcf<F: CliScalar>(ctx: &F::Ctx, obj: &Object) -> Result<PCanonicalForm<F>, ParseError> {
    check_type(obj, "pcf")?;
    let order = usize_of(get(obj, "order")?, "order")?;
    let basis = parse_basis(get(obj, "basis")?)?;
    let nilpotent = parse_matrices(ctx, get(obj, "nilpotent")?)?;
    let geometric = array(get(obj, "geometric")?, "geometric")?
        .iter()
        .map(|t| {
            let t = t.as_object().ok_or_else(|| ParseError::new("geometric terms must be objects"))?;
            Ok(GeometricTerm {
                eigenvalue: F::parse(ctx, get(t, "eigenvalue")?)?,
                coeffs: parse_matrices(ctx, get(t, "coeffs")?)?,
            })
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    PCanonicalForm::from_parts(ctx.clone(), order, basis, nilpotent, geometric)
        .map_err(|e| ParseError::new(format!("invalid form: {e}")))
}

// closed-form exponentials

pub fn closed_form_doc(e: &ClosedFormExp) -> Object {
    let mut obj = header("closed_form_exp", FieldDesc::C);
    obj.insert("order".into(), json!(e.order));
    obj.insert("polynomial_part".into(), matrices_value(&e.polynomial_part));
    let terms = e
        .exponential_terms
        .iter()
        .map(|t| json!({ "exponent": t.exponent.to_json(), "coeffs": matrices_value(&t.coeffs) }))
        .collect();
    obj.insert("exponential_terms".into(), Value::Array(terms));
    obj
}

pub fn parse_closed_form(obj: &Object) -> Result<ClosedFormExp, ParseError> {
    check_type(obj, "closed_form_exp")?;
    let exponential_terms = array(get(obj, "exponential_terms")?, "exponential_terms")?
        .iter()
        .map(|t| {
            let t = t.as_object().ok_or_else(|| ParseError::new("exponential terms must be objects"))?;
            Ok(ExpTerm {
                exponent: Complex64::parse(&(), get(t, "exponent")?)?,
                coeffs: parse_matrices(&(), get(t, "coeffs")?)?,
            })
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    Ok(ClosedFormExp {
        order: usize_of(get(obj, "order")?, "order")?,
        polynomial_part: parse_matrices(&(), get(obj, "polynomial_part")?)?,
        exponential_terms,
    })
}

// real forms

fn real_matrix_value(m: &DMatrix<f64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| json!(m[(i, j)])).collect()))
            .collect(),
    )
}

fn parse_real_matrix(v: &Value) -> Result<DMatrix<f64>, ParseError> {
    let rows = array(v, "matrix")?;
    let n = rows.len();
    let mut data = Vec::with_capacity(n * n);
    for r in rows {
        let r = array(r, "matrix row")?;
        if r.len() != n {
            return Err(ParseError::new("real matrix is not square"));
        }
        for x in r {
            data.push(f64_of(x, "real matrix entry")?);
        }
    }
    Ok(DMatrix::from_row_slice(n, n, &data))
}

fn real_matrices_value(ms: &[DMatrix<f64>]) -> Value {
    Value::Array(ms.iter().map(real_matrix_value).collect())
}

fn parse_real_matrices(v: &Value) -> Result<Vec<DMatrix<f64>>, ParseError> {
    array(v, "matrix list")?.iter().map(parse_real_matrix).collect()
}

fn real_terms_value(terms: &[RealTerm]) -> Value {
    Value::Array(
        terms
            .iter()
            .map(|t| match t {
                RealTerm::Real { eigenvalue, coeffs } => json!({
                    "kind": "real",
                    "eigenvalue": eigenvalue,
                    "coeffs": real_matrices_value(coeffs),
                }),
                RealTerm::Spiral { r, theta, cos_coeffs, sin_coeffs } => json!({
                    "kind": "spiral",
                    "r": r,
                    "theta": theta,
                    "cos_coeffs": real_matrices_value(cos_coeffs),
                    "sin_coeffs": real_matrices_value(sin_coeffs),
                }),
            })
            .collect(),
    )
}

fn parse_real_terms(v: &Value) -> Result<Vec<RealTerm>, ParseError> {
    array(v, "terms")?
        .iter()
        .map(|t| {
            let t = t.as_object().ok_or_else(|| ParseError::new("terms must be objects"))?;
            match get(t, "kind")?.as_str() {
                Some("real") => Ok(RealTerm::Real {
                    eigenvalue: f64_of(get(t, "eigenvalue")?, "eigenvalue")?,
                    coeffs: parse_real_matrices(get(t, "coeffs")?)?,
                }),
                Some("spiral") => Ok(RealTerm::Spiral {
                    r: f64_of(get(t, "r")?, "r")?,
                    theta: f64_of(get(t, "theta")?, "theta")?,
                    cos_coeffs: parse_real_matrices(get(t, "cos_coeffs")?)?,
                    sin_coeffs: parse_real_matrices(get(t, "sin_coeffs")?)?,
                }),
                _ => Err(ParseError::new("term kind must be \"real\" or \"spiral\"")),
            }
        })
        .collect()
}

pub fn real_pcf_doc(f: &RealPCF) -> Object {
    let mut obj = Object::new();
    obj.insert("type".into(), json!("real_pcf"));
    obj.insert("order".into(), json!(f.order));
    obj.insert("basis".into(), basis_value(f.basis));
    obj.insert("nilpotent".into(), real_matrices_value(&f.nilpotent));
    obj.insert("terms".into(), real_terms_value(&f.terms));
    obj
}

pub fn parse_real_pcf(obj: &Object) -> Result<RealPCF, ParseError> {
    check_type(obj, "real_pcf")?;
    Ok(RealPCF {
        order: usize_of(get(obj, "order")?, "order")?,
        basis: parse_basis(get(obj, "basis")?)?,
        nilpotent: parse_real_matrices(get(obj, "nilpotent")?)?,
        terms: parse_real_terms(get(obj, "terms")?)?,
    })
}

pub fn real_closed_form_doc(e: &RealClosedForm) -> Object {
    let mut obj = Object::new();
    obj.insert("type".into(), json!("real_closed_form"));
    obj.insert("order".into(), json!(e.order));
    obj.insert("polynomial_part".into(), real_matrices_value(&e.polynomial_part));
    obj.insert("terms".into(), real_terms_value(&e.terms));
    obj
}

pub fn parse_real_closed_form(obj: &Object) -> Result<RealClosedForm, ParseError> {
    check_type(obj, "real_closed_form")?;
    Ok(RealClosedForm {
        order: usize_of(get(obj, "order")?, "order")?,
        polynomial_part: parse_real_matrices(get(obj, "polynomial_part")?)?,
        terms: parse_real_terms(get(obj, "terms")?)?,
    })
}

pub fn real_matrix_doc(m: &DMatrix<f64>) -> Object {
    let mut obj = header("matrix", FieldDesc::C);
    let rows = (0..m.nrows())
        .map(|i| Value::Array((0..m.ncols()).map(|j| Complex64::new(m[(i, j)], 0.0).to_json()).collect()))
        .collect();
    obj.insert("matrix".into(), Value::Array(rows));
    obj
}
