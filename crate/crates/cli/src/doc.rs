//! Input documents: a field descriptor, a payload and an options map.
//!
//! ```json
//! {"field": "Fp", "p": 5, "matrix": [[1, 2], [0, 1]], "options": {"tol": 1e-10}}
//! ```
//!
//! Payload keys are `matrix`, `matrices`, `polynomial`, `polynomials` and
//! `sequence` (`{"polynomial": [...], "initial": [...]}`); polynomials are
//! ascending coefficient arrays. Matrix and polynomial output documents are
//! valid input documents.

use pcform::{Matrix, Poly};
use serde_json::Value;

use crate::json::{self, Object};
use crate::scalar::{CliScalar, FieldDesc};
use crate::{CliError, ParseError};

#[derive(Debug, Clone)]
pub struct InputDocument {
    pub field: FieldDesc,
    body: Object,
    options: Object,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let body = json::parse_object(text)?;
        let field = FieldDesc::read(&body)??;
        let options = match body.get("options") {
            None => Object::new(),
            Some(Value::Object(o)) => o.clone(),
            Some(other) => return Err(ParseError::new(format!("options must be an object, got {other}")).into()),
        };
        Ok(Self { field, body, options })
    }

    pub fn matrix<F: CliScalar>(&self, ctx: &F::Ctx) -> Result<Matrix<F>, ParseError> {
        json::parse_matrix(ctx, json::get(&self.body, "matrix")?)
    }

    pub fn matrices<F: CliScalar>(&self, ctx: &F::Ctx) -> Result<Vec<Matrix<F>>, ParseError> {
        let list = json::get(&self.body, "matrices")?
            .as_array()
            .ok_or_else(|| ParseError::new("matrices must be an array of matrices"))?;
        list.iter().map(|m| json::parse_matrix(ctx, m)).collect()
    }

    pub fn polynomials<F: CliScalar>(&self, ctx: &F::Ctx) -> Result<Vec<Poly<F>>, ParseError> {
        if let Some(p) = self.body.get("polynomial") {
            return Ok(vec![json::parse_poly(ctx, p)?]);
        }
        let list = json::get(&self.body, "polynomials")?
            .as_array()
            .ok_or_else(|| ParseError::new("polynomials must be an array of coefficient arrays"))?;
        list.iter().map(|p| json::parse_poly(ctx, p)).collect()
    }

    /// `(characteristic polynomial, initial terms)`.
    pub fn sequence<F: CliScalar>(&self, ctx: &F::Ctx) -> Result<(Poly<F>, Vec<F>), ParseError> {
        let s = json::get(&self.body, "sequence")?
            .as_object()
            .ok_or_else(|| ParseError::new("sequence must be an object"))?;
        Ok((
            json::parse_poly(ctx, json::get(s, "polynomial")?)?,
            json::parse_scalars(ctx, json::get(s, "initial")?)?,
        ))
    }

    pub fn opt_f64(&self, key: &str) -> Result<Option<f64>, ParseError> {
        self.options
            .get(key)
            .map(|v| v.as_f64().ok_or_else(|| ParseError::new(format!("option {key} must be a number"))))
            .transpose()
    }

    pub fn opt_u64(&self, key: &str) -> Result<Option<u64>, ParseError> {
        self.options
            .get(key)
            .map(|v| v.as_u64().ok_or_else(|| ParseError::new(format!("option {key} must be a nonnegative integer"))))
            .transpose()
    }

    pub fn opt_bool(&self, key: &str) -> Result<bool, ParseError> {
        match self.options.get(key) {
            None => Ok(false),
            Some(Value::Bool(b)) => Ok(*b),
            Some(_) => Err(ParseError::new(format!("option {key} must be a boolean"))),
        }
    }

    pub fn opt_branch(&self) -> Result<Option<Vec<i64>>, ParseError> {
        self.options
            .get("branch")
            .map(|v| {
                v.as_array()
                    .and_then(|a| a.iter().map(Value::as_i64).collect::<Option<Vec<_>>>())
                    .ok_or_else(|| ParseError::new("option branch must be an array of integers"))
            })
            .transpose()
    }
}
