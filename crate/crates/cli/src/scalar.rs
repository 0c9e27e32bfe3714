//! JSON encoding and plain-text rendering of field elements.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use pcform::{Field, Fp, PrimeModulus};
use serde_json::{json, Map, Value};

use crate::ParseError;

/// Which field a document lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldDesc {
    Q,
    Fp(PrimeModulus),
    C,
}

impl FieldDesc {
    /// `0` selects Q, a prime selects F_p.
    pub fn from_characteristic(c: u64) -> pcform::Result<Self> {
        if c == 0 {
            Ok(FieldDesc::Q)
        } else {
            Ok(FieldDesc::Fp(PrimeModulus::new(c)?))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldDesc::Fp(m) => m.get(),
            _ => 0,
        }
    }

    /// Writes `field` (and `p` for prime fields) into a JSON object.
    pub fn write(self, obj: &mut Map<String, Value>) {
        match self {
            FieldDesc::Q => {
                obj.insert("field".into(), json!("Q"));
            }
            FieldDesc::C => {
                obj.insert("field".into(), json!("C"));
            }
            FieldDesc::Fp(m) => {
                obj.insert("field".into(), json!("Fp"));
                obj.insert("p".into(), json!(m.get()));
            }
        }
    }

    /// Reads the descriptor of a document; a missing `field` means Q.
    pub fn read(obj: &Map<String, Value>) -> Result<pcform::Result<Self>, ParseError> {
        match obj.get("field") {
            None => Ok(Ok(FieldDesc::Q)),
            Some(Value::String(s)) => match s.as_str() {
                "Q" => Ok(Ok(FieldDesc::Q)),
                "C" => Ok(Ok(FieldDesc::C)),
                "Fp" => {
                    let p = obj
                        .get("p")
                        .and_then(Value::as_u64)
                        .ok_or_else(|| ParseError::new("field Fp needs an integer \"p\""))?;
                    Ok(PrimeModulus::new(p).map(FieldDesc::Fp))
                }
                other => Err(ParseError::new(format!("unknown field {other:?}"))),
            },
            Some(v) => Err(ParseError::new(format!("field must be a string, got {v}"))),
        }
    }
}

/// A scalar rendered for display: magnitude text plus sign.
#[derive(Debug, Clone, PartialEq)]
pub struct Coef {
    pub body: String,
    pub negative: bool,
    /// False when the body needs parentheses inside a product.
    pub atomic: bool,
}

impl Coef {
    pub fn is_one(&self) -> bool {
        self.body == "1"
    }

    /// The signed text of the scalar on its own.
    pub fn signed(&self) -> String {
        if self.negative {
            format!("-{}", self.body)
        } else {
            self.body.clone()
        }
    }

    fn real(x: f64) -> Self {
        Coef {
            body: fmt_f64(x.abs()),
            negative: x.is_sign_negative() && x != 0.0,
            atomic: true,
        }
    }
}

/// Shortest round-trip text; integral values without a trailing `.0`.
pub fn fmt_f64(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{x}")
    } else {
        format!("{x:?}")
    }
}

/// Real coefficients of real forms.
pub fn real_coef(x: f64) -> Coef {
    Coef::real(x)
}

/// Base of a power `base^k`, parenthesized unless a nonnegative atom.
fn power_base(c: &Coef) -> String {
    if c.negative || !c.atomic {
        format!("({})", c.signed())
    } else {
        c.body.clone()
    }
}

/// Field elements the command line can read, write and print.
pub trait CliScalar: Field {
    fn descriptor(ctx: &Self::Ctx) -> FieldDesc;
    fn parse(ctx: &Self::Ctx, v: &Value) -> Result<Self, ParseError>;
    fn to_json(&self) -> Value;
    fn coef(&self) -> Coef;

    /// True when the entry is dropped from pretty output.
    fn negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    /// Size used to scale numeric tolerances; exact fields ignore it.
    fn magnitude(&self) -> f64 {
        1.0
    }

    /// `base` as it appears in `base^k`.
    fn base_text(&self) -> String {
        power_base(&self.coef())
    }

    /// Splits `coef * lambda^k` as `u * lambda^(k+e)`; identity by default.
    fn absorb_power(coef: &Self, _lambda: &Self) -> (Self, i64) {
        (coef.clone(), 0)
    }
}

impl CliScalar for BigRational {
    fn descriptor(_: &()) -> FieldDesc {
        FieldDesc::Q
    }

    fn parse(_: &(), v: &Value) -> Result<Self, ParseError> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|x| BigRational::from_integer(x.into()))
                .or_else(|| n.as_u64().map(|x| BigRational::from_integer(x.into())))
                .ok_or_else(|| ParseError::new(format!("rational entries must be integers or \"n/d\" strings, got {n}"))),
            Value::String(s) => parse_rational(s),
            other => Err(ParseError::new(format!("expected a rational, got {other}"))),
        }
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn coef(&self) -> Coef {
        Coef {
            body: self.abs().to_string(),
            negative: self.is_negative(),
            atomic: self.is_integer(),
        }
    }

    fn absorb_power(coef: &Self, lambda: &Self) -> (Self, i64) {
        if !lambda.is_integer() || lambda.abs() <= <BigRational as One>::one() || Zero::is_zero(coef) {
            return (coef.clone(), 0);
        }
        let l = lambda.to_integer();
        let mut u = coef.clone();
        let mut e = 0i64;
        while (u.numer() % &l).is_zero() {
            u /= lambda;
            e += 1;
        }
        while e == 0 && (u.denom() % &l).is_zero() {
            u *= lambda;
            e -= 1;
        }
        (u, e)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || ParseError::new(format!("malformed rational {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ParseError::new(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        None => BigInt::from_str(&t).map(BigRational::from_integer).map_err(|_| bad()),
    }
}

impl CliScalar for Fp {
    fn descriptor(m: &PrimeModulus) -> FieldDesc {
        FieldDesc::Fp(*m)
    }

    fn parse(m: &PrimeModulus, v: &Value) -> Result<Self, ParseError> {
        let q = BigRational::parse(&(), v)?;
        Fp::from_rational(m, &q)
            .ok_or_else(|| ParseError::new(format!("{q} has no image modulo {}", m.get())))
    }

    fn to_json(&self) -> Value {
        json!(self.value())
    }

    fn coef(&self) -> Coef {
        Coef {
            body: self.value().to_string(),
            negative: false,
            atomic: true,
        }
    }
}

impl CliScalar for Complex64 {
    fn descriptor(_: &()) -> FieldDesc {
        FieldDesc::C
    }

    /// `{re, im}` objects; bare numbers and rational strings are read as reals.
    fn parse(_: &(), v: &Value) -> Result<Self, ParseError> {
        let num = |v: &Value| -> Result<f64, ParseError> {
            match v {
                Value::Number(n) => n.as_f64().ok_or_else(|| ParseError::new(format!("bad number {n}"))),
                Value::String(s) => parse_rational(s).map(|q| {
                    use num_traits::ToPrimitive;
                    q.to_f64().unwrap_or(f64::NAN)
                }),
                other => Err(ParseError::new(format!("expected a number, got {other}"))),
            }
        };
        match v {
            Value::Object(o) => {
                let re = o.get("re").map(num).transpose()?.unwrap_or(0.0);
                let im = o.get("im").map(num).transpose()?.unwrap_or(0.0);
                if o.keys().any(|k| k != "re" && k != "im") {
                    return Err(ParseError::new(format!("complex entries have only re and im, got {v}")));
                }
                Ok(Complex64::new(re, im))
            }
            other => Ok(Complex64::new(num(other)?, 0.0)),
        }
    }

    fn to_json(&self) -> Value {
        json!({ "re": self.re, "im": self.im })
    }

    fn coef(&self) -> Coef {
        let (re, im) = (self.re, self.im);
        if im == 0.0 {
            return Coef::real(re);
        }
        let imag = |x: f64| {
            if x.abs() == 1.0 {
                "i".to_string()
            } else {
                format!("{}i", fmt_f64(x.abs()))
            }
        };
        if re == 0.0 {
            return Coef {
                body: imag(im),
                negative: im < 0.0,
                atomic: true,
            };
        }
        let sign = if im < 0.0 { '-' } else { '+' };
        Coef {
            body: format!("{}{sign}{}", fmt_f64(re), imag(im)),
            negative: false,
            atomic: false,
        }
    }

    fn negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pcform::rat;

    #[test]
    fn rationals_parse_from_integers_and_strings() {
        assert_eq!(BigRational::parse(&(), &json!(-3)).unwrap(), rat(-3, 1));
        assert_eq!(BigRational::parse(&(), &json!("6/4")).unwrap(), rat(3, 2));
        assert_eq!(BigRational::parse(&(), &json!("\u{2212}1")).unwrap(), rat(-1, 1));
        assert!(BigRational::parse(&(), &json!("1/0")).is_err());
        assert!(BigRational::parse(&(), &json!(0.5)).is_err());
    }

    #[test]
    fn prime_field_entries_are_reduced() {
        let m = PrimeModulus::new(5).unwrap();
        assert_eq!(Fp::parse(&m, &json!(-1)).unwrap().value(), 4);
        assert_eq!(Fp::parse(&m, &json!("1/2")).unwrap().value(), 3);
        assert!(Fp::parse(&m, &json!("1/5")).is_err());
    }

    #[test]
    fn complex_text() {
        assert_eq!(Complex64::new(2.0, 0.0).coef().signed(), "2");
        assert_eq!(Complex64::new(-0.5, 0.0).coef().signed(), "-0.5");
        assert_eq!(Complex64::new(0.0, -1.0).coef().signed(), "-i");
        assert_eq!(Complex64::new(1.0, 2.0).coef().signed(), "1+2i");
        assert_eq!(Complex64::new(1.0, 2.0).base_text(), "(1+2i)");
        assert_eq!(Complex64::new(-2.0, 0.0).base_text(), "(-2)");
    }

    #[test]
    fn powers_are_absorbed_into_integer_bases() {
        let two = rat(2, 1);
        assert_eq!(BigRational::absorb_power(&rat(8, 1), &two), (rat(1, 1), 3));
        assert_eq!(BigRational::absorb_power(&rat(3, 2), &two), (rat(3, 1), -1));
        assert_eq!(BigRational::absorb_power(&rat(3, 1), &two), (rat(3, 1), 0));
        assert_eq!(BigRational::absorb_power(&rat(-8, 1), &rat(-2, 1)), (rat(1, 1), 3));
        assert_eq!(BigRational::absorb_power(&rat(5, 1), &rat(1, 1)), (rat(5, 1), 0));
    }
}
