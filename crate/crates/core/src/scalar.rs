//! Ground-field scalars.
//!
//! Every algebraic routine in the crate is generic over [`Scalar`]. Two
//! fields are provided: exact arbitrary-precision rationals and complex
//! doubles. Comparisons on the float field always go through an explicit
//! tolerance; the rational field ignores the tolerance and compares exactly.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde_json::Value;

/// Default tolerance for float comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Which ground field a scalar type realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Complex,
}

impl FieldKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldKind::Rational => "rational",
            FieldKind::Complex => "complex",
        }
    }
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FieldKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" => Ok(FieldKind::Rational),
            "complex" => Ok(FieldKind::Complex),
            other => Err(format!("unknown field `{other}`")),
        }
    }
}

/// A field element.
pub trait Scalar:
    Num + std::ops::Neg<Output = Self> + Clone + Debug + Display + Send + Sync + 'static
{
    const FIELD: FieldKind;

    /// True iff `self` is zero up to `tol` (exactly zero for exact fields).
    fn is_negligible(&self, tol: f64) -> bool;

    /// Absolute value as an `f64`, used for deviations and pivoting.
    fn magnitude(&self) -> f64;

    /// Score used to choose elimination pivots; larger is better.
    fn pivot_score(&self) -> f64 {
        self.magnitude()
    }

    fn from_rational(r: &BigRational) -> Self;

    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    fn from_int(p: i64) -> Self {
        Self::from_ratio(p, 1)
    }

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self, String>;

    /// `self` raised to a non-negative integer power.
    fn powu(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).is_negligible(tol)
    }
}

/// Exact rational.
pub type Rational = BigRational;

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| format!("bad rational `{s}`"))?;
    let q: BigInt = q.parse().map_err(|_| format!("bad rational `{s}`"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(p, q))
}

/// Formats as `"p/q"` with `q > 0` and `gcd(p, q) = 1`.
pub fn format_rational(r: &Rational) -> String {
    // BigRational::new keeps the value reduced with a positive denominator.
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl Scalar for BigRational {
    const FIELD: FieldKind = FieldKind::Rational;

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn pivot_score(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => {
                Ok(BigRational::from_integer(n.as_i64().unwrap().into()))
            }
            other => Err(format!("expected rational string \"p/q\", found {other}")),
        }
    }
}

impl Scalar for Complex64 {
    const FIELD: FieldKind = FieldKind::Complex;

    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn to_json(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }

    fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::Array(parts) if parts.len() == 2 => {
                let re = parts[0]
                    .as_f64()
                    .ok_or("complex real part is not a number")?;
                let im = parts[1]
                    .as_f64()
                    .ok_or("complex imaginary part is not a number")?;
                Ok(Complex64::new(re, im))
            }
            Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
            Value::String(s) => parse_rational(s).map(|r| Complex64::from_rational(&r)),
            other => Err(format!("expected complex [re, im], found {other}")),
        }
    }
}

/// Principal square root on the complex field.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    z.sqrt()
}

/// Sign `(-1)^k`.
pub fn sign<F: Scalar>(k: usize) -> F {
    if k.is_multiple_of(2) {
        F::one()
    } else {
        -F::one()
    }
}

/// Binomial coefficient as a field element.
pub fn binomial<F: Scalar>(n: usize, k: usize) -> F {
    if k > n {
        return F::zero();
    }
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    F::from_rational(&BigRational::from_integer(acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_is_reduced() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("5").unwrap()), "5/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_json_round_trip() {
        let r = rational(-7, 3);
        assert_eq!(Rational::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn complex_json_and_tolerance() {
        let z = Complex64::new(1.5, -2.0);
        assert_eq!(Complex64::from_json(&z.to_json()).unwrap(), z);
        assert!(Complex64::new(1e-12, 0.0).is_negligible(DEFAULT_TOL));
        assert!(!Complex64::new(1e-6, 0.0).is_negligible(DEFAULT_TOL));
    }

    #[test]
    fn principal_branch() {
        let r = principal_sqrt(Complex64::new(-4.0, 0.0));
        assert!((r - Complex64::new(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial::<Rational>(5, 2), rational(10, 1));
        assert_eq!(binomial::<Rational>(0, 0), rational(1, 1));
        assert_eq!(binomial::<Rational>(2, 3), rational(0, 1));
    }
}
