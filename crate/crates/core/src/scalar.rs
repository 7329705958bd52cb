//! Scalars of the toolkit: exact rationals (default) or binary64 floats.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arithmetic mode carried by a chart. Rational mode performs no rounding;
/// float mode carries the tolerance used by zero tests, pivoting and ranks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScalarMode {
    Rational,
    Float { tol: f64 },
}

impl ScalarMode {
    pub const DEFAULT_FLOAT_TOL: f64 = 1e-9;

    pub fn float() -> Self {
        ScalarMode::Float {
            tol: Self::DEFAULT_FLOAT_TOL,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ScalarMode::Rational)
    }

    pub fn tol(&self) -> f64 {
        match self {
            ScalarMode::Rational => 0.0,
            ScalarMode::Float { tol } => *tol,
        }
    }
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMode::Rational => write!(f, "rational"),
            ScalarMode::Float { .. } => write!(f, "float"),
        }
    }
}

/// A single coefficient. All binary operations require matching variants;
/// charts guarantee this, so a mismatch is a logic error and panics.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub enum Scalar {
    Rational(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero(mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Rational => Scalar::Rational(BigRational::zero()),
            ScalarMode::Float { .. } => Scalar::Float(0.0),
        }
    }

    pub fn one(mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Rational => Scalar::Rational(BigRational::one()),
            ScalarMode::Float { .. } => Scalar::Float(1.0),
        }
    }

    pub fn from_i64(v: i64, mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Rational => Scalar::Rational(BigRational::from(BigInt::from(v))),
            ScalarMode::Float { .. } => Scalar::Float(v as f64),
        }
    }

    pub fn from_ratio(num: i64, den: i64, mode: ScalarMode) -> Self {
        assert!(den != 0);
        match mode {
            ScalarMode::Rational => {
                Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
            ScalarMode::Float { .. } => Scalar::Float(num as f64 / den as f64),
        }
    }

    pub fn from_rational(r: BigRational, mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Rational => Scalar::Rational(r),
            ScalarMode::Float { .. } => {
                let n = r.numer().to_f64().unwrap_or(f64::NAN);
                let d = r.denom().to_f64().unwrap_or(f64::NAN);
                Scalar::Float(n / d)
            }
        }
    }

    pub fn mode_matches(&self, mode: ScalarMode) -> bool {
        matches!(
            (self, mode),
            (Scalar::Rational(_), ScalarMode::Rational) | (Scalar::Float(_), ScalarMode::Float { .. })
        )
    }

    /// Exact zero test, used for storage pruning.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    /// Mode-aware zero test used by invertibility checks, pivoting and ranks.
    pub fn is_negligible(&self, tol: f64) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float(x) => x.abs() <= tol,
        }
    }

    pub fn abs_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => {
                let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
                let d = r.denom().to_f64().unwrap_or(1.0);
                (n / d).abs()
            }
            Scalar::Float(x) => x.abs(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a + b),
            _ => panic!("scalar mode mixed in arithmetic"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a - b),
            _ => panic!("scalar mode mixed in arithmetic"),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a * b),
            _ => panic!("scalar mode mixed in arithmetic"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Float(a) => Scalar::Float(-a),
        }
    }

    pub fn recip(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(a) => {
                if a.is_zero() {
                    Err(Error::NotInvertible("rational zero".into()))
                } else {
                    Ok(Scalar::Rational(a.recip()))
                }
            }
            Scalar::Float(a) => {
                if *a == 0.0 {
                    Err(Error::NotInvertible("float zero".into()))
                } else {
                    Ok(Scalar::Float(1.0 / a))
                }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn mul_usize(&self, n: usize) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(a * BigRational::from(BigInt::from(n))),
            Scalar::Float(a) => Scalar::Float(a * n as f64),
        }
    }

    /// Canonical report form: `p/q` (or `p`) in rational mode, shortest
    /// round-trip decimal in float mode.
    pub fn to_report_string(&self) -> String {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(x) => format!("{x}"),
        }
    }

    /// Parses `p/q`, integer, or (float mode only) decimal literals.
    pub fn parse(text: &str, mode: ScalarMode) -> Result<Scalar> {
        let t = text.trim();
        if let Some((n, d)) = t.split_once('/') {
            let num = BigInt::from_str(n.trim())
                .map_err(|_| Error::Invalid(format!("bad rational `{t}`")))?;
            let den = BigInt::from_str(d.trim())
                .map_err(|_| Error::Invalid(format!("bad rational `{t}`")))?;
            if den.is_zero() {
                return Err(Error::Invalid(format!("zero denominator in `{t}`")));
            }
            return Ok(Scalar::from_rational(BigRational::new(num, den), mode));
        }
        if let Ok(i) = BigInt::from_str(t) {
            return Ok(Scalar::from_rational(BigRational::from(i), mode));
        }
        if t.contains('.') {
            match mode {
                ScalarMode::Float { .. } => {
                    let x: f64 = t
                        .parse()
                        .map_err(|_| Error::Invalid(format!("bad number `{t}`")))?;
                    return Ok(Scalar::Float(x));
                }
                ScalarMode::Rational => {
                    return Err(Error::Invalid(format!(
                        "decimal literal `{t}` requires float mode"
                    )))
                }
            }
        }
        Err(Error::Invalid(format!("bad number `{t}`")))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn rational_is(&self, num: i64, den: i64) -> bool {
        match self {
            Scalar::Rational(r) => *r == BigRational::new(BigInt::from(num), BigInt::from(den)),
            Scalar::Float(x) => *x == num as f64 / den as f64,
        }
    }

    pub fn signum_positive(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_positive(),
            Scalar::Float(x) => *x > 0.0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_report_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_rationals() {
        let s = Scalar::parse("-5/10", ScalarMode::Rational).unwrap();
        assert_eq!(s.to_report_string(), "-1/2");
        let s = Scalar::parse("7", ScalarMode::Rational).unwrap();
        assert_eq!(s.to_report_string(), "7");
        assert!(Scalar::parse("1.5", ScalarMode::Rational).is_err());
        let s = Scalar::parse("1.5", ScalarMode::float()).unwrap();
        assert_eq!(s, Scalar::Float(1.5));
    }

    #[test]
    fn arithmetic_is_exact_in_rational_mode() {
        let a = Scalar::from_ratio(1, 3, ScalarMode::Rational);
        let b = Scalar::from_ratio(1, 6, ScalarMode::Rational);
        assert!(a.add(&b).rational_is(1, 2));
        assert!(a.mul(&b).rational_is(1, 18));
        assert!(a.sub(&b).rational_is(1, 6));
        assert!(a.recip().unwrap().rational_is(3, 1));
    }
}
