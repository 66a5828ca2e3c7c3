//! Exact rationals and the coupling constant.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p/q"` or a bare integer. Decimal notation is rejected so that no
/// floating value ever leaks into exact arithmetic.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("`{s}` is not a rational of the form p/q"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let valid = |t: &str, signed: bool| {
        let digits = if signed {
            t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t)
        } else {
            t
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(p, true) || !valid(q, false) {
        return Err(bad());
    }
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::InvalidArgument(format!("`{s}` has a zero denominator")));
    }
    Ok(Rational::new(p, q))
}

/// The coupling constant κ of the pair potential κ(κ−1)/sin².
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coupling(Rational);

impl Coupling {
    pub fn new(value: Rational) -> Self {
        Coupling(value)
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Coupling(rat(numer, denom))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// κ(κ−1), the strength multiplying every interaction term.
    pub fn interaction(&self) -> Rational {
        &self.0 * (&self.0 - Rational::one())
    }

    /// κ = 0 and κ = 1 are the non-interacting points.
    pub fn is_free(&self) -> bool {
        self.interaction().is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.0)
    }
}

impl FromStr for Coupling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Coupling)
    }
}

impl fmt::Display for Coupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
