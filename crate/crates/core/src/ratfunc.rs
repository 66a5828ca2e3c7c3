//! Univariate rational functions of κ over the rationals.
//!
//! Closed-form corrections are products and sums of linear factors in κ.
//! Building them as rational functions lets removable singularities (0/0 at
//! isolated κ) be cancelled exactly, while genuine poles are still reported
//! together with the printed denominator factors that vanish.

use std::fmt;

use num::{One, Signed, Zero};

use crate::coupling::{int, Rational};
use crate::error::{Error, Result};

/// Dense polynomial in κ, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// a + bκ
    pub fn linear(a: i64, b: i64) -> Self {
        Poly::new(vec![int(a), int(b)])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial at −1.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        let z = Rational::zero();
        Poly::new(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&z) + other.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.0.iter().map(|a| a * c).collect())
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("zero polynomial has no leading coefficient")
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.0.clone();
        let dd = divisor.0.len() - 1;
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        let lead = divisor.lead();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / lead;
            if !c.is_zero() {
                for (i, d) in divisor.0.iter().enumerate() {
                    rem[k + i] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.lead().clone();
        Poly(self.0.iter().map(|c| c / &l).collect())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{sign}")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "κ")?,
                (1, false) => write!(f, "{a}κ")?,
                (_, true) => write!(f, "κ^{i}")?,
                (_, false) => write!(f, "{a}κ^{i}")?,
            }
        }
        Ok(())
    }
}

/// num/den with the printed denominator factors kept for diagnostics.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
    factors: Vec<(String, Poly)>,
}

impl RatFunc {
    pub fn constant(c: Rational) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::constant(Rational::one()),
            factors: Vec::new(),
        }
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(int(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::constant(Rational::one()),
            factors: Vec::new(),
        }
    }

    /// The numerator factor a + bκ.
    pub fn factor(a: i64, b: i64) -> Self {
        Self::from_poly(Poly::linear(a, b))
    }

    /// 1/(a + bκ), remembering the factor's printed form.
    pub fn inverse_factor(a: i64, b: i64) -> Self {
        let p = Poly::linear(a, b);
        Self::inverse_poly(format!("({p})"), p)
    }

    /// 1/p with an explicit label, for factors that are not linear.
    pub fn inverse_poly(label: String, p: Poly) -> Self {
        RatFunc {
            num: Poly::constant(Rational::one()),
            den: p.clone(),
            factors: vec![(label, p)],
        }
    }

    /// Π num / Π den over linear factors (a, b) ↦ a + bκ.
    pub fn ratio(num: &[(i64, i64)], den: &[(i64, i64)]) -> Self {
        let mut r = Self::integer(1);
        for &(a, b) in num {
            r = r.mul(&Self::factor(a, b));
        }
        for &(a, b) in den {
            r = r.mul(&Self::inverse_factor(a, b));
        }
        r
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn merged_factors(&self, other: &RatFunc) -> Vec<(String, Poly)> {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        f
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
            factors: self.merged_factors(other),
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc {
                num: self.num.add(&other.num),
                den: self.den.clone(),
                factors: self.merged_factors(other),
            };
        }
        RatFunc {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
            factors: self.merged_factors(other),
        }
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
            factors: self.factors.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
            factors: self.factors.clone(),
        }
    }

    /// Cancels the common factor of numerator and denominator.
    pub fn reduced(&self) -> RatFunc {
        if self.num.is_zero() {
            return RatFunc {
                num: Poly::zero(),
                den: Poly::constant(Rational::one()),
                factors: self.factors.clone(),
            };
        }
        let g = self.num.gcd(&self.den);
        let num = self.num.div_rem(&g).0;
        let den = self.den.div_rem(&g).0;
        // normalize the denominator to be monic
        let l = den.lead().clone();
        RatFunc {
            num: num.scale(&(Rational::one() / &l)),
            den: den.monic(),
            factors: self.factors.clone(),
        }
    }

    /// Rational-function identity, by cross-multiplication.
    pub fn identical(&self, other: &RatFunc) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    fn pole(&self, what: &str, kappa: &Rational) -> Error {
        Error::Pole {
            what: what.to_string(),
            kappa: kappa.to_string(),
            factors: self
                .factors
                .iter()
                .filter(|(_, p)| p.eval(kappa).is_zero())
                .map(|(label, _)| label.clone())
                .collect(),
        }
    }

    /// Value at κ; removable singularities evaluate to their limit.
    pub fn eval(&self, kappa: &Rational, what: &str) -> Result<Rational> {
        let d = self.den.eval(kappa);
        if !d.is_zero() {
            return Ok(self.num.eval(kappa) / d);
        }
        let r = self.reduced();
        let d = r.den.eval(kappa);
        if d.is_zero() {
            return Err(self.pole(what, kappa));
        }
        Ok(r.num.eval(kappa) / d)
    }

    /// Value at κ with no cancellation: any vanishing printed denominator
    /// factor is a pole, unless the numerator is the zero polynomial.
    pub fn eval_strict(&self, kappa: &Rational, what: &str) -> Result<Rational> {
        if self.num.is_zero() {
            return Ok(Rational::zero());
        }
        if self.factors.iter().any(|(_, p)| p.eval(kappa).is_zero()) || self.den.eval(kappa).is_zero()
        {
            return Err(self.pole(what, kappa));
        }
        Ok(self.num.eval(kappa) / self.den.eval(kappa))
    }
}
