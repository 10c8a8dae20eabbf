//! Exact rational distance values.
//!
//! Every distance in the crate is held as a reduced fraction so that strict
//! comparisons such as `d < ceil(d) + 1` never depend on floating point
//! rounding.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// A fraction in lowest terms with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(Ratio<i128>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid number {text:?}: {reason}")]
pub struct ParseRationalError {
    pub text: String,
    pub reason: &'static str,
}

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Builds `numerator / denominator`, reducing to lowest terms.
    ///
    /// Panics if `denominator` is zero.
    pub fn new(numerator: i128, denominator: i128) -> Self {
        Rational(Ratio::new(numerator, denominator))
    }

    pub fn from_integer(n: i128) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numerator(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Smallest integer `n` with `n >= self`.
    pub fn ceil(&self) -> Self {
        Rational(self.0.ceil())
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<i128> {
        self.is_integer().then(|| self.numerator())
    }

    /// The value as an unsigned graph distance, if it is a non-negative
    /// integer that fits.
    pub fn to_u32(&self) -> Option<u32> {
        self.to_integer().and_then(|n| n.to_u32())
    }

    /// True when the fraction has a terminating decimal expansion.
    fn is_finite_decimal(&self) -> bool {
        let mut d = self.denominator();
        while d % 2 == 0 {
            d /= 2;
        }
        while d % 5 == 0 {
            d /= 5;
        }
        d == 1
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational::from_integer(n as i128)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n as i128)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

/// Accepts `"7"`, `"-3"`, `"2.30"`, `".5"` and `"7/2"`.
impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseRationalError {
            text: s.to_string(),
            reason,
        };
        let text = s.trim();
        if let Some((num, den)) = text.split_once('/') {
            let num: i128 = num.trim().parse().map_err(|_| err("bad numerator"))?;
            let den: i128 = den.trim().parse().map_err(|_| err("bad denominator"))?;
            if den == 0 {
                return Err(err("zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }

        let (negative, digits) = match text.as_bytes().first() {
            Some(b'-') => (true, &text[1..]),
            Some(b'+') => (false, &text[1..]),
            _ => (false, text),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err("no digits"));
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(err("expected an integer or finite decimal"));
        }
        // i128 holds 38 decimal digits; leave headroom for arithmetic.
        if int_part.len() + frac_part.len() > 30 {
            return Err(err("too many digits"));
        }
        let mut numerator: i128 = 0;
        for b in int_part.bytes().chain(frac_part.bytes()) {
            numerator = numerator * 10 + (b - b'0') as i128;
        }
        let denominator = 10i128.pow(frac_part.len() as u32);
        let value = Rational::new(numerator, denominator);
        Ok(if negative { -value } else { value })
    }
}

/// Integers print bare, terminating fractions print as decimals, anything
/// else prints as `p/q`. The output always parses back to the same value.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            return write!(f, "{}", self.numerator());
        }
        if !self.is_finite_decimal() {
            return write!(f, "{}/{}", self.numerator(), self.denominator());
        }
        let num = self.numerator();
        let den = self.denominator();
        // Scale to a power-of-ten denominator.
        let mut scale = 0u32;
        while 10i128.pow(scale) % den != 0 {
            scale += 1;
        }
        let scaled = num.abs() * (10i128.pow(scale) / den);
        let (int_part, frac_part) = scaled.div_rem(&10i128.pow(scale));
        let sign = if num < 0 { "-" } else { "" };
        write!(
            f,
            "{sign}{int_part}.{frac:0width$}",
            frac = frac_part,
            width = scale as usize
        )
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
