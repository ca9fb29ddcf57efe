//! Exact decimal numbers.
//!
//! A [`Number`] is `coefficient × 10^(-scale)` kept in normal form: the
//! coefficient is never divisible by ten unless it is zero, and zero always
//! has scale zero. Normal form makes structural equality numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Number {
    coeff: BigInt,
    scale: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed number literal `{0}`")]
pub struct ParseNumberError(pub String);

fn pow10(exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(10u8), exp as usize)
}

fn decimal_len(n: &BigInt) -> u64 {
    if n.is_zero() {
        1
    } else {
        n.magnitude().to_str_radix(10).len() as u64
    }
}

impl Number {
    pub fn zero() -> Self {
        Number { coeff: BigInt::zero(), scale: 0 }
    }

    pub fn from_parts(coeff: BigInt, scale: i64) -> Self {
        let mut n = Number { coeff, scale };
        n.normalize();
        n
    }

    fn normalize(&mut self) {
        if self.coeff.is_zero() {
            self.scale = 0;
            return;
        }
        let ten = BigInt::from(10u8);
        loop {
            let (q, r) = self.coeff.div_rem(&ten);
            if !r.is_zero() {
                break;
            }
            self.coeff = q;
            self.scale -= 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.coeff.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.scale <= 0
    }

    pub fn abs(&self) -> Self {
        Number { coeff: self.coeff.abs(), scale: self.scale }
    }

    /// Converts an integral number to `i64`, if it fits.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        let shift = u64::try_from(-self.scale).ok()?;
        if shift > 40 {
            return None;
        }
        (&self.coeff * pow10(shift)).to_i64()
    }

    /// Number of decimal digits in the plain (non-exponent) representation,
    /// ignoring the sign, leading integer zeros and the decimal point.
    /// `10^30` has 31 digits, `0.001` has 3.
    pub fn digit_count(&self) -> u64 {
        let len = decimal_len(&self.coeff);
        if self.coeff.is_zero() {
            1
        } else if self.scale >= 0 {
            len.max(self.scale as u64)
        } else {
            len + self.scale.unsigned_abs()
        }
    }

    fn aligned(&self, other: &Number) -> (BigInt, BigInt, i64) {
        let scale = self.scale.max(other.scale);
        let a = &self.coeff * pow10((scale - self.scale) as u64);
        let b = &other.coeff * pow10((scale - other.scale) as u64);
        (a, b, scale)
    }

    pub fn add(&self, other: &Number) -> Number {
        let (a, b, scale) = self.aligned(other);
        Number::from_parts(a + b, scale)
    }

    pub fn sub(&self, other: &Number) -> Number {
        let (a, b, scale) = self.aligned(other);
        Number::from_parts(a - b, scale)
    }

    pub fn mul(&self, other: &Number) -> Number {
        Number::from_parts(&self.coeff * &other.coeff, self.scale + other.scale)
    }

    /// Quotient rounded half-to-even so that it has at most `max_digits`
    /// digits. Returns `None` for a zero divisor or when the integer part
    /// alone needs more than `max_digits` digits.
    pub fn div(&self, other: &Number, max_digits: u64) -> Option<Number> {
        if other.is_zero() {
            return None;
        }
        // self / other = (ca / cb) * 10^(sb - sa)
        let shift = other.scale - self.scale;
        let (num, den) = scaled_fraction(self.coeff.abs(), other.coeff.abs(), shift);
        let int_part = &num / &den;
        let int_digits = if int_part.is_zero() { 0 } else { decimal_len(&int_part) };
        if int_digits > max_digits {
            return None;
        }
        let frac_digits = (max_digits - int_digits) as i64;
        let (num, den) = scaled_fraction(self.coeff.abs(), other.coeff.abs(), shift + frac_digits);
        let mut q = round_half_even(&num, &den);
        if self.is_negative() != other.is_negative() {
            q = -q;
        }
        Some(Number::from_parts(q, frac_digits))
    }
}

/// `(a * 10^shift, b)` or `(a, b * 10^-shift)` as a numerator/denominator pair.
fn scaled_fraction(a: BigInt, b: BigInt, shift: i64) -> (BigInt, BigInt) {
    if shift >= 0 {
        (a * pow10(shift as u64), b)
    } else {
        (a, b * pow10(shift.unsigned_abs()))
    }
}

fn round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    let twice = &r * 2u8;
    match twice.cmp(den) {
        Ordering::Less => q,
        Ordering::Greater => q + BigInt::one(),
        Ordering::Equal if q.is_odd() => q + BigInt::one(),
        Ordering::Equal => q,
    }
}

impl Ord for Number {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Number {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Number {
    fn from(v: i64) -> Self {
        Number::from_parts(BigInt::from(v), 0)
    }
}

impl FromStr for Number {
    type Err = ParseNumberError;

    /// Accepts `-?digits(.digits)?`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseNumberError(s.to_string());
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        let digits_ok = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
        if int.is_empty() || !digits_ok(int) || !digits_ok(frac) || (body.contains('.') && frac.is_empty()) {
            return Err(err());
        }
        let mut all = String::with_capacity(int.len() + frac.len());
        all.push_str(int);
        all.push_str(frac);
        let mut coeff = BigInt::parse_bytes(all.as_bytes(), 10).ok_or_else(err)?;
        if negative {
            coeff = -coeff;
        }
        Ok(Number::from_parts(coeff, frac.len() as i64))
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.sign() == Sign::Minus {
            f.write_str("-")?;
        }
        let digits = self.coeff.magnitude().to_str_radix(10);
        if self.scale <= 0 {
            f.write_str(&digits)?;
            for _ in 0..self.scale.unsigned_abs() {
                f.write_str("0")?;
            }
            return Ok(());
        }
        let scale = self.scale as usize;
        if digits.len() > scale {
            let (i, frac) = digits.split_at(digits.len() - scale);
            write!(f, "{i}.{frac}")
        } else {
            write!(f, "0.{}{}", "0".repeat(scale - digits.len()), digits)
        }
    }
}

impl fmt::Debug for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
