//! Nonnegative exact rationals extended with `+∞`.
//!
//! Addition treats `∞` as absorbing and multiplication follows the
//! convention `0 · ∞ = 0`. Values are always canonical, so structural
//! equality is numeric equality. The textual form is `p/q`, `p` or `inf`.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number. Values are kept in lowest terms by `num-rational`.
pub type Rational = BigRational;

/// `n / d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient as a rational.
pub fn binomial_q(n: u64, k: u64) -> Rational {
    Rational::from_integer(BigInt::from(binomial(n, k)))
}

/// Parses a nonnegative rational in the wire format `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadNumber(s.to_string());
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if !digits(num) || !digits(den) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Value of a harmonic function: a finite nonnegative rational or `+∞`.
///
/// The derived order puts every finite value below [`ExtValue::Infinite`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtValue {
    Finite(Rational),
    Infinite,
}

impl ExtValue {
    pub fn zero() -> Self {
        ExtValue::Finite(Rational::zero())
    }

    pub fn one() -> Self {
        ExtValue::Finite(Rational::one())
    }

    /// Wraps a rational, rejecting negative values.
    pub fn finite(r: Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::BadNumber(r.to_string()));
        }
        Ok(ExtValue::Finite(r))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtValue::Finite(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, ExtValue::Finite(r) if r.is_one())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtValue::Infinite)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    /// `0 < self < ∞`.
    pub fn is_finite_positive(&self) -> bool {
        matches!(self, ExtValue::Finite(r) if r.is_positive())
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtValue::Finite(r) => Some(r),
            ExtValue::Infinite => None,
        }
    }

    /// Difference of two finite values; errors on `∞` or a negative result.
    pub fn checked_sub(&self, rhs: &ExtValue) -> Result<ExtValue> {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => {
                if a < b {
                    Err(Error::NegativeDifference)
                } else {
                    Ok(ExtValue::Finite(a - b))
                }
            }
            _ => Err(Error::InfiniteSubtraction),
        }
    }

    /// Multiplies by a nonnegative rational scalar (`0 · ∞ = 0`).
    pub fn scale(&self, c: &Rational) -> ExtValue {
        debug_assert!(!c.is_negative());
        match self {
            ExtValue::Finite(r) => ExtValue::Finite(r * c),
            ExtValue::Infinite if c.is_zero() => ExtValue::zero(),
            ExtValue::Infinite => ExtValue::Infinite,
        }
    }

    /// Divides by a positive rational. `∞ / c = ∞`.
    pub fn div_positive(&self, c: &Rational) -> ExtValue {
        debug_assert!(c.is_positive());
        match self {
            ExtValue::Finite(r) => ExtValue::Finite(r / c),
            ExtValue::Infinite => ExtValue::Infinite,
        }
    }
}

impl From<Rational> for ExtValue {
    /// Panics on negative input; use [`ExtValue::finite`] for untrusted values.
    fn from(r: Rational) -> Self {
        assert!(!r.is_negative(), "negative extended value {r}");
        ExtValue::Finite(r)
    }
}

impl Add for &ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: &ExtValue) -> ExtValue {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::Infinite,
        }
    }
}

impl Add for ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: ExtValue) -> ExtValue {
        &self + &rhs
    }
}

impl Mul for &ExtValue {
    type Output = ExtValue;

    fn mul(self, rhs: &ExtValue) -> ExtValue {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a * b),
            (ExtValue::Finite(a), ExtValue::Infinite) | (ExtValue::Infinite, ExtValue::Finite(a)) => {
                if a.is_zero() {
                    ExtValue::zero()
                } else {
                    ExtValue::Infinite
                }
            }
            (ExtValue::Infinite, ExtValue::Infinite) => ExtValue::Infinite,
        }
    }
}

impl Mul for ExtValue {
    type Output = ExtValue;

    fn mul(self, rhs: ExtValue) -> ExtValue {
        &self * &rhs
    }
}

impl Sum for ExtValue {
    fn sum<I: Iterator<Item = ExtValue>>(iter: I) -> Self {
        iter.fold(ExtValue::zero(), |acc, x| acc + x)
    }
}

impl Product for ExtValue {
    fn product<I: Iterator<Item = ExtValue>>(iter: I) -> Self {
        iter.fold(ExtValue::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(r) => write!(f, "{r}"),
            ExtValue::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            Ok(ExtValue::Infinite)
        } else {
            parse_rational(s).map(ExtValue::Finite)
        }
    }
}

impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing a [`Rational`] in the wire format.
pub mod rational_str {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
