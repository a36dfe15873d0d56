//! Exact rational exponents.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// A rational exponent of `q` or `z`. Totally ordered.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub BigRational);

impl Exponent {
    pub fn new(num: i64, den: i64) -> Self {
        Exponent(BigRational::new(num.into(), den.into()))
    }

    pub fn int(n: i64) -> Self {
        Exponent(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Narrow to a machine rational; `None` if either part overflows `i64`.
    pub fn to_r64(&self) -> Option<Rational64> {
        Some(Rational64::new(self.0.numer().to_i64()?, self.0.denom().to_i64()?))
    }

    pub fn from_r64(r: Rational64) -> Self {
        Exponent::new(*r.numer(), *r.denom())
    }

    /// `self·den` as an integer, if exact and in range.
    pub fn scaled(&self, den: i64) -> Option<i64> {
        let v = &self.0 * BigRational::from_integer(den.into());
        if v.is_integer() {
            v.numer().to_i64()
        } else {
            None
        }
    }

    /// Smallest integer `≥ self`.
    pub fn ceil_i64(&self) -> i64 {
        self.0.ceil().numer().to_i64().expect("exponent out of range")
    }
}

impl fmt::Display for Exponent {
    /// `n` for integers, `n/d` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Exponent {
    type Err = String;
    /// Accepts `n` or `n/d`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| format!("bad exponent `{s}`"))?;
        let d: BigInt = d.parse().map_err(|_| format!("bad exponent `{s}`"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        Ok(Exponent(BigRational::new(n, d)))
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::int(n)
    }
}

impl From<Rational64> for Exponent {
    fn from(r: Rational64) -> Self {
        Exponent::from_r64(r)
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, o: Exponent) -> Exponent {
        Exponent(self.0 + o.0)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, o: Exponent) -> Exponent {
        Exponent(self.0 - o.0)
    }
}

impl Mul for Exponent {
    type Output = Exponent;
    fn mul(self, o: Exponent) -> Exponent {
        Exponent(self.0 * o.0)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

/// Least common multiple of two positive denominators.
pub(crate) fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}
