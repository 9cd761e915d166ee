//! Exact scalars, half-integer mode indices and the rank-one dual lattice.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Rational coefficient. `BigRational` keeps itself in lowest terms with a
/// positive denominator, and zero is `0/1`.
pub type ExactScalar = BigRational;

pub fn q(n: i64, d: i64) -> ExactScalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `p` or `p/q`.
pub fn fmt_scalar(x: &ExactScalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_scalar(s: &str) -> Option<ExactScalar> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() || d.is_negative() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Element of ½ℤ stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub const fn int(n: i64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    pub const fn doubled(self) -> i64 {
        self.doubled
    }

    pub const fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    /// The integer value, if there is one.
    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.doubled / 2)
    }

    /// Largest integer not exceeding the value.
    pub fn floor(self) -> i64 {
        num_integer::Integer::div_floor(&self.doubled, &2)
    }

    pub fn value(self) -> ExactScalar {
        q(self.doubled, 2)
    }

    /// Exact conversion from a rational lying in ½ℤ.
    pub fn from_scalar(x: &ExactScalar) -> Option<Self> {
        let d = x * qi(2);
        if d.is_integer() {
            d.to_integer().to_i64().map(HalfInt::from_doubled)
        } else {
            None
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        HalfInt::from_scalar(&parse_scalar(s)?)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled + rhs.doubled)
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i64) -> HalfInt {
        HalfInt::from_doubled(self.doubled + 2 * rhs)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled - rhs.doubled)
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: i64) -> HalfInt {
        HalfInt::from_doubled(self.doubled - 2 * rhs)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_doubled(-self.doubled)
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::int(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// `b·ϖ` in the dual lattice ℤϖ, with α = 2ϖ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeElement(pub i64);

impl LatticeElement {
    pub const VARPI: LatticeElement = LatticeElement(1);
    pub const ALPHA: LatticeElement = LatticeElement(2);
}

/// (bϖ, cϖ) = bc/2.
pub fn pairing(beta: LatticeElement, gamma: LatticeElement) -> ExactScalar {
    q(beta.0 * gamma.0, 2)
}

/// `(-1)^e`.
pub(crate) fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
