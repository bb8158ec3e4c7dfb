//! Rational points of the circle group `T = R/Z`.
//!
//! Every point and every character value produced by the constructions in this
//! crate is a rational number mod 1, so the circle is modelled as `Q/Z` with
//! exact arithmetic. Denominators are kept in `u64`; intermediate products use
//! `u128`, and an operation whose reduced denominator would not fit panics the
//! same way integer overflow does.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A point of `Q/Z` in canonical form: `gcd(num, den) = 1` and `0 <= num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitRational {
    num: u64,
    den: u64,
}

#[allow(clippy::should_implement_trait)]
impl UnitRational {
    pub const ZERO: UnitRational = UnitRational { num: 0, den: 1 };

    /// Builds the class of `num/den` mod 1 for any signed numerator.
    pub fn new(num: i128, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let num = num.rem_euclid(den as i128) as u64;
        Self::reduce(num as u128, den as u128)
    }

    /// Class of `num/den` mod 1 with an arbitrary precision numerator.
    pub fn from_big(num: &BigInt, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let r = num.mod_floor(&BigInt::from(den));
        Self::reduce(r.to_u128().expect("residue below denominator"), den as u128)
    }

    fn reduce(num: u128, den: u128) -> Self {
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        let num = num % den;
        UnitRational {
            num: u64::try_from(num).expect("circle numerator overflow"),
            den: u64::try_from(den).expect("circle denominator overflow"),
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Order of the point in `Q/Z`, which is its reduced denominator.
    pub fn order(&self) -> u64 {
        self.den
    }

    /// Representative in `(-1/2, 1/2]` as `(numerator, den)`.
    pub fn signed_repr(&self) -> (i128, u64) {
        if 2 * (self.num as u128) > self.den as u128 {
            (self.num as i128 - self.den as i128, self.den)
        } else {
            (self.num as i128, self.den)
        }
    }

    /// Membership in the closed arc `phi([-1/4, 1/4])`.
    pub fn in_tplus(&self) -> bool {
        let (n, d) = self.signed_repr();
        4 * n.unsigned_abs() <= d as u128
    }

    pub fn add(self, other: Self) -> Self {
        let (a, b) = (self.num as u128, self.den as u128);
        let (c, d) = (other.num as u128, other.den as u128);
        let l = b.lcm(&d);
        Self::reduce((a * (l / b) + c * (l / d)) % l, l)
    }

    pub fn neg(self) -> Self {
        if self.num == 0 {
            self
        } else {
            UnitRational {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }

    pub fn sub(self, other: Self) -> Self {
        self.add(other.neg())
    }

    pub fn scale(self, m: i64) -> Self {
        let den = self.den as i128;
        let k = (m as i128).rem_euclid(den);
        Self::reduce(((k * self.num as i128) % den) as u128, self.den as u128)
    }

    pub fn scale_big(self, m: &BigInt) -> Self {
        let k = m.mod_floor(&BigInt::from(self.den)).to_u64().unwrap();
        self.scale_u64(k)
    }

    fn scale_u64(self, k: u64) -> Self {
        let den = self.den as u128;
        Self::reduce((k as u128 % den) * self.num as u128 % den, den)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }
}

/// The canonical homomorphism `R -> T`, restricted to rationals.
pub fn phi(r: &BigRational) -> UnitRational {
    let den = r
        .denom()
        .to_u64()
        .expect("denominator does not fit the circle representation");
    UnitRational::from_big(r.numer(), den)
}

pub fn circle_add(x: UnitRational, y: UnitRational) -> UnitRational {
    x.add(y)
}

pub fn circle_neg(x: UnitRational) -> UnitRational {
    x.neg()
}

pub fn circle_scale(m: i64, x: UnitRational) -> UnitRational {
    x.scale(m)
}

pub fn in_tplus(x: UnitRational) -> bool {
    x.in_tplus()
}

pub fn element_order(x: UnitRational) -> u64 {
    x.order()
}

impl Default for UnitRational {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Display for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Parses `"a/b"` (any integer `a`, positive `b`) or a bare integer, reducing mod 1.
impl FromStr for UnitRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let r = parse_rational(s)?;
        let den = r
            .denom()
            .to_u64()
            .ok_or_else(|| Error::Parse(format!("denominator too large in {s:?}")))?;
        Ok(UnitRational::from_big(r.numer(), den))
    }
}

/// Parses `"a/b"` or `"a"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Formats a rational as `"a/b"`, or `"a"` when integral.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Serialize for UnitRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for UnitRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
