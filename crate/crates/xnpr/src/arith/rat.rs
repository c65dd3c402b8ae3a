//! Arbitrary-precision exact rationals.
//!
//! [`Rat`] wraps [`num_rational::BigRational`] and adds the textual form used
//! across the crate's interfaces: `"num/den"` in lowest terms with a positive
//! denominator, or just `"num"` when the denominator is 1. Serde serializes
//! through that string form so JSON output is byte-deterministic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

/// An exact rational number, always reduced, denominator always positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    /// Builds `num/den`, reducing and normalizing the sign.
    ///
    /// Panics if `den = 0`; fallible callers should check beforehand.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "rational with zero denominator");
        Rat(BigRational::new(num.into(), den))
    }

    /// The integer `n` as a rational.
    pub fn int(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    /// 0.
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    /// 1.
    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    /// Numerator (sign-carrying).
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Denominator (always positive).
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// True iff the value is 0.
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// True iff the value is 1.
    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// True iff the value is < 0.
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// True iff the value is > 0.
    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// True iff the denominator is 1.
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as a big integer, if it is one.
    pub fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    /// The value as an `i64`, if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        self.to_bigint().and_then(|n| n.to_i64())
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// `self^e` for any integer exponent (negative allowed for nonzero self).
    ///
    /// Panics when raising 0 to a negative power.
    pub fn pow(&self, e: i32) -> Self {
        if e < 0 {
            assert!(!self.is_zero(), "negative power of zero");
        }
        Rat(self.0.pow(e))
    }

    /// Exact reciprocal; errors on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    /// Exact division; errors on zero divisor.
    pub fn checked_div(&self, rhs: &Rat) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(&self.0 / &rhs.0))
    }

    /// `p^e` as a rational for possibly negative `e`.
    pub fn prime_power(p: u64, e: i64) -> Self {
        let base = Rat::int(p);
        base.pow(i32::try_from(e).expect("exponent fits i32"))
    }

    /// Floor as a rational (largest integer ≤ self).
    pub fn floor(&self) -> Self {
        Rat(self.0.floor())
    }

    /// Fractional part ⟨x⟩ = x − ⌊x⌋, always in [0, 1).
    pub fn fract(&self) -> Self {
        self - &self.floor()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rat({self})")
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
        };
        match s.split_once('/') {
            None => Ok(Rat::int(parse_int(s)?)),
            Some((num, den)) => {
                let den = parse_int(den)?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Rat::new(parse_int(num)?, den))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

impl From<u64> for Rat {
    fn from(n: u64) -> Self {
        Rat::int(BigInt::from(n))
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl<'b> Div<&'b Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &'b Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl<'a> Div<&'a Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: &'a Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / &rhs.0)
    }
}

impl Div<Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl MulAssign for Rat {
    fn mul_assign(&mut self, rhs: Rat) {
        self.0 *= rhs.0;
    }
}

impl DivAssign<&Rat> for Rat {
    fn div_assign(&mut self, rhs: &Rat) {
        assert!(!rhs.is_zero(), "division by zero");
        self.0 /= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_reduces_and_normalizes_sign() {
        assert_eq!(Rat::new(4, 6), Rat::new(2, 3));
        assert_eq!(Rat::new(1, -2), Rat::new(-1, 2));
        assert_eq!(Rat::new(-3, -9), Rat::new(1, 3));
        assert!(Rat::new(1, -2).denom() > &BigInt::from(0));
    }

    #[test]
    fn display_matches_interface_form() {
        assert_eq!(Rat::new(-2, 3).to_string(), "-2/3");
        assert_eq!(Rat::new(10, 5).to_string(), "2");
        assert_eq!(Rat::zero().to_string(), "0");
        assert_eq!(Rat::new(7, 1).to_string(), "7");
    }

    #[test]
    fn from_str_round_trips() {
        for s in ["-2/3", "2", "0", "7/12", "-1", "355/113"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!(" 4/6 ".parse::<Rat>().unwrap(), Rat::new(2, 3));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("a/b".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
    }

    #[test]
    fn serde_uses_strings() {
        let r = Rat::new(-5, 8);
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"-5/8\"");
        let back: Rat = serde_json::from_str("\"-5/8\"").unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn arithmetic() {
        let a = Rat::new(1, 2);
        let b = Rat::new(1, 3);
        assert_eq!(&a + &b, Rat::new(5, 6));
        assert_eq!(&a - &b, Rat::new(1, 6));
        assert_eq!(&a * &b, Rat::new(1, 6));
        assert_eq!(&a / &b, Rat::new(3, 2));
        assert_eq!(-&a, Rat::new(-1, 2));
        assert_eq!(a.pow(-2), Rat::int(4));
        assert_eq!(Rat::prime_power(3, -2), Rat::new(1, 9));
        assert_eq!(Rat::prime_power(2, 5), Rat::int(32));
        assert_eq!(b.recip().unwrap(), Rat::int(3));
        assert!(Rat::zero().recip().is_err());
    }

    #[test]
    fn sums_and_products() {
        let v = vec![Rat::new(1, 2), Rat::new(1, 3), Rat::new(1, 6)];
        let s: Rat = v.iter().sum();
        assert_eq!(s, Rat::one());
        let p: Rat = v.into_iter().product();
        assert_eq!(p, Rat::new(1, 36));
    }
}
