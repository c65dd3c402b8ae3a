//! Truncated q-expansions with exact rational coefficients.
//!
//! [`QSeries`] is the public result type: a series in the variable q^{1/D}
//! starting at a rational leading exponent. The internal [`Series`] type is
//! a plain truncated power series over the integers with unit constant
//! term, enough to multiply out products of factors (1 − q^j)^{±1}.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::Rat;
use crate::error::{Error, Result};

/// A truncated q-expansion: coefficients for the exponents
/// E, E + 1/D, E + 2/D, …, E + (L−1)/D where E is the leading exponent,
/// D the exponent denominator and L the truncation length.
///
/// The first coefficient is nonzero unless the series is identically zero
/// through the truncation window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QSeries {
    /// Exponent denominator D: the series lives in powers of q^{1/D}.
    #[serde(rename = "denominatorD")]
    pub denominator_d: u64,
    /// Leading exponent E; its denominator divides D.
    #[serde(rename = "leadingExponent")]
    pub leading_exponent: Rat,
    /// Coefficients at E, E + 1/D, …, E + (L−1)/D.
    pub coeffs: Vec<Rat>,
    /// Number of stored coefficients L.
    #[serde(rename = "truncationLength")]
    pub truncation_length: usize,
}

impl QSeries {
    /// Builds a series, checking the length bookkeeping.
    pub fn new(denominator_d: u64, leading_exponent: Rat, coeffs: Vec<Rat>) -> Result<Self> {
        if denominator_d == 0 {
            return Err(Error::InvalidParams("exponent denominator must be ≥ 1".into()));
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidParams("truncation must be ≥ 1".into()));
        }
        let truncation_length = coeffs.len();
        Ok(QSeries {
            denominator_d,
            leading_exponent,
            coeffs,
            truncation_length,
        })
    }

    /// The exponent of the i-th stored coefficient: E + i/D.
    pub fn exponent_at(&self, i: usize) -> Rat {
        &self.leading_exponent + &(&Rat::int(i as i64) / &Rat::int(self.denominator_d as i64))
    }

    /// The coefficient of the lowest-exponent nonzero term, with its
    /// exponent, unless the truncated series is zero.
    pub fn leading_term(&self) -> Option<(Rat, &Rat)> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| (self.exponent_at(i), &self.coeffs[i]))
    }
}

impl std::fmt::Display for QSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut wrote_any = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exp = self.exponent_at(i);
            let mag = c.abs();
            if !wrote_any {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_part = if mag.is_one() && !exp.is_zero() {
                String::new()
            } else {
                format!("{mag}")
            };
            let q_part = if exp.is_zero() {
                String::new()
            } else if exp.is_one() {
                "q".to_string()
            } else if exp.is_integer() && exp.is_positive() {
                format!("q^{exp}")
            } else {
                format!("q^({exp})")
            };
            match (coeff_part.is_empty(), q_part.is_empty()) {
                (true, _) => write!(f, "{q_part}")?,
                (false, true) => write!(f, "{coeff_part}")?,
                (false, false) => write!(f, "{coeff_part}*{q_part}")?,
            }
            wrote_any = true;
        }
        if !wrote_any {
            write!(f, "0")?;
        }
        let tail = self.exponent_at(self.truncation_length);
        if tail.is_integer() && tail.is_positive() {
            write!(f, " + O(q^{tail})")
        } else {
            write!(f, " + O(q^({tail}))")
        }
    }
}

/// Truncated power series over Z: `c[i]` is the coefficient of q^i,
/// for 0 ≤ i < len. All series handled here have constant term ±1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Series {
    c: Vec<BigInt>,
}

impl Series {
    pub(crate) fn one(len: usize) -> Self {
        assert!(len > 0, "truncation must be positive");
        let mut c = vec![BigInt::zero(); len];
        c[0] = BigInt::one();
        Series { c }
    }

    /// 1 − q^j, truncated.
    pub(crate) fn one_minus_q(j: usize, len: usize) -> Self {
        let mut s = Series::one(len);
        if j < len {
            s.c[j] = -BigInt::one();
        }
        s
    }

    pub(crate) fn len(&self) -> usize {
        self.c.len()
    }

    pub(crate) fn coeff(&self, i: usize) -> &BigInt {
        &self.c[i]
    }

    pub(crate) fn mul(&self, other: &Series) -> Series {
        let len = self.len().min(other.len());
        let mut c = vec![BigInt::zero(); len];
        for (i, a) in self.c.iter().take(len).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().take(len - i).enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Series { c }
    }

    /// Multiplicative inverse; the constant term must be ±1 so the result
    /// stays over Z (always the case for products of 1 − q^j).
    pub(crate) fn inv(&self) -> Result<Series> {
        let c0 = &self.c[0];
        if !c0.is_one() && *c0 != -BigInt::one() {
            return Err(Error::InvalidParams(
                "series is not invertible over Z: constant term is not ±1".into(),
            ));
        }
        let len = self.len();
        let mut b = vec![BigInt::zero(); len];
        b[0] = c0.clone(); // 1/(±1) = ±1
        for m in 1..len {
            let mut acc = BigInt::zero();
            for i in 1..=m {
                if !self.c[i].is_zero() {
                    acc += &self.c[i] * &b[m - i];
                }
            }
            // b_m = −acc / c0, exact since c0 = ±1.
            b[m] = if c0.is_one() { -acc } else { acc };
        }
        Ok(Series { c: b })
    }

    /// Integer power, negative exponents through [`Series::inv`].
    pub(crate) fn powi(&self, e: i64) -> Result<Series> {
        if e == 0 {
            return Ok(Series::one(self.len()));
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut result = Series::one(self.len());
        let mut sq = base;
        let mut rem = e.unsigned_abs();
        while rem > 0 {
            if rem & 1 == 1 {
                result = result.mul(&sq);
            }
            rem >>= 1;
            if rem > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series) -> Vec<i64> {
        s.c.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn series_arithmetic() {
        let a = Series::one_minus_q(1, 6);
        // 1/(1−q) = 1 + q + q² + …
        assert_eq!(ints(&a.inv().unwrap()), vec![1, 1, 1, 1, 1, 1]);
        // (1−q)^{−2} = 1 + 2q + 3q² + …
        assert_eq!(ints(&a.powi(-2).unwrap()), vec![1, 2, 3, 4, 5, 6]);
        // (1−q)·(1+q+q²+…) = 1.
        assert_eq!(ints(&a.mul(&a.inv().unwrap())), vec![1, 0, 0, 0, 0, 0]);
        // (1−q³)² = 1 − 2q³ + q⁶ (truncated at 6).
        let b = Series::one_minus_q(3, 6).powi(2).unwrap();
        assert_eq!(ints(&b), vec![1, 0, 0, -2, 0, 0]);
        // Exponent beyond truncation is invisible.
        assert_eq!(ints(&Series::one_minus_q(9, 4)), vec![1, 0, 0, 0]);
        // powi round trip.
        let c = Series::one_minus_q(2, 8).mul(&Series::one_minus_q(3, 8));
        assert_eq!(
            ints(&c.powi(3).unwrap().mul(&c.powi(-3).unwrap())),
            vec![1, 0, 0, 0, 0, 0, 0, 0]
        );
        // Non-unit constant term is rejected.
        let mut bad = Series::one(4);
        bad.c[0] = BigInt::from(2);
        assert!(bad.inv().is_err());
    }

    #[test]
    fn qseries_accessors_and_display() {
        let s = QSeries::new(
            1,
            Rat::int(2),
            vec![Rat::one(), Rat::zero(), Rat::int(-2), Rat::int(4)],
        )
        .unwrap();
        assert_eq!(s.truncation_length, 4);
        assert_eq!(s.exponent_at(2), Rat::int(4));
        let (exp, coeff) = s.leading_term().unwrap();
        assert_eq!(exp, Rat::int(2));
        assert_eq!(*coeff, Rat::one());
        assert_eq!(s.to_string(), "q^2 - 2*q^4 + 4*q^5 + O(q^6)");

        let t = QSeries::new(2, Rat::new(-1, 2), vec![Rat::int(3), Rat::one()]).unwrap();
        assert_eq!(t.to_string(), "3*q^(-1/2) + 1 + O(q^(1/2))");
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"denominatorD":2,"leadingExponent":"-1/2","coeffs":["3","1"],"truncationLength":2}"#
        );

        let z = QSeries::new(1, Rat::zero(), vec![Rat::zero(), Rat::zero()]).unwrap();
        assert_eq!(z.leading_term(), None);
        assert_eq!(z.to_string(), "0 + O(q^2)");
        assert!(QSeries::new(0, Rat::zero(), vec![Rat::one()]).is_err());
        assert!(QSeries::new(1, Rat::zero(), vec![]).is_err());
    }
}
