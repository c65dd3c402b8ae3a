//! Exact scalar arithmetic: rationals, p-adic valuations, cyclotomic rings,
//! and the closed-form sums used by the intersection-matrix formulas.

pub mod cyclotomic;
pub mod rat;
pub mod sums;

pub use cyclotomic::{
    cyc_add, cyc_inv, cyc_mul, cyclotomic_polynomial, pi_valuation, resultant, CycElt,
};
pub use rat::Rat;
pub use sums::{
    root_of_unity_sum, root_of_unity_sum_brute, sum_nup, sum_nup_brute, sum_nup_shifted,
    sum_nup_shifted_brute, sum_p2vp, sum_p2vp_brute,
};

use crate::error::{Error, Result};

/// A p-adic valuation: either finite or +∞ (the valuation of 0).
///
/// Operations in this crate that cannot tolerate the infinite case take the
/// fallible [`nu_p`] / [`nu_p_residue`] path instead and error on zero input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    /// ν_p(x) for x ≠ 0 (negative for rationals with p in the denominator).
    Finite(i64),
    /// ν_p(0) = +∞.
    Infinite,
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Checks primality of `p` by trial division (inputs here are tiny).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Factors `m ≥ 1` into `(prime, multiplicity)` pairs, ascending primes.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let mut e = 0u32;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Euler totient φ(n) for n ≥ 1.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// `p^e` with overflow check (panics on overflow; exponents here are small).
pub fn upow(p: u64, e: u32) -> u64 {
    p.checked_pow(e).expect("prime power overflows u64")
}

/// The p-adic valuation ν_p(x) of a nonzero rational.
///
/// Negative when p divides the denominator. Errors with
/// [`Error::ZeroValuation`] when `x = 0` and [`Error::NotPrime`] when `p`
/// is not prime.
pub fn nu_p(x: &Rat, p: u64) -> Result<i64> {
    Ok(nu_p_bigint(x.numer(), p)? - nu_p_bigint(x.denom(), p)?)
}

/// ν_p of a nonzero machine integer.
pub fn nu_p_int(x: i64, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if x == 0 {
        return Err(Error::ZeroValuation);
    }
    let mut v = 0i64;
    let mut m = (x as i128).unsigned_abs();
    let p = p as u128;
    while m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    Ok(v)
}

/// ν_p of a nonzero big integer.
pub fn nu_p_bigint(x: &num_bigint::BigInt, p: u64) -> Result<i64> {
    use num_traits::Zero;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = num_bigint::BigInt::from(p);
    let mut v = 0i64;
    let mut m = x.clone();
    loop {
        let (q, rem) = num_integer::Integer::div_rem(&m, &p);
        if rem.is_zero() {
            m = q;
            v += 1;
        } else {
            return Ok(v);
        }
    }
}

/// ν_p(x) as a [`Valuation`], mapping 0 to [`Valuation::Infinite`].
pub fn nu_p_val(x: &Rat, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    Ok(Valuation::Finite(nu_p(x, p)?))
}

/// ν_p of the residue class `i mod p^r`: the unique `s ∈ [0, r)` with
/// i ≡ p^s·u for a unit u, provided i ≢ 0 (mod p^r).
///
/// Errors when the residue is ≡ 0 (the class has no finite valuation below
/// r), when `p` is not prime, or when `r = 0`.
pub fn nu_p_residue(i: i64, p: u64, r: u32) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidParams("r must be ≥ 1".into()));
    }
    let modulus = upow(p, r) as i128;
    let res = (i as i128).rem_euclid(modulus);
    if res == 0 {
        return Err(Error::ZeroValuation);
    }
    let mut v = 0i64;
    let mut m = res;
    let p = p as i128;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    Ok(v)
}
