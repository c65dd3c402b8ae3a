//! Closed-form number-theoretic sums over residues mod p^r, each paired with
//! the brute-force evaluation it must equal.
//!
//! These sums are what collapse the spectral expression for the entries of
//! M(p^r)^{-1} into the rational closed forms in [`crate::xcurve`].

use crate::arith::{is_prime, nu_p_residue, upow, CycElt, Rat};
use crate::error::{Error, Result};

fn check_pr(p: u64, r: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidParams("r must be ≥ 1".into()));
    }
    Ok(())
}

/// Σ_{a'≠0 mod p^r} p^{2ν_p(a')} = p^{2r−1} − p^{r−1}.
pub fn sum_p2vp(p: u64, r: u32) -> Result<i64> {
    check_pr(p, r)?;
    Ok((upow(p, 2 * r - 1) - upow(p, r - 1)) as i64)
}

/// Brute-force counterpart of [`sum_p2vp`].
pub fn sum_p2vp_brute(p: u64, r: u32) -> Result<i64> {
    check_pr(p, r)?;
    let n = upow(p, r) as i64;
    let mut total = 0i64;
    for a in 1..n {
        let v = nu_p_residue(a, p, r)?;
        total += upow(p, 2 * v as u32) as i64;
    }
    Ok(total)
}

/// Σ_{m=1}^{p^r−1} ν_p(m) = (p^r − pr + r − 1)/(p−1).
pub fn sum_nup(p: u64, r: u32) -> Result<i64> {
    check_pr(p, r)?;
    let num = upow(p, r) as i64 - (p as i64) * (r as i64) + r as i64 - 1;
    let den = p as i64 - 1;
    debug_assert_eq!(num % den, 0, "closed form must divide exactly");
    Ok(num / den)
}

/// Brute-force counterpart of [`sum_nup`].
pub fn sum_nup_brute(p: u64, r: u32) -> Result<i64> {
    check_pr(p, r)?;
    let n = upow(p, r) as i64;
    let mut total = 0i64;
    for m in 1..n {
        total += nu_p_residue(m, p, r)?;
    }
    Ok(total)
}

/// Σ_{j≠i, 1≤j≤p^r−1} ν_p((j−i) mod p^r) = −ν_p(i) + sum_nup(p, r).
///
/// Errors when `i` is outside `1..p^r−1`.
pub fn sum_nup_shifted(p: u64, r: u32, i: i64) -> Result<i64> {
    check_pr(p, r)?;
    let n = upow(p, r) as i64;
    if !(1..n).contains(&i) {
        return Err(Error::IndexOutOfRange(format!(
            "i = {i} not in 1..{}",
            n - 1
        )));
    }
    Ok(-nu_p_residue(i, p, r)? + sum_nup(p, r)?)
}

/// Brute-force counterpart of [`sum_nup_shifted`].
pub fn sum_nup_shifted_brute(p: u64, r: u32, i: i64) -> Result<i64> {
    check_pr(p, r)?;
    let n = upow(p, r) as i64;
    if !(1..n).contains(&i) {
        return Err(Error::IndexOutOfRange(format!(
            "i = {i} not in 1..{}",
            n - 1
        )));
    }
    let mut total = 0i64;
    for j in 1..n {
        if j != i {
            total += nu_p_residue(j - i, p, r)?;
        }
    }
    Ok(total)
}

/// Σ_{u coprime to p, 1 ≤ u ≤ p^N−1} ζ_{p^N}^{−uJ}, which is rational:
/// 0 if p^{N−1} ∤ J; −p^{N−1} if p^{N−1} | J but p^N ∤ J; p^N − p^{N−1}
/// if p^N | J.
pub fn root_of_unity_sum(p: u64, n_exp: u32, j: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n_exp == 0 || j == 0 {
        return Err(Error::InvalidParams("need N ≥ 1 and J ≥ 1".into()));
    }
    let pn1 = upow(p, n_exp - 1);
    let pn = pn1 * p;
    if !j.is_multiple_of(pn1) {
        Ok(0)
    } else if !j.is_multiple_of(pn) {
        Ok(-(pn1 as i64))
    } else {
        Ok((pn - pn1) as i64)
    }
}

/// Brute-force counterpart of [`root_of_unity_sum`], summed in Q(ζ_{p^N}).
///
/// Errors with [`Error::NonRationalResult`] if the sum fails to collapse to a
/// rational (it never does for valid inputs).
pub fn root_of_unity_sum_brute(p: u64, n_exp: u32, j: u64) -> Result<Rat> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n_exp == 0 || j == 0 {
        return Err(Error::InvalidParams("need N ≥ 1 and J ≥ 1".into()));
    }
    let pn = upow(p, n_exp);
    let mut acc = CycElt::zero(pn);
    for u in 1..pn {
        if u % p != 0 {
            let e = -((u as i64) * (j as i64 % pn as i64));
            acc = acc.add(&CycElt::zeta_pow(pn, e)?)?;
        }
    }
    acc.to_rat().ok_or(Error::NonRationalResult)
}
