//! Klein-form product families: the congruence and holomorphy criteria,
//! cusp orders, q-expansions at ∞, the valuation at the cusp 0, and the
//! lower-bound certificate for the annihilating exponent.
//!
//! A family {m(t)} of integers indexed by t ∈ {1, …, n−1} encodes the
//! product κ(τ) = Π_t κ_{(t/n, 0)}(nτ)^{m(t)} of Klein forms. When
//! Σ m(t)·t² ≡ 0 (mod gcd(2,n)·n) the product is modular of weight
//! −Σ m(t) on Γ₁(n) ∩ Γ₀(n²); when additionally every cusp order is ≥ 0
//! it is holomorphic. For n = p^r the valuation of κ at the cusp 0 is what
//! drives the lower bound: the standard families realize
//! ν₀ = −2p^{r−1}(pr−r+1) on the nose.

pub mod qseries;

use std::collections::BTreeMap;

use num_integer::gcd;
use serde::Serialize;

use crate::arith::{euler_phi, factorize, nu_p_int, pi_valuation, upow, CycElt, Rat};
use crate::error::{Error, Result};
use qseries::Series;
pub use qseries::QSeries;

/// A finitely supported integer family {m(t)}, t ∈ {1, …, n−1}, encoding
/// the Klein-form product Π κ_{(t/n,0)}(nτ)^{m(t)} of weight −Σ m(t).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KleinFamily {
    n: u64,
    m: BTreeMap<u64, i64>,
}

impl KleinFamily {
    /// Builds a family over level n ≥ 2. Indices must lie in 1..=n−1;
    /// repeated indices are summed; zero coefficients are dropped.
    pub fn new(n: u64, pairs: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("level n must be ≥ 2, got {n}")));
        }
        let mut m = BTreeMap::new();
        for (t, coeff) in pairs {
            if t == 0 || t >= n {
                return Err(Error::InvalidParams(format!(
                    "index t = {t} outside 1..={}",
                    n - 1
                )));
            }
            *m.entry(t).or_insert(0) += coeff;
        }
        m.retain(|_, c| *c != 0);
        Ok(KleinFamily { n, m })
    }

    /// Parses the `t:m,t:m,...` CLI syntax into index/coefficient pairs.
    pub fn parse_pairs(s: &str) -> Result<Vec<(u64, i64)>> {
        let mut pairs = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (t, m) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected t:m, got {part:?}")))?;
            let t: u64 = t
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad index in {part:?}: {e}")))?;
            let m: i64 = m
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad coefficient in {part:?}: {e}")))?;
            pairs.push((t, m));
        }
        Ok(pairs)
    }

    /// The level n.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// The nonzero coefficients, indexed by t.
    pub fn coefficients(&self) -> &BTreeMap<u64, i64> {
        &self.m
    }

    /// m(t), zero off the support.
    pub fn coefficient(&self, t: u64) -> i64 {
        self.m.get(&t).copied().unwrap_or(0)
    }

    /// The weight of the product, −Σ m(t) (each Klein form has weight −1).
    pub fn weight(&self) -> i64 {
        -self.m.values().sum::<i64>()
    }

    /// Number of indices with nonzero coefficient.
    pub fn support_size(&self) -> usize {
        self.m.len()
    }
}

impl std::fmt::Display for KleinFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.m.iter().map(|(t, m)| format!("{t}:{m}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A cusp class of level n: cusps a/c with gcd(c, n) = g and numerator
/// congruent to a mod g share one order formula. `a = 1` for g ≤ 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CuspClass {
    /// gcd(c, n): a divisor of n.
    pub g: u64,
    /// Numerator class mod g, coprime to g.
    pub a: u64,
}

impl CuspClass {
    /// Validates g | n and gcd(a, g) = 1, reducing a mod g.
    pub fn new(n: u64, g: u64, a: u64) -> Result<Self> {
        if g == 0 || !n.is_multiple_of(g) {
            return Err(Error::InvalidParams(format!(
                "g = {g} must be a positive divisor of n = {n}"
            )));
        }
        if gcd(a, g) != 1 {
            return Err(Error::InvalidParams(format!(
                "a = {a} must be coprime to g = {g}"
            )));
        }
        let a = if g <= 2 { 1 } else { a % g };
        Ok(CuspClass { g, a })
    }
}

/// All cusp classes of level n: g over the divisors of n ascending, a over
/// the units mod g ascending (a = 1 for g ≤ 2).
pub fn cusp_classes(n: u64) -> Vec<CuspClass> {
    let mut classes = Vec::new();
    for g in 1..=n {
        if !n.is_multiple_of(g) {
            continue;
        }
        if g <= 2 {
            classes.push(CuspClass { g, a: 1 });
        } else {
            for a in 1..g {
                if gcd(a, g) == 1 {
                    classes.push(CuspClass { g, a });
                }
            }
        }
    }
    classes
}

/// The quadratic congruence criterion for modularity:
/// Σ m(t)·t² ≡ 0 (mod gcd(2,n)·n).
pub fn check_congruence(f: &KleinFamily) -> bool {
    let modulus = (gcd(2, f.n) * f.n) as i128;
    let sum: i128 = f
        .m
        .iter()
        .map(|(&t, &m)| (m as i128) * (t as i128) * (t as i128))
        .sum();
    sum.rem_euclid(modulus) == 0
}

/// Order of vanishing of the product at the cusp class c:
/// (g²/2n)·Σ m(t)·⟨at/g⟩(⟨at/g⟩ − 1), computed exactly as
/// Σ m(t)·x_t(x_t − g)/(2n) with x_t = (a·t) mod g.
pub fn cusp_order(f: &KleinFamily, c: &CuspClass) -> Rat {
    let mut num: i128 = 0;
    for (&t, &m) in &f.m {
        let x = ((c.a as i128) * (t as i128)).rem_euclid(c.g as i128);
        num += (m as i128) * x * (x - c.g as i128);
    }
    Rat::new(num, 2 * f.n as i128)
}

/// True iff the cusp order is ≥ 0 at every cusp class of level n.
pub fn is_holomorphic(f: &KleinFamily) -> bool {
    cusp_classes(f.n)
        .iter()
        .all(|c| !cusp_order(f, c).is_negative())
}

/// The certified weight-2 family for level p^r:
/// {3:−2, 4:−2, 5:2} for r = 1, p > 5; {1:4, 2:−2, 3:−4} for p = 5, r = 1;
/// {1:2, p^{r−1}:−2, p^r−1:−2} for r ≥ 2. No family is known for
/// p^r ∈ {2, 3}.
pub fn standard_family(p: u64, r: u32) -> Result<KleinFamily> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidParams("r must be ≥ 1".into()));
    }
    let n = upow(p, r);
    if n <= 3 {
        return Err(Error::NoConstructionKnown(n));
    }
    let pairs: Vec<(u64, i64)> = if r >= 2 {
        vec![(1, 2), (upow(p, r - 1), -2), (n - 1, -2)]
    } else if p == 5 {
        vec![(1, 4), (2, -2), (3, -4)]
    } else {
        vec![(3, -2), (4, -2), (5, 2)]
    };
    KleinFamily::new(n, pairs)
}

/// Π over the exponents e ≡ start (mod step), start ≤ e < len, of
/// (1 − q^e), truncated at len.
fn progression_product(start: u64, step: u64, len: usize) -> Series {
    let mut acc = Series::one(len);
    let mut e = start as usize;
    while e < len {
        acc = acc.mul(&Series::one_minus_q(e, len));
        e += step as usize;
    }
    acc
}

/// q-expansion of the product at the cusp ∞, truncated to `trunc`
/// exponent steps of size 1/D.
///
/// Each factor contributes q^{t(t−n)/2n}·Π_{j≡t (n)}(1−q^j)·
/// Π_{j≡n−t (n)}(1−q^j)·[Π_{j≡0 (n)}(1−q^j)]^{−2}, all to the power m(t);
/// the leading exponent is E = Σ m(t)·t(t−n)/(2n) and the unit part is an
/// integer-coefficient series in integer powers of q. D is the denominator
/// of E (1 whenever E is an integer, as for the standard families), and
/// the stored coefficients at non-integer offsets from E are zero.
pub fn qexp_infinity(f: &KleinFamily, trunc: usize) -> Result<QSeries> {
    if trunc == 0 {
        return Err(Error::InvalidParams("truncation must be ≥ 1".into()));
    }
    let n = f.n;
    let mut leading = Rat::zero();
    for (&t, &m) in &f.m {
        let term = Rat::int(m) * Rat::int(t as i64) * Rat::int(t as i64 - n as i64);
        leading += &term / &Rat::int(2 * n as i64);
    }
    let d: u64 = u64::try_from(leading.denom()).expect("denominator divides 2n");
    let unit_len = (trunc - 1) / d as usize + 1;
    let mut unit = Series::one(unit_len);
    for (&t, &m) in &f.m {
        let base = progression_product(t, n, unit_len)
            .mul(&progression_product(n - t, n, unit_len))
            .mul(&progression_product(n, n, unit_len).powi(-2)?);
        unit = unit.mul(&base.powi(m)?);
    }
    let mut coeffs = Vec::with_capacity(trunc);
    for s in 0..trunc {
        if s % d as usize == 0 {
            coeffs.push(Rat::from(unit.coeff(s / d as usize).clone()));
        } else {
            coeffs.push(Rat::zero());
        }
    }
    QSeries::new(d, leading, coeffs)
}

/// Splits n into (p, r) when n = p^r is a prime power with r ≥ 1.
fn prime_power_parts(n: u64) -> Result<(u64, u32)> {
    let factors = factorize(n);
    match factors.as_slice() {
        [(p, r)] => Ok((*p, *r)),
        _ => Err(Error::InvalidParams(format!(
            "level n = {n} must be a prime power"
        ))),
    }
}

fn valuation_parameters(f: &KleinFamily) -> Result<(u64, u32)> {
    if f.m.is_empty() {
        return Err(Error::InvalidParams(
            "degenerate family: empty support".into(),
        ));
    }
    let (p, r) = prime_power_parts(f.n)?;
    if f.n < 4 {
        return Err(Error::InvalidParams(format!(
            "valuation at the cusp 0 requires p^r ≥ 4, got {}",
            f.n
        )));
    }
    Ok((p, r))
}

/// π-adic valuation of the product at the cusp 0, for a family of
/// prime-power level n = p^r ≥ 4:
/// ν₀ = Σ m(t)·p^{ν_p(t)} − w·r·φ(p^r) with w = −Σ m(t),
/// since ν_π(1−ζ^t) = p^{ν_p(t)} and ν_π(p) = φ(p^r).
///
/// For the standard families this evaluates to −2p^{r−1}(pr−r+1)
/// (−2p at r = 1).
pub fn valuation_at_zero(f: &KleinFamily) -> Result<i64> {
    let (p, r) = valuation_parameters(f)?;
    let w = f.weight();
    let mut sum: i64 = 0;
    for (&t, &m) in &f.m {
        let nu = nu_p_int(t as i64, p)? as u32;
        sum += m * upow(p, nu) as i64;
    }
    Ok(sum - w * r as i64 * euler_phi(upow(p, r)) as i64)
}

/// [`valuation_at_zero`] recomputed along the independent cyclotomic path:
/// the leading coefficient of the expansion at 0 is, up to a root of unity
/// (which has π-valuation 0), Π_t (1−ζ^{−t})^{m(t)}·p^{−r·w}; its valuation
/// is obtained from the resultant-based [`pi_valuation`].
pub fn valuation_at_zero_via_pi(f: &KleinFamily) -> Result<i64> {
    let (p, r) = valuation_parameters(f)?;
    let n = f.n;
    let mut acc = CycElt::from_rat(n, Rat::one());
    for (&t, &m) in &f.m {
        let zeta = CycElt::zeta_pow(n, -(t as i64))?;
        let factor = CycElt::one(n).sub(&zeta)?;
        acc = acc.mul(&factor.pow(m)?)?;
    }
    let w = f.weight();
    Ok(pi_valuation(&acc, p, r)? - w * r as i64 * euler_phi(upow(p, r)) as i64)
}

/// The lower bound for the annihilating exponent:
/// −k·ν₀(standard family) = 2k·p^{r−1}(pr−r+1), matching the upper bound.
pub fn lower_bound(p: u64, r: u32, k: u64) -> Result<i64> {
    if k == 0 {
        return Err(Error::InvalidParams("weight parameter k must be ≥ 1".into()));
    }
    let f = standard_family(p, r)?;
    Ok(-(k as i64) * valuation_at_zero(&f)?)
}

/// The holomorphy margin of the (3,4,5) family at a rational argument:
/// f(x) = ⟨3x⟩(1−⟨3x⟩) + ⟨4x⟩(1−⟨4x⟩) − ⟨5x⟩(1−⟨5x⟩).
///
/// Nonnegative on all rationals with denominator dividing a prime p > 5;
/// table values: f(1/5) = f(2/5) = 2/5, f(1/2) = f(1/3) = f(1/4) = 0.
pub fn fractional_margin_345(x: &Rat) -> Rat {
    let term = |c: i64| {
        let frac = (&Rat::int(c) * x).fract();
        &frac * &(&Rat::one() - &frac)
    };
    &(&term(3) + &term(4)) - &term(5)
}

fn binomial_u128(n: u64, k: u64) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Enumerates all weight-2 families of prime-power level n ≥ 4 with
/// support size ≤ max_support (≤ 4) and 0 < |m(t)| ≤ max_abs_coeff (≤ 6)
/// passing both [`check_congruence`] and [`is_holomorphic`], sorted by
/// [`valuation_at_zero`] ascending (ties by coefficient table).
pub fn search_families(
    n: u64,
    max_support: usize,
    max_abs_coeff: i64,
) -> Result<Vec<KleinFamily>> {
    if n < 4 {
        return Err(Error::InvalidParams(format!("level n must be ≥ 4, got {n}")));
    }
    prime_power_parts(n)?;
    if max_support == 0 || max_abs_coeff <= 0 {
        return Err(Error::InvalidParams(
            "support and coefficient bounds must be ≥ 1".into(),
        ));
    }
    if max_support > 4 || max_abs_coeff > 6 {
        return Err(Error::SearchSpaceExceeded(format!(
            "support ≤ 4 and |m| ≤ 6 required, got {max_support} and {max_abs_coeff}"
        )));
    }
    let mut estimate: u128 = 0;
    for s in 1..=max_support as u64 {
        estimate = estimate.saturating_add(
            binomial_u128(n - 1, s).saturating_mul((2 * max_abs_coeff as u128).pow(s as u32)),
        );
    }
    if estimate > 20_000_000 {
        return Err(Error::SearchSpaceExceeded(format!(
            "about {estimate} candidate families at level {n}"
        )));
    }

    let mut found: Vec<(i64, Vec<(u64, i64)>)> = Vec::new();
    let mut support = Vec::new();
    let mut coeffs = Vec::new();
    for size in 1..=max_support {
        enumerate_supports(
            n,
            1,
            size,
            max_abs_coeff,
            &mut support,
            &mut coeffs,
            &mut found,
        )?;
    }
    found.sort();
    found
        .into_iter()
        .map(|(_, pairs)| KleinFamily::new(n, pairs))
        .collect()
}

/// Recursively chooses the support (ascending indices), then hands off to
/// the coefficient enumeration.
fn enumerate_supports(
    n: u64,
    next: u64,
    remaining: usize,
    max_abs: i64,
    support: &mut Vec<u64>,
    coeffs: &mut Vec<i64>,
    found: &mut Vec<(i64, Vec<(u64, i64)>)>,
) -> Result<()> {
    if remaining == 0 {
        return enumerate_coeffs(n, support, max_abs, 0, coeffs, found);
    }
    for t in next..n {
        if (n - t) as usize >= remaining {
            support.push(t);
            enumerate_supports(n, t + 1, remaining - 1, max_abs, support, coeffs, found)?;
            support.pop();
        }
    }
    Ok(())
}

/// Assigns nonzero coefficients with Σ m(t) = −2 (weight 2), pruning by
/// the reachable-sum interval, and records families passing both filters.
fn enumerate_coeffs(
    n: u64,
    support: &[u64],
    max_abs: i64,
    partial_sum: i64,
    coeffs: &mut Vec<i64>,
    found: &mut Vec<(i64, Vec<(u64, i64)>)>,
) -> Result<()> {
    let filled = coeffs.len();
    let remaining = (support.len() - filled) as i64;
    let deficit = -2 - partial_sum;
    if deficit.abs() > max_abs * remaining {
        return Ok(());
    }
    if filled == support.len() {
        let pairs: Vec<(u64, i64)> = support.iter().copied().zip(coeffs.iter().copied()).collect();
        let family = KleinFamily::new(n, pairs.clone())?;
        if check_congruence(&family) && is_holomorphic(&family) {
            let val = valuation_at_zero(&family)?;
            found.push((val, pairs));
        }
        return Ok(());
    }
    for m in -max_abs..=max_abs {
        if m == 0 {
            continue;
        }
        coeffs.push(m);
        enumerate_coeffs(n, support, max_abs, partial_sum + m, coeffs, found)?;
        coeffs.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(n: u64, pairs: &[(u64, i64)]) -> KleinFamily {
        KleinFamily::new(n, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn family_construction_and_parsing() {
        let f = family(7, &[(3, -2), (4, -2), (5, 2)]);
        assert_eq!(f.weight(), 2);
        assert_eq!(f.support_size(), 3);
        assert_eq!(f.coefficient(3), -2);
        assert_eq!(f.coefficient(6), 0);
        assert_eq!(f.to_string(), "3:-2,4:-2,5:2");
        assert_eq!(
            KleinFamily::parse_pairs("3:-2, 4:-2 ,5:2").unwrap(),
            vec![(3, -2), (4, -2), (5, 2)]
        );
        // Duplicates sum; zeros are dropped.
        let g = family(5, &[(1, 2), (1, -2), (2, 1)]);
        assert_eq!(g.support_size(), 1);
        assert!(KleinFamily::new(5, [(0, 1)]).is_err());
        assert!(KleinFamily::new(5, [(5, 1)]).is_err());
        assert!(KleinFamily::new(1, []).is_err());
        assert!(KleinFamily::parse_pairs("3-2").is_err());
        assert!(KleinFamily::parse_pairs("a:2").is_err());
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"n":7,"m":{"3":-2,"4":-2,"5":2}}"#
        );
    }

    #[test]
    fn congruence_examples() {
        assert!(check_congruence(&family(7, &[(3, -2), (4, -2), (5, 2)])));
        assert!(check_congruence(&family(5, &[(1, 4), (2, -2), (3, -4)])));
        assert!(!check_congruence(&family(5, &[(1, 1)])));
        assert!(check_congruence(&family(4, &[(1, 2), (2, -2), (3, -2)])));
    }

    #[test]
    fn cusp_order_examples() {
        let f7 = family(7, &[(3, -2), (4, -2), (5, 2)]);
        let c = CuspClass::new(7, 7, 1).unwrap();
        assert_eq!(cusp_order(&f7, &c), Rat::int(2));
        let f5 = family(5, &[(1, 4), (2, -2), (3, -4)]);
        assert_eq!(cusp_order(&f5, &CuspClass::new(5, 5, 1).unwrap()), Rat::int(2));
        // g = 1: all fractional parts vanish.
        assert_eq!(cusp_order(&f7, &CuspClass::new(7, 1, 1).unwrap()), Rat::zero());
        let f4 = family(4, &[(1, 2), (2, -2), (3, -2)]);
        assert_eq!(cusp_order(&f4, &CuspClass::new(4, 4, 1).unwrap()), Rat::int(1));
        assert!(CuspClass::new(7, 3, 1).is_err()); // 3 does not divide 7
        assert!(CuspClass::new(8, 4, 2).is_err()); // gcd(2,4) > 1
        assert_eq!(cusp_classes(9).len(), 1 + 2 + 6);
    }

    #[test]
    fn holomorphy_examples() {
        assert!(is_holomorphic(&family(7, &[(3, -2), (4, -2), (5, 2)])));
        assert!(is_holomorphic(&family(5, &[(1, 4), (2, -2), (3, -4)])));
        assert!(is_holomorphic(&family(4, &[(1, 2), (2, -2), (3, -2)])));
        // The negated level-5 family has a strictly negative order.
        assert!(!is_holomorphic(&family(5, &[(1, -4), (2, 2), (3, 4)])));
    }

    #[test]
    fn standard_families() {
        assert_eq!(
            standard_family(7, 1).unwrap(),
            family(7, &[(3, -2), (4, -2), (5, 2)])
        );
        assert_eq!(
            standard_family(5, 1).unwrap(),
            family(5, &[(1, 4), (2, -2), (3, -4)])
        );
        assert_eq!(
            standard_family(2, 2).unwrap(),
            family(4, &[(1, 2), (2, -2), (3, -2)])
        );
        assert_eq!(
            standard_family(2, 4).unwrap(),
            family(16, &[(1, 2), (8, -2), (15, -2)])
        );
        assert!(matches!(standard_family(2, 1), Err(Error::NoConstructionKnown(2))));
        assert!(matches!(standard_family(3, 1), Err(Error::NoConstructionKnown(3))));
        assert!(standard_family(6, 1).is_err());
        // Certified on the full grid.
        for (p, r) in [(2u64, 2u32), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (2, 4), (5, 2)] {
            let f = standard_family(p, r).unwrap();
            assert_eq!(f.weight(), 2, "p={p} r={r}");
            assert!(check_congruence(&f), "congruence p={p} r={r}");
            assert!(is_holomorphic(&f), "holomorphy p={p} r={r}");
        }
    }

    #[test]
    fn qexp_seven() {
        let f = standard_family(7, 1).unwrap();
        let s = qexp_infinity(&f, 8).unwrap();
        assert_eq!(s.denominator_d, 1);
        assert_eq!(s.leading_exponent, Rat::int(2));
        let expected: Vec<Rat> = [1, 0, -2, 4, 5, -10, 2, 20]
            .into_iter()
            .map(Rat::int)
            .collect();
        assert_eq!(s.coeffs, expected);
        // Leading exponent = cusp order at (g = n, a = 1).
        let (exp, coeff) = s.leading_term().unwrap();
        assert_eq!(exp, cusp_order(&f, &CuspClass::new(7, 7, 1).unwrap()));
        assert_eq!(*coeff, Rat::one());
    }

    #[test]
    fn qexp_structure() {
        // Empty family: constant series 1.
        let empty = KleinFamily::new(6, []).unwrap();
        let s = qexp_infinity(&empty, 5).unwrap();
        assert_eq!(s.denominator_d, 1);
        assert_eq!(s.leading_exponent, Rat::zero());
        assert_eq!(s.coeffs[0], Rat::one());
        assert!(s.coeffs[1..].iter().all(Rat::is_zero));
        // Leading exponent matches the cusp order for every standard family,
        // and all coefficients are integers.
        for (p, r) in [(2u64, 2u32), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let f = standard_family(p, r).unwrap();
            let s = qexp_infinity(&f, 20).unwrap();
            assert_eq!(s.denominator_d, 1, "p={p} r={r}");
            assert_eq!(
                s.leading_exponent,
                cusp_order(&f, &CuspClass::new(f.n(), f.n(), 1).unwrap()),
                "p={p} r={r}"
            );
            assert!(s.coeffs.iter().all(Rat::is_integer), "p={p} r={r}");
            assert_eq!(s.coeffs[0], Rat::one(), "p={p} r={r}");
        }
        // Fractional leading exponent: reported in q^{1/D} steps.
        let frac = family(4, &[(1, 1), (2, -3)]);
        let s = qexp_infinity(&frac, 10).unwrap();
        assert_eq!(s.leading_exponent, Rat::new(9, 8));
        assert_eq!(s.denominator_d, 8);
        assert_eq!(s.coeffs[0], Rat::one());
        assert_eq!(s.coeffs[8], Rat::int(-1)); // coefficient of q^{9/8 + 1}
        assert!(s.coeffs[1..8].iter().all(Rat::is_zero));
        assert!(qexp_infinity(&frac, 0).is_err());
    }

    #[test]
    fn valuations_at_zero() {
        let cases = [
            ((7u64, 1u32), -14i64),
            ((5, 1), -10),
            ((2, 2), -12),
            ((2, 3), -32),
            ((3, 2), -30),
        ];
        for ((p, r), expected) in cases {
            let f = standard_family(p, r).unwrap();
            assert_eq!(valuation_at_zero(&f).unwrap(), expected, "p={p} r={r}");
            assert_eq!(
                valuation_at_zero_via_pi(&f).unwrap(),
                expected,
                "via pi p={p} r={r}"
            );
        }
        // Errors: empty support, non-prime-power level, level < 4.
        assert!(valuation_at_zero(&KleinFamily::new(8, []).unwrap()).is_err());
        assert!(valuation_at_zero(&family(6, &[(1, -2)])).is_err());
        assert!(valuation_at_zero(&family(3, &[(1, -2)])).is_err());
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound(5, 1, 1).unwrap(), 10);
        assert_eq!(lower_bound(2, 3, 1).unwrap(), 32);
        assert_eq!(lower_bound(3, 2, 2).unwrap(), 60);
        assert_eq!(lower_bound(7, 1, 3).unwrap(), 42);
        assert!(matches!(lower_bound(2, 1, 1), Err(Error::NoConstructionKnown(2))));
        assert!(lower_bound(5, 1, 0).is_err());
    }

    #[test]
    fn margin_table() {
        let table = [
            ((1i64, 5i64), Rat::new(2, 5)),
            ((2, 5), Rat::new(2, 5)),
            ((1, 4), Rat::zero()),
            ((1, 3), Rat::zero()),
            ((1, 2), Rat::zero()),
        ];
        for ((num, den), expected) in table {
            assert_eq!(
                fractional_margin_345(&Rat::new(num, den)),
                expected,
                "f({num}/{den})"
            );
        }
        // Nonnegative at denominator-p arguments for primes p > 5.
        for p in [7i64, 11, 13, 17, 19, 23] {
            for a in 0..p {
                assert!(
                    !fractional_margin_345(&Rat::new(a, p)).is_negative(),
                    "f({a}/{p})"
                );
            }
        }
    }

    #[test]
    fn search_finds_standard_families() {
        let found = search_families(7, 3, 2).unwrap();
        assert!(found.contains(&standard_family(7, 1).unwrap()));
        let found = search_families(5, 3, 4).unwrap();
        assert!(found.contains(&standard_family(5, 1).unwrap()));
        let found = search_families(4, 3, 2).unwrap();
        assert!(found.contains(&standard_family(2, 2).unwrap()));
        // Every hit passes both filters and the list is sorted by valuation.
        let vals: Vec<i64> = found
            .iter()
            .map(|f| {
                assert!(check_congruence(f) && is_holomorphic(f));
                valuation_at_zero(f).unwrap()
            })
            .collect();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        // Caps.
        assert!(matches!(
            search_families(25, 4, 6),
            Err(Error::SearchSpaceExceeded(_))
        ));
        assert!(matches!(
            search_families(16, 5, 2),
            Err(Error::SearchSpaceExceeded(_))
        ));
        assert!(search_families(6, 2, 2).is_err()); // not a prime power
    }
}
