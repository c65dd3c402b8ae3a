//! Numerical invariants of X(Np^r) and the exponent bounds.
//!
//! Group orders and cusp counts; degrees of the modular sheaves ω^{2k},
//! ω^{2k}(−cusps) and the dualizing sheaf Ω restricted to one component of
//! the special fiber; the per-component and global upper bounds for the
//! exponent annihilating the quotient of the two integral structures; the
//! q-expansion lower bound; and the exact exponent report combining them.
//!
//! Throughout, p is prime, r ≥ 1, the auxiliary level N ≥ 3 is coprime to
//! p, and k ≥ 1 is half the weight. The exponent of interest is
//! e = 2k·p^{r−1}·(pr−r+1).

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{euler_phi, is_prime, nu_p_residue, upow, Rat};
use crate::error::{Error, Result};
use crate::xcurve::{all_labels, build_t, ComponentLabel};

/// Order of SL₂(Z/mZ): m³·Π_{p|m}(1 − p^{−2}), multiplicative over the
/// prime factorization; 1 for m = 1.
pub fn sl2_order(m: u64) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::InvalidParams("modulus m must be ≥ 1".into()));
    }
    let mut order = BigInt::from(1u32);
    for (p, e) in crate::arith::factorize(m) {
        // p^(3e) − p^(3e−2) = p^(3e−2)·(p² − 1).
        let pe = BigInt::from(p).pow(3 * e - 2);
        order *= pe * (p * p - 1);
    }
    Ok(order)
}

/// Number of cusps of X(M) for M ≥ 3: #SL₂(Z/M)/(2M) (the 2 because ±1
/// acts trivially on the upper half plane but is counted in SL₂).
pub fn num_cusps(m: u64) -> Result<BigInt> {
    if m < 3 {
        return Err(Error::InvalidParams(format!(
            "cusp count formula requires M ≥ 3, got {m}"
        )));
    }
    let order = sl2_order(m)?;
    let denom = BigInt::from(2 * m);
    debug_assert!((&order % &denom) == BigInt::from(0u32));
    Ok(order / denom)
}

fn validate_common(p: u64, r: u32, n: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidParams("r must be ≥ 1".into()));
    }
    if n < 3 {
        return Err(Error::InvalidParams(format!(
            "auxiliary level N must be ≥ 3, got {n}"
        )));
    }
    if n.is_multiple_of(p) {
        return Err(Error::InvalidParams(format!(
            "auxiliary level N = {n} must be coprime to p = {p}"
        )));
    }
    Ok(())
}

fn validate_k(k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParams("weight parameter k must be ≥ 1".into()));
    }
    Ok(())
}

/// deg S(N) = (p−1)·#SL₂(Z/N)/24, the degree of the supersingular divisor
/// common to all components; the normalization factor of the intersection
/// matrices.
pub fn deg_ss(n: u64, p: u64) -> Result<Rat> {
    validate_common(p, 1, n)?;
    let order: Rat = sl2_order(n)?.into();
    Ok(&(&Rat::int(p as i64 - 1) * &order) / &Rat::int(24))
}

/// Number of cusps lying on a single component of the special fiber:
/// φ(p^r)·#C(N).
pub fn cusps_per_component(p: u64, r: u32, n: u64) -> Result<BigInt> {
    validate_common(p, r, n)?;
    Ok(BigInt::from(euler_phi(upow(p, r))) * num_cusps(n)?)
}

/// Degree of ω^{2k} restricted to one component:
/// k·#SL₂(Z/N)·(p−1)·p^{2r−1}/12 = 2k·p^{2r−1}·deg S(N).
pub fn deg_omega_2k_restricted(p: u64, r: u32, n: u64, k: u64) -> Result<Rat> {
    validate_common(p, r, n)?;
    validate_k(k)?;
    let factor = Rat::int((2 * k) as i64) * Rat::int(upow(p, 2 * r - 1) as i64);
    Ok(&factor * &deg_ss(n, p)?)
}

/// Degree of ω^{2k}(−cusps) restricted to one component:
/// k·#SL₂(Z/N)·(p−1)·(p^{2r−1}/12 − p^{r−1}/(2N)), equivalently
/// deg ω^{2k}|Λ − k·(cusps per component).
pub fn deg_cusp_sheaf_restricted(p: u64, r: u32, n: u64, k: u64) -> Result<Rat> {
    validate_common(p, r, n)?;
    validate_k(k)?;
    let cusps: Rat = cusps_per_component(p, r, n)?.into();
    Ok(&deg_omega_2k_restricted(p, r, n, k)? - &(&Rat::int(k as i64) * &cusps))
}

/// Degree of the dualizing sheaf Ω restricted to one component:
/// p^r·φ(p^r)·#SL₂(Z/N)/24 − φ(p^r)·#C(N) + deg S(N)·p^{2r−1}.
///
/// Satisfies deg ω²|Λ = deg Ω|Λ + (cusps per component).
pub fn deg_dualizing_restricted(p: u64, r: u32, n: u64) -> Result<Rat> {
    validate_common(p, r, n)?;
    let sl2: Rat = sl2_order(n)?.into();
    let phi = Rat::int(euler_phi(upow(p, r)) as i64);
    let genus_part = &(&(&Rat::int(upow(p, r) as i64) * &phi) * &sl2) / &Rat::int(24);
    let cusp_part = &phi * &Rat::from(num_cusps(n)?);
    let ss_part = &deg_ss(n, p)? * &Rat::int(upow(p, 2 * r - 1) as i64);
    Ok(&(&genus_part - &cusp_part) + &ss_part)
}

/// Per-component upper bound for the annihilating exponent:
/// 2k·p^{r−1}·(pr−r+1) − 2k·p^{r−1}·(p−1)·ν_p(a) for A(a) and
/// 2k·p^{r−1}·(pr−r+1) for B-components. Equals
/// −2k·p^{2r−1}·(row sum of the label's row in the normalized T^{-1}).
///
/// Errors for A(0): that component is removed from T and carries no bound.
pub fn upper_bound_per_component(
    p: u64,
    r: u32,
    k: u64,
    label: ComponentLabel,
) -> Result<i64> {
    label.validate(p, r)?;
    validate_k(k)?;
    let lead = 2 * k as i64 * upow(p, r - 1) as i64;
    let q_cap = (p as i64) * (r as i64) - (r as i64) + 1;
    match label {
        ComponentLabel::A(0) => Err(Error::InvalidLabel(
            "A(0) is removed from T and has no per-component bound".into(),
        )),
        ComponentLabel::A(a) => {
            let nu = nu_p_residue(a as i64, p, r)?;
            Ok(lead * q_cap - lead * (p as i64 - 1) * nu)
        }
        ComponentLabel::B(_) => Ok(lead * q_cap),
    }
}

/// Global upper bound e ≤ 2k·p^{r−1}·(pr−r+1): the maximum of the
/// per-component bounds, attained on B-components and on A(a) with p ∤ a.
pub fn exponent_upper(p: u64, r: u32, k: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidParams("r must be ≥ 1".into()));
    }
    validate_k(k)?;
    let lead = 2 * k as i64 * upow(p, r - 1) as i64;
    Ok(lead * ((p as i64) * (r as i64) - (r as i64) + 1))
}

/// Global upper bound recomputed along the matrix path, independently of
/// the closed forms: max over components Λ ≠ A(0) of
/// −2k·p^{2r−1}·(row sum of Λ's row of T^{-1}), with T^{-1} obtained by
/// Gaussian elimination from the assembled intersection matrix.
pub fn exponent_upper_via_matrix(p: u64, r: u32, k: u64) -> Result<i64> {
    validate_k(k)?;
    let tinv = build_t(p, r)?.gauss_inverse()?;
    let scale = -Rat::int(2 * k as i64) * Rat::int(upow(p, 2 * r - 1) as i64);
    let mut best: Option<Rat> = None;
    for row in 0..tinv.rows() {
        let bound = &scale * &tinv.row_sum(row);
        if best.as_ref().is_none_or(|b| bound > *b) {
            best = Some(bound);
        }
    }
    let best = best.ok_or_else(|| Error::InvalidParams("empty matrix".into()))?;
    best.to_i64()
        .ok_or_else(|| Error::InvalidParams("bound exceeds i64 range".into()))
}

/// Upper bound via cusp forms: 2k·p^{r−1}·(pr−r+1) − (12k/(Np))·(pr−r+1).
/// At r = 1, k = 1 this equals the Edixhoven-style bound.
pub fn cusp_form_upper(p: u64, r: u32, n: u64, k: u64) -> Result<Rat> {
    validate_common(p, r, n)?;
    validate_k(k)?;
    let q_cap = Rat::int((p as i64) * (r as i64) - (r as i64) + 1);
    let lead = Rat::int(2 * k as i64) * Rat::prime_power(p, r as i64 - 1);
    let correction = &Rat::int(12 * k as i64) / &Rat::int((n * p) as i64);
    Ok(&(&lead - &correction) * &q_cap)
}

/// The r = 1 style bound extended verbatim to all r:
/// 2·p^{2r−1} − 12·p^{r−1}/N.
pub fn edixhoven_bound(p: u64, r: u32, n: u64) -> Result<Rat> {
    validate_common(p, r, n)?;
    let main = Rat::int(2) * Rat::int(upow(p, 2 * r - 1) as i64);
    let correction = &Rat::int((12 * upow(p, r - 1)) as i64) / &Rat::int(n as i64);
    Ok(&main - &correction)
}

/// One entry of the per-component bound table in [`ExponentReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerComponentBound {
    /// Component label (every component except A(0)).
    pub label: ComponentLabel,
    /// The bound 2k·p^{r−1}·(pr−r+1−(p−1)ν_p(a)) for this component.
    pub bound: i64,
}

/// The full exponent computation for (p, r, N, k).
///
/// `lower` and `exact` are `None` when no q-expansion certificate family is
/// known (p^r ≤ 3), in which case `note` explains; `exact` is populated
/// exactly when the lower and upper bounds agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentReport {
    /// The prime p.
    pub p: u64,
    /// The exponent r ≥ 1 of the p-power level.
    pub r: u32,
    /// The auxiliary level N.
    #[serde(rename = "N")]
    pub level_n: u64,
    /// Half the weight, k ≥ 1.
    pub k: u64,
    /// Upper bound 2k·p^{r−1}·(pr−r+1).
    pub upper: i64,
    /// Lower bound from the q-expansion certificate, when available.
    pub lower: Option<i64>,
    /// The exact exponent, populated when lower = upper.
    pub exact: Option<i64>,
    /// Per-component upper bounds, in label order, A(0) omitted.
    #[serde(rename = "perComponent")]
    pub per_component: Vec<PerComponentBound>,
    /// The cusp-form path bound (weaker for r ≥ 2).
    #[serde(rename = "cuspFormUpper")]
    pub cusp_form_upper: Rat,
    /// The r = 1 style bound extended to all r, for comparison.
    #[serde(rename = "edixhovenBound")]
    pub edixhoven_bound: Rat,
    /// Explanation when `lower`/`exact` are unavailable.
    pub note: Option<String>,
}

/// Computes the exact annihilating exponent e = 2k·p^{r−1}·(pr−r+1) with
/// both bounds: the intersection-matrix upper bound and the q-expansion
/// certificate lower bound (when a certificate family exists, i.e.
/// p^r ≥ 4).
pub fn exponent_exact(p: u64, r: u32, n: u64, k: u64) -> Result<ExponentReport> {
    validate_common(p, r, n)?;
    validate_k(k)?;
    let upper = exponent_upper(p, r, k)?;
    let (lower, note) = match crate::klein::lower_bound(p, r, k) {
        Ok(v) => (Some(v), None),
        Err(Error::NoConstructionKnown(pr)) => (
            None,
            Some(format!(
                "lower bound unavailable: no certificate family known for p^r = {pr}"
            )),
        ),
        Err(e) => return Err(e),
    };
    let exact = match lower {
        Some(l) if l == upper => Some(upper),
        _ => None,
    };
    let mut per_component = Vec::new();
    for label in all_labels(p, r)?.into_iter().skip(1) {
        per_component.push(PerComponentBound {
            label,
            bound: upper_bound_per_component(p, r, k, label)?,
        });
    }
    Ok(ExponentReport {
        p,
        r,
        level_n: n,
        k,
        upper,
        lower,
        exact,
        per_component,
        cusp_form_upper: cusp_form_upper(p, r, n, k)?,
        edixhoven_bound: edixhoven_bound(p, r, n)?,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        let values = [
            (1u64, 1i64),
            (2, 6),
            (3, 24),
            (4, 48),
            (5, 120),
            (6, 144),
            (7, 336),
            (8, 384),
            (9, 648),
            (12, 1152),
        ];
        for (m, expected) in values {
            assert_eq!(sl2_order(m).unwrap(), BigInt::from(expected), "m={m}");
        }
        assert!(sl2_order(0).is_err());
    }

    #[test]
    fn cusp_counts() {
        let values = [(3u64, 4i64), (4, 6), (5, 12), (6, 12), (7, 24)];
        for (m, expected) in values {
            assert_eq!(num_cusps(m).unwrap(), BigInt::from(expected), "m={m}");
        }
        assert!(num_cusps(2).is_err());
    }

    #[test]
    fn deg_ss_examples() {
        assert_eq!(deg_ss(3, 5).unwrap(), Rat::int(4));
        assert_eq!(deg_ss(3, 2).unwrap(), Rat::int(1));
        assert_eq!(deg_ss(5, 3).unwrap(), Rat::int(10));
        assert!(deg_ss(10, 5).is_err()); // p | N
        assert!(deg_ss(2, 5).is_err()); // N too small
    }

    /// The degree grid used by the consistency tests.
    fn degree_grid() -> Vec<(u64, u32, u64)> {
        let mut grid = Vec::new();
        for n in [3u64, 4, 5, 7] {
            for (p, r) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
                if n % p != 0 {
                    grid.push((p, r, n));
                }
            }
        }
        grid
    }

    #[test]
    fn degree_identities() {
        for (p, r, n) in degree_grid() {
            // deg ω²|Λ = deg Ω|Λ + cusps per component (k = 1).
            let omega2 = deg_omega_2k_restricted(p, r, n, 1).unwrap();
            let dualizing = deg_dualizing_restricted(p, r, n).unwrap();
            let cusps: Rat = cusps_per_component(p, r, n).unwrap().into();
            assert_eq!(omega2, &dualizing + &cusps, "p={p} r={r} N={n}");
            for k in [1u64, 2, 3] {
                // deg ω^{2k}(−cusps)|Λ = deg ω^{2k}|Λ − k·cusps.
                let sheaf = deg_cusp_sheaf_restricted(p, r, n, k).unwrap();
                let omega = deg_omega_2k_restricted(p, r, n, k).unwrap();
                assert_eq!(
                    sheaf,
                    &omega - &(&Rat::int(k as i64) * &cusps),
                    "p={p} r={r} N={n} k={k}"
                );
                // deg ω^{2k}|Λ = 2k·p^{2r−1}·deg S(N), and all degrees are integers.
                assert!(omega.is_integer());
                assert!(sheaf.is_integer());
            }
            assert!(dualizing.is_integer());
        }
    }

    #[test]
    fn degree_values() {
        // p=5, N=3: deg ω²|Λ = 40 = 24 + 16.
        assert_eq!(deg_omega_2k_restricted(5, 1, 3, 1).unwrap(), Rat::int(40));
        assert_eq!(deg_dualizing_restricted(5, 1, 3).unwrap(), Rat::int(24));
        assert_eq!(
            cusps_per_component(5, 1, 3).unwrap(),
            BigInt::from(16)
        );
        // p=2, N=3: deg ω²|Λ = 4 = 0 + 4.
        assert_eq!(deg_omega_2k_restricted(2, 1, 3, 1).unwrap(), Rat::int(4));
        assert_eq!(deg_dualizing_restricted(2, 1, 3).unwrap(), Rat::int(0));
        assert_eq!(deg_cusp_sheaf_restricted(5, 1, 3, 1).unwrap(), Rat::int(24));
    }

    #[test]
    fn per_component_bounds() {
        // (3,2), k=1: bound 30 away from p | a, 18 on A(3) (ν₃ = 1).
        assert_eq!(
            upper_bound_per_component(3, 2, 1, ComponentLabel::A(1)).unwrap(),
            30
        );
        assert_eq!(
            upper_bound_per_component(3, 2, 1, ComponentLabel::A(3)).unwrap(),
            18
        );
        assert_eq!(
            upper_bound_per_component(3, 2, 1, ComponentLabel::B(0)).unwrap(),
            30
        );
        assert!(upper_bound_per_component(3, 2, 1, ComponentLabel::A(0)).is_err());
        assert_eq!(exponent_upper(3, 2, 1).unwrap(), 30);
        assert_eq!(exponent_upper(5, 1, 1).unwrap(), 10);
        assert_eq!(exponent_upper(2, 3, 2).unwrap(), 64);
    }

    #[test]
    fn matrix_path_agrees_with_closed_bound() {
        for (p, r) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
            for k in [1u64, 2] {
                assert_eq!(
                    exponent_upper_via_matrix(p, r, k).unwrap(),
                    exponent_upper(p, r, k).unwrap(),
                    "p={p} r={r} k={k}"
                );
            }
        }
    }

    #[test]
    fn cusp_form_and_edixhoven() {
        // r = 1, k = 1: the two bounds coincide.
        for (p, n) in [(5u64, 3u64), (2, 3), (3, 4), (7, 5), (11, 3)] {
            assert_eq!(
                cusp_form_upper(p, 1, n, 1).unwrap(),
                edixhoven_bound(p, 1, n).unwrap(),
                "p={p} N={n}"
            );
        }
        assert_eq!(cusp_form_upper(5, 1, 3, 1).unwrap(), Rat::int(6));
        // r ≥ 2: the cusp-form path is strictly smaller.
        for (p, r, n) in [(2u64, 2u32, 3u64), (2, 3, 3), (3, 2, 4), (5, 2, 3)] {
            let cf = cusp_form_upper(p, r, n, 1).unwrap();
            let ed = edixhoven_bound(p, r, n).unwrap();
            assert!(cf < ed, "p={p} r={r} N={n}: {cf} vs {ed}");
        }
        // (2,2,3): 12 − 6 = 6.
        assert_eq!(cusp_form_upper(2, 2, 3, 1).unwrap(), Rat::int(6));
    }

    #[test]
    fn exponent_reports() {
        let rep = exponent_exact(5, 1, 3, 1).unwrap();
        assert_eq!(rep.upper, 10);
        assert_eq!(rep.lower, Some(10));
        assert_eq!(rep.exact, Some(10));
        assert_eq!(rep.per_component.len(), 5);
        assert!(rep.per_component.iter().all(|pc| pc.bound == 10));
        assert_eq!(rep.note, None);

        let rep = exponent_exact(3, 2, 4, 2).unwrap();
        assert_eq!(rep.upper, 60);
        assert_eq!(rep.lower, Some(60));
        assert_eq!(rep.exact, Some(60));
        assert_eq!(rep.per_component.len(), 11);

        // p^r ∈ {2,3}: no certificate family; lower/exact absent.
        let rep = exponent_exact(2, 1, 3, 1).unwrap();
        assert_eq!(rep.upper, 4);
        assert_eq!(rep.lower, None);
        assert_eq!(rep.exact, None);
        assert!(rep.note.as_deref().unwrap().contains("no certificate family"));
        let rep = exponent_exact(3, 1, 4, 1).unwrap();
        assert_eq!(rep.lower, None);

        assert!(exponent_exact(5, 1, 3, 0).is_err());
        assert!(exponent_exact(5, 1, 15, 1).is_err());
    }

    #[test]
    fn report_serialization_is_stable() {
        let rep = exponent_exact(2, 2, 3, 1).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        assert_eq!(
            json,
            concat!(
                r#"{"p":2,"r":2,"N":3,"k":1,"upper":12,"lower":12,"exact":12,"#,
                r#""perComponent":[{"label":"A(1)","bound":12},{"label":"A(2)","bound":8},"#,
                r#"{"label":"A(3)","bound":12},{"label":"B(0)","bound":12},"#,
                r#"{"label":"B(1)","bound":12}],"cuspFormUpper":"6","edixhovenBound":"8","note":null}"#
            )
        );
    }
}
