//! The special fiber of X(Np^r): component labels, the intersection matrix M,
//! its truncation T (the component of the cusp ∞ removed), and closed-form
//! entries and row sums of T^{-1}.
//!
//! The special fiber is a union of p^r + p^{r−1} copies of the Igusa curve,
//! labeled Λ_{(1,−a)} for a ∈ Z/p^r (kind A) and Λ_{(−pb,1)} for
//! b ∈ Z/p^{r−1} (kind B), crossing at the supersingular points. All
//! matrices here are deg S(N)-normalized — the common factor
//! deg S(N) = (p−1)·#SL₂(Z/NZ)/24 is carried separately in [`CurveData`]
//! and reattached only in reporting. Intersection numbers of distinct
//! components are governed by the index of the sum of the corresponding
//! kernels in (Z/p^r)², which is also implemented here as a brute-force
//! subgroup-enumeration oracle.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, nu_p_int, nu_p_residue, upow, Rat};
use crate::error::{Error, Result};
use crate::linalg::{Circulant, Mat};

/// A label of an irreducible component of the special fiber.
///
/// `A(a)` is Λ_{(1,−a)} for a ∈ {0, …, p^r−1}; `B(b)` is Λ_{(−pb,1)} for
/// b ∈ {0, …, p^{r−1}−1}. `A(0)` is the component containing the cusp ∞;
/// its row and column are removed from M to form T.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentLabel {
    /// Λ_{(1,−a)}.
    A(u64),
    /// Λ_{(−pb,1)}.
    B(u64),
}

impl ComponentLabel {
    /// Checks that the label exists for the given (p, r).
    pub fn validate(&self, p: u64, r: u32) -> Result<()> {
        validate_pr(p, r)?;
        let ok = match *self {
            ComponentLabel::A(a) => a < upow(p, r),
            ComponentLabel::B(b) => b < upow(p, r - 1),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidLabel(format!(
                "{self} out of range for p^r = {}",
                upow(p, r)
            )))
        }
    }

    /// Generator of the kernel in (Z/p^r)² of the defining linear form:
    /// (a, 1) for Λ_{(1,−a)} and (1, pb) for Λ_{(−pb,1)}.
    fn kernel_generator(&self, p: u64, r: u32) -> (u64, u64) {
        let n = upow(p, r);
        match *self {
            ComponentLabel::A(a) => (a % n, 1),
            ComponentLabel::B(b) => (1, (p * b) % n),
        }
    }

    /// Position of the label in the fixed matrix order
    /// A(0), …, A(p^r−1), B(0), …, B(p^{r−1}−1) (0-based).
    pub fn matrix_index(&self, p: u64, r: u32) -> Result<usize> {
        self.validate(p, r)?;
        Ok(match *self {
            ComponentLabel::A(a) => a as usize,
            ComponentLabel::B(b) => upow(p, r) as usize + b as usize,
        })
    }
}

impl std::fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComponentLabel::A(a) => write!(f, "A({a})"),
            ComponentLabel::B(b) => write!(f, "B({b})"),
        }
    }
}

impl std::str::FromStr for ComponentLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s
            .strip_prefix('A')
            .map(|rest| (true, rest))
            .or_else(|| s.strip_prefix('B').map(|rest| (false, rest)));
        let (is_a, rest) = body.ok_or_else(|| {
            Error::Parse(format!("label {s:?} must look like A(3) or B(0)"))
        })?;
        let digits = rest
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("label {s:?} must look like A(3) or B(0)")))?;
        let idx: u64 = digits
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad label index in {s:?}: {e}")))?;
        Ok(if is_a {
            ComponentLabel::A(idx)
        } else {
            ComponentLabel::B(idx)
        })
    }
}

impl Serialize for ComponentLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ComponentLabel {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Curve parameters: p, r, the auxiliary level N (≥ 3, coprime to p), and
/// the normalization factor deg S(N) = (p−1)·#SL₂(Z/NZ)/24 common to all
/// intersection numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveData {
    p: u64,
    r: u32,
    #[serde(rename = "N")]
    level_n: u64,
    #[serde(rename = "degS")]
    deg_s: Rat,
}

impl CurveData {
    /// Validates parameters and computes deg S(N).
    pub fn new(p: u64, r: u32, level_n: u64) -> Result<Self> {
        validate_pr(p, r)?;
        let deg_s = crate::invariants::deg_ss(level_n, p)?;
        Ok(CurveData {
            p,
            r,
            level_n,
            deg_s,
        })
    }

    /// The prime p.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The exponent r ≥ 1.
    pub fn r(&self) -> u32 {
        self.r
    }

    /// The auxiliary level N.
    pub fn level_n(&self) -> u64 {
        self.level_n
    }

    /// deg S(N), the factor all normalized matrices carry implicitly.
    pub fn deg_s(&self) -> &Rat {
        &self.deg_s
    }
}

fn validate_pr(p: u64, r: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidParams("r must be ≥ 1".into()));
    }
    Ok(())
}

/// All component labels in the fixed matrix order
/// A(0), …, A(p^r−1), B(0), …, B(p^{r−1}−1).
pub fn all_labels(p: u64, r: u32) -> Result<Vec<ComponentLabel>> {
    validate_pr(p, r)?;
    let mut labels = Vec::with_capacity((upow(p, r) + upow(p, r - 1)) as usize);
    labels.extend((0..upow(p, r)).map(ComponentLabel::A));
    labels.extend((0..upow(p, r - 1)).map(ComponentLabel::B));
    Ok(labels)
}

/// The deg S(N)-normalized intersection number of two components:
/// 1 for mixed kinds; p^{2ν_p(a−a′)} for distinct A-pairs (ν_p on residues
/// mod p^r); p^{2ν_p(b−b′)+2} for distinct B-pairs (residues mod p^{r−1});
/// −p^{2r−1} for equal labels (self-intersection).
pub fn local_intersection(
    l1: ComponentLabel,
    l2: ComponentLabel,
    p: u64,
    r: u32,
) -> Result<Rat> {
    l1.validate(p, r)?;
    l2.validate(p, r)?;
    if l1 == l2 {
        return Ok(-Rat::int(upow(p, 2 * r - 1)));
    }
    let v = match (l1, l2) {
        (ComponentLabel::A(a), ComponentLabel::A(a2)) => {
            let nu = nu_p_residue(a as i64 - a2 as i64, p, r)?;
            upow(p, 2 * nu as u32)
        }
        (ComponentLabel::B(b), ComponentLabel::B(b2)) => {
            // Distinct B-labels exist only for r ≥ 2.
            let nu = nu_p_residue(b as i64 - b2 as i64, p, r - 1)?;
            upow(p, 2 * nu as u32 + 2)
        }
        _ => 1,
    };
    Ok(Rat::int(v))
}

/// Brute-force oracle for [`local_intersection`], independent of the closed
/// forms.
///
/// For distinct components the local intersection number at a supersingular
/// point is the square of the index [(Z/p^r)² : K₁ + K₂] of the sum of the
/// kernels of the two defining linear forms; the subgroup K₁ + K₂ is
/// enumerated explicitly (feasible for p^r ≤ 9). For equal labels the
/// self-intersection is recovered from the kernel property M·(all ones) = 0:
/// it is minus the sum of the oracle values against every other component.
pub fn local_intersection_oracle(
    l1: ComponentLabel,
    l2: ComponentLabel,
    p: u64,
    r: u32,
) -> Result<Rat> {
    l1.validate(p, r)?;
    l2.validate(p, r)?;
    if l1 != l2 {
        let index = kernel_sum_index(l1, l2, p, r);
        return Ok(Rat::int(index * index));
    }
    let mut acc = Rat::zero();
    for other in all_labels(p, r)? {
        if other != l1 {
            let index = kernel_sum_index(l1, other, p, r);
            acc += Rat::int(index * index);
        }
    }
    Ok(-acc)
}

/// Index of K₁ + K₂ in (Z/p^r)², with K_i the kernel generated by the
/// label's kernel generator.
fn kernel_sum_index(l1: ComponentLabel, l2: ComponentLabel, p: u64, r: u32) -> i64 {
    let n = upow(p, r);
    let g1 = l1.kernel_generator(p, r);
    let g2 = l2.kernel_generator(p, r);
    let mut elements = BTreeSet::new();
    for s in 0..n {
        let base = ((s * g1.0) % n, (s * g1.1) % n);
        for t in 0..n {
            elements.insert(((base.0 + t * g2.0) % n, (base.1 + t * g2.1) % n));
        }
    }
    ((n * n) / elements.len() as u64) as i64
}

/// The circulant M(p^r): first column c₀ = −p^{2r−1},
/// c_k = p^{2ν_p(k)} for 1 ≤ k ≤ p^r−1. By convention M(p⁰) = (−1/p).
pub fn m_circulant(p: u64, r: u32) -> Result<Circulant> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Circulant::new(vec![Rat::new(-1, p as i64)]);
    }
    let n = upow(p, r);
    let mut col = Vec::with_capacity(n as usize);
    col.push(-Rat::int(upow(p, 2 * r - 1)));
    for k in 1..n {
        let nu = nu_p_residue(k as i64, p, r)?;
        col.push(Rat::int(upow(p, 2 * nu as u32)));
    }
    Circulant::new(col)
}

/// Closed-form eigenvalue λ_j of M(p^r) (1 ≤ j ≤ p^r):
/// λ₁ = −p^{r−1} and λ_j = −p^{2r−2−ν_p(j−1)}·(p+1) for j ≥ 2.
pub fn m_eigenvalue_closed(p: u64, r: u32, j: usize) -> Result<Rat> {
    validate_pr(p, r)?;
    let n = upow(p, r) as usize;
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange(format!("j = {j} not in 1..={n}")));
    }
    if j == 1 {
        return Ok(-Rat::int(upow(p, r - 1)));
    }
    let nu = nu_p_residue((j - 1) as i64, p, r)? as u32;
    Ok(-Rat::int(upow(p, 2 * r - 2 - nu)) * Rat::int(p as i64 + 1))
}

/// The deg S(N)-normalized intersection matrix M, size p^r + p^{r−1}, in
/// the fixed label order. Top-left block is the circulant M(p^r), the
/// off-diagonal blocks are all ones, and the bottom-right block is
/// p²·M(p^{r−1}).
pub fn build_m(p: u64, r: u32) -> Result<Mat> {
    let labels = all_labels(p, r)?;
    let size = labels.len();
    let mut entries = Vec::with_capacity(size * size);
    for &li in &labels {
        for &lj in &labels {
            entries.push(local_intersection(li, lj, p, r)?);
        }
    }
    Mat::new(size, size, entries)
}

/// The truncated matrix T: [`build_m`] with the row and column of A(0)
/// (the component containing the cusp ∞) removed. Size p^r + p^{r−1} − 1.
pub fn build_t(p: u64, r: u32) -> Result<Mat> {
    build_m(p, r)?.remove_row_col(0, 0)
}

fn check_index(p: u64, r: u32, i: usize, max: usize) -> Result<()> {
    let _ = (p, r);
    if i == 0 || i > max {
        return Err(Error::IndexOutOfRange(format!("index {i} not in 1..={max}")));
    }
    Ok(())
}

/// Closed-form entry b_{i,j} of M(p^r)^{-1} (1-based, 1 ≤ i, j ≤ p^r):
/// on the diagonal −p^{1−2r}·(1 + r(p−1)/(p+1)), off the diagonal
/// −p^{1−2r} − (p^{2−3r}/(p+1))·(−p^{r−1} + ν_p(i−j)·p^{r−1}(p−1)) with
/// ν_p taken on the residue (i−j) mod p^r.
pub fn m_inverse_closed(p: u64, r: u32, i: usize, j: usize) -> Result<Rat> {
    validate_pr(p, r)?;
    let n = upow(p, r) as usize;
    check_index(p, r, i, n)?;
    check_index(p, r, j, n)?;
    let pr = Rat::int(p as i64);
    let p1_2r = Rat::prime_power(p, 1 - 2 * r as i64);
    let p_plus_1 = &pr + &Rat::one();
    if i == j {
        let frac = (&pr - &Rat::one()) / &p_plus_1;
        return Ok(-&p1_2r - &(&frac * &Rat::int(r as i64)) * &p1_2r);
    }
    let nu = nu_p_residue(i as i64 - j as i64, p, r)?;
    let p2_3r = Rat::prime_power(p, 2 - 3 * r as i64);
    let pr1 = Rat::prime_power(p, r as i64 - 1);
    let inner = -&pr1 + &(&Rat::int(nu) * &pr1) * &(&pr - &Rat::one());
    Ok(-&p1_2r - &(&p2_3r / &p_plus_1) * &inner)
}

/// Closed-form entry a_{i,j} of (M(p^r)_{1̂,1̂})^{-1} — the inverse of
/// M(p^r) with its first row and column removed — for 1 ≤ i, j ≤ p^r−1.
///
/// With ℓ_x = ν_p(x) (residues mod p^r) and D = (p+1)(pr+p−r+1):
/// diagonal  −p^{1−2r}(1 + r(p−1)/(p+1)) + p^{1−2r}(ℓ_i p − ℓ_i + p)²/D,
/// off-diag  −p^{1−2r}(ℓ_{i−j} p + p − ℓ_{i−j})/(p+1)
///           + p^{1−2r}(ℓ_i p + p − ℓ_i)(ℓ_j p + p − ℓ_j)/D.
pub fn m11_inverse_closed(p: u64, r: u32, i: usize, j: usize) -> Result<Rat> {
    validate_pr(p, r)?;
    let n = upow(p, r) as usize;
    check_index(p, r, i, n - 1)?;
    check_index(p, r, j, n - 1)?;
    let pr = Rat::int(p as i64);
    let p1_2r = Rat::prime_power(p, 1 - 2 * r as i64);
    let p_plus_1 = &pr + &Rat::one();
    let d_denom = &p_plus_1
        * &Rat::int(p as i64 * r as i64 + p as i64 - r as i64 + 1);
    // weight(x) = ℓ_x·p + p − ℓ_x = ℓ_x(p−1) + p.
    let weight = |l: i64| Rat::int(l * (p as i64 - 1) + p as i64);
    let li = nu_p_residue(i as i64, p, r)?;
    if i == j {
        let frac = (&pr - &Rat::one()) / &p_plus_1;
        let base = -&p1_2r - &(&frac * &Rat::int(r as i64)) * &p1_2r;
        let w = weight(li);
        return Ok(&base + &(&(&p1_2r * &(&w * &w)) / &d_denom));
    }
    let lj = nu_p_residue(j as i64, p, r)?;
    let lij = nu_p_residue(i as i64 - j as i64, p, r)?;
    let first = -&(&p1_2r * &weight(lij)) / &p_plus_1;
    let second = &(&p1_2r * &(&weight(li) * &weight(lj))) / &d_denom;
    Ok(&first + &second)
}

/// Closed-form entry deg S(N)·c^{i,j} of T^{-1} (1-based indices
/// 1 ≤ i, j ≤ p^r + p^{r−1} − 1).
///
/// Indices 1..p^r−1 are the A-components A(1)..A(p^r−1); indices
/// p^r..p^r+p^{r−1}−1 are B(0)..B(p^{r−1}−1). The six cases (with
/// P = p^{1−2r}, Q = pr−r+1, all divided by p+1):
/// A-diagonal −2PQ + 2P(p−1)ν_p(i); A-off-diagonal
/// −PQ − P(p−1)·(ν_p(i−j) − ν_p(i) − ν_p(j)) (the term ν_p(1/j − 1/i),
/// evaluated on residues mod p^r); A-row/B-column −PQ + P(p−1)ν_p(i);
/// B-row/A-column −PQ + P(p−1)ν_p(j); B-diagonal −2PQ; B-off-diagonal
/// −P(pr+p−r) − P(p−1)ν_p(i−j) (difference of B-indices, an integer of
/// magnitude < p^{r−1}).
pub fn tinv_closed(p: u64, r: u32, i: usize, j: usize) -> Result<Rat> {
    validate_pr(p, r)?;
    let npr = upow(p, r) as usize;
    let size = npr + upow(p, r - 1) as usize - 1;
    check_index(p, r, i, size)?;
    check_index(p, r, j, size)?;
    let p_plus_1 = Rat::int(p as i64 + 1);
    let prefac = Rat::prime_power(p, 1 - 2 * r as i64) / &p_plus_1; // P/(p+1)
    let q_cap = Rat::int(p as i64 * r as i64 - r as i64 + 1);
    let p_minus_1 = Rat::int(p as i64 - 1);
    let i_is_a = i < npr;
    let j_is_a = j < npr;
    let two = Rat::int(2);
    let val = match (i_is_a, j_is_a) {
        (true, true) => {
            let nui = Rat::int(nu_p_residue(i as i64, p, r)?);
            if i == j {
                &(-&(&two * &q_cap)) + &(&(&two * &p_minus_1) * &nui)
            } else {
                let nuj = Rat::int(nu_p_residue(j as i64, p, r)?);
                let nuij = Rat::int(nu_p_residue(i as i64 - j as i64, p, r)?);
                let combo = &(&nuij - &nui) - &nuj;
                &(-&q_cap) - &(&p_minus_1 * &combo)
            }
        }
        (true, false) => {
            let nui = Rat::int(nu_p_residue(i as i64, p, r)?);
            &(-&q_cap) + &(&p_minus_1 * &nui)
        }
        (false, true) => {
            let nuj = Rat::int(nu_p_residue(j as i64, p, r)?);
            &(-&q_cap) + &(&p_minus_1 * &nuj)
        }
        (false, false) => {
            if i == j {
                -&(&two * &q_cap)
            } else {
                let nu = Rat::int(nu_p_int(i as i64 - j as i64, p)?);
                let head = Rat::int(p as i64 * r as i64 + p as i64 - r as i64);
                &(-&head) - &(&p_minus_1 * &nu)
            }
        }
    };
    Ok(&prefac * &val)
}

/// T^{-1} assembled entry-by-entry from [`tinv_closed`]
/// (deg S(N)-normalized, like [`build_t`]).
pub fn tinv_closed_matrix(p: u64, r: u32) -> Result<Mat> {
    validate_pr(p, r)?;
    let size = (upow(p, r) + upow(p, r - 1)) as usize - 1;
    let mut entries = Vec::with_capacity(size * size);
    for i in 1..=size {
        for j in 1..=size {
            entries.push(tinv_closed(p, r, i, j)?);
        }
    }
    Mat::new(size, size, entries)
}

/// Closed-form row sum deg S(N)·Σ_{Λ′≠A(0)} c^{label,Λ′} of T^{-1}:
/// −p^{−r}(pr−r+1) + p^{−r}(p−1)ν_p(a) for label A(a), and
/// −p^{−r}(pr−r+1) for B-labels.
///
/// Errors when the label is A(0) (that row is not part of T).
pub fn tinv_rowsum(p: u64, r: u32, label: ComponentLabel) -> Result<Rat> {
    label.validate(p, r)?;
    let p_mr = Rat::prime_power(p, -(r as i64));
    let q_cap = Rat::int(p as i64 * r as i64 - r as i64 + 1);
    let base = -&p_mr * &q_cap;
    match label {
        ComponentLabel::A(0) => Err(Error::InvalidLabel(
            "A(0) is removed from T; its row sum is undefined".into(),
        )),
        ComponentLabel::A(a) => {
            let nu = Rat::int(nu_p_residue(a as i64, p, r)?);
            Ok(&base + &(&(&p_mr * &Rat::int(p as i64 - 1)) * &nu))
        }
        ComponentLabel::B(_) => Ok(base),
    }
}

/// T^{-1}·a for a vector indexed by the components ≠ A(0) in matrix order.
///
/// Both sides are deg S(N)-normalized: T^{-1} here is the inverse of the
/// normalized [`build_t`], so callers must divide degree inputs by deg S(N)
/// first — the degS factors cancel in the valuation-difference formula.
pub fn valuation_differences(p: u64, r: u32, a: &[Rat]) -> Result<Vec<Rat>> {
    validate_pr(p, r)?;
    let size = (upow(p, r) + upow(p, r - 1)) as usize - 1;
    if a.len() != size {
        return Err(Error::DimensionMismatch(format!(
            "expected {size} entries, got {}",
            a.len()
        )));
    }
    tinv_closed_matrix(p, r)?.mul_vec(a)
}
