//! Runtime self-verification: every closed form in the crate re-derived
//! against an independent oracle.
//!
//! Four suites mirror the crate layout (`arith`, `linalg`, `xcurve`,
//! `klein`). Each check is pure; randomized corpora are drawn from
//! fixed-seed ChaCha20 streams, so repeated runs of the same binary produce
//! identical reports. Timing is recorded for the human-readable rendering
//! but deliberately left out of the serialized form, which must be
//! byte-identical across runs.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::arith::{
    cyc_inv, euler_phi, nu_p_int, pi_valuation, root_of_unity_sum, root_of_unity_sum_brute,
    sum_nup, sum_nup_brute, sum_nup_shifted, sum_nup_shifted_brute, sum_p2vp, sum_p2vp_brute,
    upow, CycElt, Rat,
};
use crate::error::{Error, Result};
use crate::invariants;
use crate::klein;
use crate::linalg::{
    block_ones_inverse, gauss_inverse, minor_removed_inverse, woodbury, Circulant, Mat,
};
use crate::xcurve;

/// Outcome of a single named check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    /// What was checked.
    pub name: String,
    /// Whether the oracle comparison held exactly.
    pub passed: bool,
    /// Wall-clock time in milliseconds. Shown in text reports only; kept
    /// out of JSON so that serialized reports are deterministic.
    #[serde(skip_serializing)]
    pub millis: u64,
    /// Deterministic one-line summary (corpus sizes on success, the first
    /// counterexample on failure).
    pub detail: String,
}

/// Outcome of one suite: its checks in a fixed order.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    /// Suite name: arith, linalg, xcurve or klein.
    pub suite: String,
    /// Conjunction of all member checks.
    pub passed: bool,
    /// Per-check outcomes, in execution order.
    pub checks: Vec<CheckReport>,
}

/// The suite names accepted by [`run_suite`], besides `all`.
pub const SUITE_NAMES: [&str; 4] = ["arith", "linalg", "xcurve", "klein"];

/// Runs the named suite (or every suite for `all`) and collects reports.
///
/// Errors with [`Error::InvalidParams`] for an unknown name; a failing
/// check is reported, not an error.
pub fn run_suite(name: &str) -> Result<Vec<SuiteReport>> {
    match name {
        "all" => Ok(vec![
            suite_arith(),
            suite_linalg(),
            suite_xcurve(),
            suite_klein(),
        ]),
        "arith" => Ok(vec![suite_arith()]),
        "linalg" => Ok(vec![suite_linalg()]),
        "xcurve" => Ok(vec![suite_xcurve()]),
        "klein" => Ok(vec![suite_klein()]),
        other => Err(Error::InvalidParams(format!(
            "unknown suite '{other}' (expected all, arith, linalg, xcurve or klein)"
        ))),
    }
}

/// True when every check of every report passed.
pub fn all_passed(reports: &[SuiteReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

type CheckOutcome = std::result::Result<String, String>;

trait OrFail<T> {
    fn or_fail(self) -> std::result::Result<T, String>;
}

impl<T> OrFail<T> for Result<T> {
    fn or_fail(self) -> std::result::Result<T, String> {
        self.map_err(|e| format!("internal error: {e}"))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_check(name: &str, f: impl FnOnce() -> CheckOutcome) -> CheckReport {
    let start = std::time::Instant::now();
    let outcome = f();
    let millis = start.elapsed().as_millis() as u64;
    let (passed, detail) = match outcome {
        Ok(detail) => (true, detail),
        Err(detail) => (false, detail),
    };
    CheckReport {
        name: name.to_string(),
        passed,
        millis,
        detail,
    }
}

fn finish_suite(suite: &str, checks: Vec<CheckReport>) -> SuiteReport {
    SuiteReport {
        suite: suite.to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

/// All prime powers p^r ≤ 27 as (p, r).
fn prime_powers_27() -> Vec<(u64, u32)> {
    vec![
        (2, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 1),
        (3, 2),
        (3, 3),
        (5, 1),
        (5, 2),
        (7, 1),
        (11, 1),
        (13, 1),
        (17, 1),
        (19, 1),
        (23, 1),
    ]
}

/// The standard matrix grid: (p, r) with p^r ∈ {2, 4, 8, 3, 9, 5, 7}.
fn matrix_grid() -> Vec<(u64, u32)> {
    vec![(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]
}

/// Prime powers small enough for full cyclotomic brute force (p^r ≤ 9).
fn small_grid() -> Vec<(u64, u32)> {
    vec![(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]
}

// ---------------------------------------------------------------------------
// arith suite
// ---------------------------------------------------------------------------

/// Checks the number-theoretic layer: closed-form sums against brute force,
/// π-adic valuations against their defining properties, and cyclotomic
/// inversion round-trips.
pub fn suite_arith() -> SuiteReport {
    let mut checks = Vec::new();

    checks.push(run_check("closed sums match brute force (p^r <= 27)", || {
        let mut cases = 0usize;
        for (p, r) in prime_powers_27() {
            let lhs = sum_p2vp(p, r).or_fail()?;
            let rhs = sum_p2vp_brute(p, r).or_fail()?;
            ensure(lhs == rhs, || {
                format!("sum_p2vp({p}, {r}): closed {lhs} != brute {rhs}")
            })?;
            let lhs = sum_nup(p, r).or_fail()?;
            let rhs = sum_nup_brute(p, r).or_fail()?;
            ensure(lhs == rhs, || {
                format!("sum_nup({p}, {r}): closed {lhs} != brute {rhs}")
            })?;
            cases += 2;
            for i in 1..upow(p, r) as i64 {
                let lhs = sum_nup_shifted(p, r, i).or_fail()?;
                let rhs = sum_nup_shifted_brute(p, r, i).or_fail()?;
                ensure(lhs == rhs, || {
                    format!("sum_nup_shifted({p}, {r}, {i}): closed {lhs} != brute {rhs}")
                })?;
                cases += 1;
            }
        }
        Ok(format!("{cases} sums on 15 prime powers"))
    }));

    checks.push(run_check("root-of-unity sums collapse as predicted", || {
        let mut cases = 0usize;
        for (p, n_exp) in matrix_grid() {
            let pn = upow(p, n_exp);
            for j in 1..=(2 * pn) {
                let closed = Rat::int(root_of_unity_sum(p, n_exp, j).or_fail()?);
                let brute = root_of_unity_sum_brute(p, n_exp, j).or_fail()?;
                ensure(closed == brute, || {
                    format!("root_of_unity_sum({p}, {n_exp}, {j}): closed {closed} != brute {brute}")
                })?;
                cases += 1;
            }
        }
        Ok(format!("{cases} sums over Q(zeta) on 7 prime powers"))
    }));

    checks.push(run_check("pi-adic valuation is multiplicative", || {
        let mut rng = ChaCha20Rng::seed_from_u64(0x7061_6972);
        let grid = [(2u64, 2u32), (2, 3), (3, 2), (5, 1), (7, 1)];
        for trial in 0..200 {
            let (p, r) = grid[trial % grid.len()];
            let x = random_cyc(&mut rng, p, r);
            let y = random_cyc(&mut rng, p, r);
            let vx = pi_valuation(&x, p, r).or_fail()?;
            let vy = pi_valuation(&y, p, r).or_fail()?;
            let xy = x.mul(&y).or_fail()?;
            let vxy = pi_valuation(&xy, p, r).or_fail()?;
            ensure(vxy == vx + vy, || {
                format!(
                    "trial {trial} (p = {p}, r = {r}): nu(xy) = {vxy} but nu(x) + nu(y) = {}",
                    vx + vy
                )
            })?;
        }
        Ok("200 seeded pairs over 5 cyclotomic fields".to_string())
    }));

    checks.push(run_check("nu_pi(1 - zeta^t) = p^{nu_p(t)}", || {
        let mut cases = 0usize;
        for (p, r) in matrix_grid() {
            let pr = upow(p, r);
            for t in 1..pr {
                let zeta_t = CycElt::zeta_pow(pr, t as i64).or_fail()?;
                let x = CycElt::one(pr).sub(&zeta_t).or_fail()?;
                let got = pi_valuation(&x, p, r).or_fail()?;
                let want = upow(p, nu_p_int(t as i64, p).or_fail()? as u32) as i64;
                ensure(got == want, || {
                    format!("p = {p}, r = {r}, t = {t}: nu_pi = {got}, expected {want}")
                })?;
                cases += 1;
            }
        }
        Ok(format!("{cases} generators across 7 prime powers"))
    }));

    checks.push(run_check("cyclotomic inversion round-trips", || {
        // Closed example first: (1 - zeta_5)^{-1} = (4 + 3z + 2z^2 + z^3)/5.
        let zeta = CycElt::zeta_pow(5, 1).or_fail()?;
        let x = CycElt::one(5).sub(&zeta).or_fail()?;
        let inv = cyc_inv(&x).or_fail()?;
        let want = CycElt::new(
            5,
            vec![Rat::new(4, 5), Rat::new(3, 5), Rat::new(2, 5), Rat::new(1, 5)],
        )
        .or_fail()?;
        ensure(inv == want, || format!("(1 - zeta_5)^{{-1}} = {inv:?}, expected {want:?}"))?;

        let mut rng = ChaCha20Rng::seed_from_u64(0x696e_7673);
        let grid = [(2u64, 2u32), (2, 3), (3, 2), (5, 1), (7, 1)];
        for trial in 0..50 {
            let (p, r) = grid[trial % grid.len()];
            let x = random_cyc(&mut rng, p, r);
            let inv = cyc_inv(&x).or_fail()?;
            let prod = x.mul(&inv).or_fail()?;
            ensure(prod == CycElt::one(upow(p, r)), || {
                format!("trial {trial} (p = {p}, r = {r}): x * x^{{-1}} != 1")
            })?;
        }
        Ok("closed example plus 50 seeded round-trips".to_string())
    }));

    finish_suite("arith", checks)
}

/// A uniformly random nonzero element with coefficients in −3..=3.
fn random_cyc(rng: &mut ChaCha20Rng, p: u64, r: u32) -> CycElt {
    let n = upow(p, r);
    let phi = euler_phi(n) as usize;
    loop {
        let coeffs: Vec<Rat> = (0..phi).map(|_| Rat::int(rng.gen_range(-3i64..=3))).collect();
        let elt = CycElt::new(n, coeffs).expect("coefficient vector has length phi(n)");
        if !elt.is_zero() {
            return elt;
        }
    }
}

// ---------------------------------------------------------------------------
// linalg suite
// ---------------------------------------------------------------------------

/// Checks the exact linear algebra: the three update formulas and the
/// circulant spectral inverse against Gauss–Jordan elimination on seeded
/// random instances.
pub fn suite_linalg() -> SuiteReport {
    let mut checks = Vec::new();

    checks.push(run_check("woodbury update matches gauss on 100 instances", || {
        let mut rng = ChaCha20Rng::seed_from_u64(0x776f_6f64);
        let mut done = 0usize;
        while done < 100 {
            let n = rng.gen_range(2usize..=5);
            let k = rng.gen_range(1usize..=2);
            let (a, a_inv) = random_invertible(&mut rng, n);
            let (c, c_inv) = random_invertible(&mut rng, k);
            let u = random_mat(&mut rng, n, k);
            let v = random_mat(&mut rng, k, n);
            let updated = a.add(&u.mul(&c).or_fail()?.mul(&v).or_fail()?).or_fail()?;
            let got = match woodbury(&a_inv, &u, &c_inv, &v) {
                Ok(m) => m,
                Err(Error::RankUpdateSingular(_)) => continue,
                Err(e) => return Err(format!("internal error: {e}")),
            };
            let want = gauss_inverse(&updated).or_fail()?;
            ensure(got == want, || {
                format!("instance {done}: woodbury disagrees with gauss (n = {n}, k = {k})")
            })?;
            done += 1;
        }
        Ok("100 seeded updates, ranks 1-2 on sizes 2-5".to_string())
    }));

    checks.push(run_check("minor-removal update matches gauss on 100 instances", || {
        let mut rng = ChaCha20Rng::seed_from_u64(0x6d69_6e6f);
        let mut done = 0usize;
        while done < 100 {
            let n = rng.gen_range(2usize..=5);
            let (a, a_inv) = random_invertible(&mut rng, n);
            let s = rng.gen_range(1usize..=n);
            let t = rng.gen_range(1usize..=n);
            if a_inv.get(t - 1, s - 1).is_zero() {
                continue; // pivot vanishes: the minor is singular
            }
            let minor = a.remove_row_col(s - 1, t - 1).or_fail()?;
            let got = minor_removed_inverse(&a_inv, s, t).or_fail()?;
            let want = gauss_inverse(&minor).or_fail()?;
            ensure(got == want, || {
                format!("instance {done}: minor removal disagrees with gauss (n = {n}, s = {s}, t = {t})")
            })?;
            done += 1;
        }
        Ok("100 seeded removals on sizes 2-5".to_string())
    }));

    checks.push(run_check("block-ones update matches gauss on 100 instances", || {
        let mut rng = ChaCha20Rng::seed_from_u64(0x626c_6f63);
        let mut done = 0usize;
        while done < 100 {
            let n = rng.gen_range(1usize..=3);
            let m = rng.gen_range(1usize..=3);
            let (a, a_inv) = random_invertible(&mut rng, n);
            let (b, b_inv) = random_invertible(&mut rng, m);
            let full = Mat::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
                (true, true) => a.get(i, j).clone(),
                (false, false) => b.get(i - n, j - n).clone(),
                _ => Rat::one(),
            });
            let got = match block_ones_inverse(&a_inv, &b_inv) {
                Ok(m) => m,
                Err(Error::RankUpdateSingular(_)) => continue,
                Err(e) => return Err(format!("internal error: {e}")),
            };
            let want = gauss_inverse(&full).or_fail()?;
            ensure(got == want, || {
                format!("instance {done}: block-ones update disagrees with gauss (n = {n}, m = {m})")
            })?;
            done += 1;
        }
        Ok("100 seeded block matrices, block sizes 1-3".to_string())
    }));

    checks.push(run_check("circulant spectral inverse matches gauss", || {
        let mut rng = ChaCha20Rng::seed_from_u64(0x6369_7263);
        let mut done = 0usize;
        while done < 50 {
            let n = rng.gen_range(1usize..=6);
            let col: Vec<Rat> = (0..n).map(|_| Rat::int(rng.gen_range(-4i64..=4))).collect();
            let c = Circulant::new(col).or_fail()?;
            let inv = match c.inverse() {
                Ok(inv) => inv,
                Err(_) => continue, // singular circulant: resample
            };
            let want = gauss_inverse(&c.materialize()).or_fail()?;
            ensure(inv.materialize() == want, || {
                format!("instance {done}: spectral inverse disagrees with gauss (n = {n})")
            })?;
            done += 1;
        }
        Ok("50 seeded circulants of sizes 1-6".to_string())
    }));

    finish_suite("linalg", checks)
}

fn random_mat(rng: &mut ChaCha20Rng, rows: usize, cols: usize) -> Mat {
    Mat::from_fn(rows, cols, |_, _| Rat::int(rng.gen_range(-4i64..=4)))
}

/// A random invertible square matrix with its exact inverse.
fn random_invertible(rng: &mut ChaCha20Rng, n: usize) -> (Mat, Mat) {
    loop {
        let m = random_mat(rng, n, n);
        if let Ok(inv) = gauss_inverse(&m) {
            return (m, inv);
        }
    }
}

// ---------------------------------------------------------------------------
// xcurve suite
// ---------------------------------------------------------------------------

/// Checks the component-geometry layer: intersection numbers against the
/// subgroup-index oracle, the closed-form inverse of T against Gauss–Jordan,
/// kernel/spectrum/negativity/row-sum facts, sheaf-degree bookkeeping, and
/// the exact exponent along both proof paths.
pub fn suite_xcurve() -> SuiteReport {
    let mut checks = Vec::new();

    checks.push(run_check("closed-form inverse of T is exact", || {
        for (p, r) in matrix_grid() {
            let t = xcurve::build_t(p, r).or_fail()?;
            let tinv = xcurve::tinv_closed_matrix(p, r).or_fail()?;
            let product = tinv.mul(&t).or_fail()?;
            ensure(product.is_identity(), || {
                format!("p = {p}, r = {r}: closed T^(-1) x T != I")
            })?;
            let want = gauss_inverse(&t).or_fail()?;
            ensure(tinv == want, || {
                format!("p = {p}, r = {r}: closed T^(-1) != gauss inverse")
            })?;
        }
        Ok("7 prime powers, both identity and gauss comparisons".to_string())
    }));

    checks.push(run_check("all-ones vector spans the kernel of M", || {
        for (p, r) in matrix_grid() {
            let m = xcurve::build_m(p, r).or_fail()?;
            let ones = vec![Rat::one(); m.cols()];
            let image = m.mul_vec(&ones).or_fail()?;
            ensure(image.iter().all(Rat::is_zero), || {
                format!("p = {p}, r = {r}: M x (1,...,1) != 0")
            })?;
        }
        Ok("7 prime powers".to_string())
    }));

    checks.push(run_check("circulant eigenpairs match closed forms (p^r <= 9)", || {
        let mut cases = 0usize;
        for (p, r) in small_grid() {
            let c = xcurve::m_circulant(p, r).or_fail()?;
            let mat = c.materialize();
            let n = c.n();
            for j in 1..=n {
                let (lambda, v) = c.eigen(j).or_fail()?;
                let closed = xcurve::m_eigenvalue_closed(p, r, j).or_fail()?;
                let rational = lambda
                    .to_rat()
                    .ok_or_else(|| format!("p = {p}, r = {r}, j = {j}: eigenvalue not rational"))?;
                ensure(rational == closed, || {
                    format!("p = {p}, r = {r}, j = {j}: lambda = {rational}, closed form {closed}")
                })?;
                for i in 0..n {
                    let mut lhs = CycElt::zero(upow(p, r));
                    for (k, vk) in v.iter().enumerate() {
                        lhs = lhs.add(&vk.scale(mat.get(i, k))).or_fail()?;
                    }
                    let rhs = lambda.mul(&v[i]).or_fail()?;
                    ensure(lhs == rhs, || {
                        format!("p = {p}, r = {r}, j = {j}: (Mv)_{i} != lambda v_{i}")
                    })?;
                }
                cases += 1;
            }
        }
        Ok(format!("{cases} eigenpairs verified entrywise in Q(zeta)"))
    }));

    checks.push(run_check("intersections match the subgroup-index oracle (p^r <= 9)", || {
        let mut cases = 0usize;
        for (p, r) in small_grid() {
            let labels = xcurve::all_labels(p, r).or_fail()?;
            for &l1 in &labels {
                for &l2 in &labels {
                    let closed = xcurve::local_intersection(l1, l2, p, r).or_fail()?;
                    let oracle = xcurve::local_intersection_oracle(l1, l2, p, r).or_fail()?;
                    ensure(closed == oracle, || {
                        format!("p = {p}, r = {r}, ({l1}, {l2}): closed {closed} != oracle {oracle}")
                    })?;
                    cases += 1;
                }
            }
        }
        Ok(format!("{cases} ordered label pairs"))
    }));

    checks.push(run_check("row sums of T^(-1) match closed forms", || {
        for (p, r) in matrix_grid() {
            let tinv = xcurve::tinv_closed_matrix(p, r).or_fail()?;
            let labels = xcurve::all_labels(p, r).or_fail()?;
            for (row, &label) in labels.iter().skip(1).enumerate() {
                let closed = xcurve::tinv_rowsum(p, r, label).or_fail()?;
                let direct = tinv.row_sum(row);
                ensure(closed == direct, || {
                    format!("p = {p}, r = {r}, {label}: closed {closed} != direct {direct}")
                })?;
                if (p, r) == (5, 1) {
                    ensure(closed == -Rat::one(), || {
                        format!("(5, 1) row {label}: sum {closed} != -1")
                    })?;
                }
            }
        }
        Ok("7 prime powers; (5, 1) rows all sum to -1".to_string())
    }));

    checks.push(run_check("every entry of T^(-1) is negative", || {
        let zero = Rat::zero();
        let mut cases = 0usize;
        for (p, r) in matrix_grid() {
            let tinv = xcurve::tinv_closed_matrix(p, r).or_fail()?;
            for i in 0..tinv.rows() {
                for j in 0..tinv.cols() {
                    ensure(tinv.get(i, j) < &zero, || {
                        format!("p = {p}, r = {r}: entry ({i}, {j}) = {} >= 0", tinv.get(i, j))
                    })?;
                    cases += 1;
                }
            }
        }
        Ok(format!("{cases} entries across 7 prime powers"))
    }));

    checks.push(run_check("sheaf degrees and cusp counts are consistent", || {
        let mut cases = 0usize;
        for n in [3u64, 4, 5, 7] {
            for (p, r) in matrix_grid() {
                if n % p == 0 {
                    continue;
                }
                let omega_sq = invariants::deg_omega_2k_restricted(p, r, n, 1).or_fail()?;
                let dualizing = invariants::deg_dualizing_restricted(p, r, n).or_fail()?;
                let cusps = invariants::cusps_per_component(p, r, n).or_fail()?;
                let sum = &dualizing + &Rat::new(cusps.clone(), 1);
                ensure(omega_sq == sum, || {
                    format!(
                        "N = {n}, p = {p}, r = {r}: deg omega^2 = {omega_sq} != {dualizing} + {cusps}"
                    )
                })?;
                let per_fiber = &cusps * BigInt::from(upow(p, r) + upow(p, r - 1));
                let total = invariants::num_cusps(n * upow(p, r)).or_fail()?;
                ensure(per_fiber == total, || {
                    format!(
                        "N = {n}, p = {p}, r = {r}: cusps {cusps} x (p^r + p^(r-1)) = {per_fiber} != {total}"
                    )
                })?;
                cases += 1;
            }
        }
        Ok(format!("{cases} (N, p, r) triples, both identities"))
    }));

    checks.push(run_check("upper bound agrees along both proof paths", || {
        for (p, r) in matrix_grid() {
            for k in 1..=2u64 {
                let closed = invariants::exponent_upper(p, r, k).or_fail()?;
                let matrix = invariants::exponent_upper_via_matrix(p, r, k).or_fail()?;
                ensure(closed == matrix, || {
                    format!("p = {p}, r = {r}, k = {k}: closed {closed} != matrix path {matrix}")
                })?;
            }
        }
        Ok("7 prime powers x k in {1, 2}".to_string())
    }));

    checks.push(run_check("exact exponent certified on the headline grid", || {
        for (p, r) in [(5u64, 1u32), (7, 1), (11, 1), (2, 2), (2, 3), (3, 2)] {
            let n = if p == 3 { 4 } else { 3 };
            for k in 1..=2u64 {
                let report = invariants::exponent_exact(p, r, n, k).or_fail()?;
                let want = (2 * k * upow(p, r - 1)) as i64
                    * (p as i64 * r as i64 - r as i64 + 1);
                ensure(report.exact == Some(want), || {
                    format!(
                        "p = {p}, r = {r}, k = {k}: exact = {:?}, expected {want}",
                        report.exact
                    )
                })?;
                ensure(report.lower == Some(report.upper), || {
                    format!(
                        "p = {p}, r = {r}, k = {k}: lower {:?} != upper {}",
                        report.lower, report.upper
                    )
                })?;
            }
        }
        Ok("6 prime powers x k in {1, 2}, all sharp".to_string())
    }));

    finish_suite("xcurve", checks)
}

// ---------------------------------------------------------------------------
// klein suite
// ---------------------------------------------------------------------------

/// Checks the certificate layer: standard families, their q-expansions,
/// both valuation paths, the fractional-part margins, and the exhaustive
/// family search.
pub fn suite_klein() -> SuiteReport {
    let mut checks = Vec::new();
    let certified: [(u64, u32); 8] = [
        (2, 2),
        (5, 1),
        (7, 1),
        (2, 3),
        (3, 2),
        (11, 1),
        (2, 4),
        (5, 2),
    ];

    checks.push(run_check("standard families satisfy congruence and holomorphy", || {
        for &(p, r) in &certified {
            let fam = klein::standard_family(p, r).or_fail()?;
            ensure(klein::check_congruence(&fam), || {
                format!("p = {p}, r = {r}: family {fam} fails the congruence")
            })?;
            ensure(klein::is_holomorphic(&fam), || {
                format!("p = {p}, r = {r}: family {fam} has a pole at some cusp")
            })?;
        }
        Ok("8 prime powers: p^r in {4, 5, 7, 8, 9, 11, 16, 25}".to_string())
    }));

    checks.push(run_check("valuations at 0 agree along both paths and are sharp", || {
        for &(p, r) in &certified {
            let fam = klein::standard_family(p, r).or_fail()?;
            let direct = klein::valuation_at_zero(&fam).or_fail()?;
            let via_pi = klein::valuation_at_zero_via_pi(&fam).or_fail()?;
            ensure(direct == via_pi, || {
                format!(
                    "p = {p}, r = {r}: direct valuation {direct} != pi-adic {via_pi} (the pi-adic value is authoritative)"
                )
            })?;
            for k in 1..=2u64 {
                let lower = klein::lower_bound(p, r, k).or_fail()?;
                let upper = invariants::exponent_upper(p, r, k).or_fail()?;
                ensure(lower == upper, || {
                    format!("p = {p}, r = {r}, k = {k}: lower {lower} != upper {upper}")
                })?;
            }
        }
        Ok("8 prime powers x k in {1, 2}".to_string())
    }));

    checks.push(run_check("p = 7 expansion at infinity matches the hand computation", || {
        let fam = klein::standard_family(7, 1).or_fail()?;
        let series = klein::qexp_infinity(&fam, 8).or_fail()?;
        ensure(series.denominator_d == 1, || {
            format!("denominator D = {}, expected 1", series.denominator_d)
        })?;
        ensure(series.leading_exponent == Rat::int(2), || {
            format!("leading exponent {}, expected 2", series.leading_exponent)
        })?;
        let infinity = klein::CuspClass::new(7, 7, 1).or_fail()?;
        let order = klein::cusp_order(&fam, &infinity);
        ensure(order == Rat::int(2), || {
            format!("cusp order at infinity {order}, expected 2")
        })?;
        let want: Vec<Rat> = [1, 0, -2, 4, 5, -10, 2, 20].iter().map(|&c| Rat::int(c)).collect();
        ensure(series.coeffs == want, || {
            format!("coefficients {:?} differ from the hand expansion", series.coeffs)
        })?;
        Ok("q^2 - 2q^4 + 4q^5 + 5q^6 - 10q^7 + 2q^8 + 20q^9 confirmed".to_string())
    }));

    checks.push(run_check("fractional-part margins match the table and stay nonnegative", || {
        let table = [
            (Rat::new(1, 5), Rat::new(2, 5)),
            (Rat::new(2, 5), Rat::new(2, 5)),
            (Rat::new(1, 2), Rat::zero()),
            (Rat::new(1, 3), Rat::zero()),
            (Rat::new(1, 4), Rat::zero()),
        ];
        for (x, want) in table {
            let got = klein::fractional_margin_345(&x);
            ensure(got == want, || format!("f({x}) = {got}, expected {want}"))?;
        }
        let zero = Rat::zero();
        let mut cases = 0usize;
        for p in [7i64, 11, 13, 17, 19, 23] {
            for a in 1..p {
                let x = Rat::new(a, p);
                let got = klein::fractional_margin_345(&x);
                ensure(got >= zero, || format!("f({x}) = {got} < 0"))?;
                cases += 1;
            }
        }
        Ok(format!("5 table values and {cases} nonnegativity checks"))
    }));

    checks.push(run_check("search recovers the standard families", || {
        let mut detail = Vec::new();
        for n in [5u64, 7, 8, 9] {
            let (p, r) = match n {
                5 => (5, 1),
                7 => (7, 1),
                8 => (2, 3),
                _ => (3, 2),
            };
            let hits = klein::search_families(n, 3, 4).or_fail()?;
            let standard = klein::standard_family(p, r).or_fail()?;
            ensure(hits.contains(&standard), || {
                format!("level {n}: search missed the standard family {standard}")
            })?;
            let mut previous: Option<i64> = None;
            for fam in &hits {
                ensure(klein::check_congruence(fam), || {
                    format!("level {n}: search returned {fam} failing the congruence")
                })?;
                ensure(klein::is_holomorphic(fam), || {
                    format!("level {n}: search returned {fam} with a pole")
                })?;
                let direct = klein::valuation_at_zero(fam).or_fail()?;
                let via_pi = klein::valuation_at_zero_via_pi(fam).or_fail()?;
                ensure(direct == via_pi, || {
                    format!(
                        "level {n}, family {fam}: direct valuation {direct} != pi-adic {via_pi} (trust the pi-adic path)"
                    )
                })?;
                if let Some(prev) = previous {
                    ensure(prev <= direct, || {
                        format!("level {n}: results not sorted by valuation")
                    })?;
                }
                previous = Some(direct);
            }
            detail.push(format!("n = {n}: {} families", hits.len()));
        }
        Ok(detail.join(", "))
    }));

    finish_suite("klein", checks)
}
