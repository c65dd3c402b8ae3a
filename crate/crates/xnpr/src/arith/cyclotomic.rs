//! The cyclotomic field Q(ζ_n) as Q[X]/Φ_n(X), plus resultants and the
//! π-adic valuation for π = 1 − ζ_{p^r}.
//!
//! Elements are stored on the power basis 1, ζ, …, ζ^{φ(n)−1}. The field
//! Q(ζ_{p^r})/Q is totally ramified at p with uniformizer π = 1 − ζ, so the
//! valuation of x ≠ 0 can be read off a norm: ν_π(x) = ν_p(N(x)) where
//! N(x) = Res(Φ_{p^r}, x) for integral x, extended to denominators by
//! ν_π(x/d) = ν_π(x) − φ(p^r)·ν_p(d).

use serde::{Deserialize, Serialize};

use crate::arith::rat::Rat;
use crate::arith::{euler_phi, is_prime, nu_p, nu_p_bigint, upow};
use crate::error::{Error, Result};

/// Dense polynomial over Q: coefficient of X^i at index i, no trailing zeros.
type Poly = Vec<Rat>;

fn poly_trim(v: &mut Poly) {
    while v.last().is_some_and(Rat::is_zero) {
        v.pop();
    }
}

fn poly_deg(v: &Poly) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    poly_trim(&mut out);
    out
}

/// Euclidean division `a = q·b + r` with `deg r < deg b`; requires `b ≠ 0`.
fn poly_divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut r = a.clone();
    let mut q: Poly = Vec::new();
    while r.len() > db || (r.len() == b.len() && !r.is_empty() && db == 0) {
        if r.len() < b.len() {
            break;
        }
        let dr = r.len() - 1;
        let shift = dr - db;
        let c = &r[dr] / &lead;
        if q.len() < shift + 1 {
            q.resize(shift + 1, Rat::zero());
        }
        q[shift] = c.clone();
        for (k, bk) in b.iter().enumerate() {
            let delta = &c * bk;
            r[shift + k] -= delta;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    poly_trim(&mut q);
    (q, r)
}

/// The n-th cyclotomic polynomial Φ_n as a dense coefficient vector
/// (constant term first). Coefficients are integers.
///
/// Computed by exact division: Φ_n = (X^n − 1) / Π_{d|n, d<n} Φ_d.
pub fn cyclotomic_polynomial(n: u64) -> Vec<Rat> {
    assert!(n >= 1, "cyclotomic polynomial needs n ≥ 1");
    let mut num: Poly = vec![Rat::zero(); n as usize + 1];
    num[0] = -Rat::one();
    num[n as usize] = Rat::one();
    let mut den: Poly = vec![Rat::one()];
    for d in 1..n {
        if n.is_multiple_of(d) {
            den = poly_mul(&den, &cyclotomic_polynomial(d));
        }
    }
    let (q, r) = poly_divmod(&num, &den);
    debug_assert!(r.is_empty(), "cyclotomic division must be exact");
    q
}

/// The resultant Res(f, g) of two polynomials over Q.
///
/// Conventions: Res(f, c) = c^{deg f} for constant c, Res of two constants
/// is 1, and Res is 0 when either argument is the zero polynomial (or when f
/// and g share a root). For monic f, Res(f, g) = Π_{f(α)=0} g(α), so
/// Res(Φ_n, x) is the field norm of x = x(ζ_n).
pub fn resultant(f: &[Rat], g: &[Rat]) -> Rat {
    let mut f = f.to_vec();
    let mut g = g.to_vec();
    poly_trim(&mut f);
    poly_trim(&mut g);
    resultant_inner(&f, &g)
}

fn resultant_inner(f: &Poly, g: &Poly) -> Rat {
    let (df, dg) = match (poly_deg(f), poly_deg(g)) {
        (None, _) | (_, None) => return Rat::zero(),
        (Some(a), Some(b)) => (a, b),
    };
    if dg == 0 {
        return g[0].pow(i32::try_from(df).expect("degree fits i32"));
    }
    if df == 0 {
        return f[0].pow(i32::try_from(dg).expect("degree fits i32"));
    }
    let (_, r) = poly_divmod(f, g);
    if r.is_empty() {
        return Rat::zero();
    }
    let dr = r.len() - 1;
    let sign = if (df * dg) % 2 == 1 {
        -Rat::one()
    } else {
        Rat::one()
    };
    let lead_pow = g[dg].pow(i32::try_from(df - dr).expect("degree fits i32"));
    sign * lead_pow * resultant_inner(g, &r)
}

/// An element of Q(ζ_n), reduced mod Φ_n: coefficients on 1, ζ, …, ζ^{φ(n)−1}.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycElt {
    n: u64,
    coeffs: Vec<Rat>,
}

impl CycElt {
    /// Builds an element from exactly φ(n) power-basis coefficients.
    pub fn new(n: u64, coeffs: Vec<Rat>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("cyclotomic modulus must be ≥ 1".into()));
        }
        let phi = euler_phi(n) as usize;
        if coeffs.len() != phi {
            return Err(Error::DimensionMismatch(format!(
                "Q(ζ_{n}) element needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(CycElt { n, coeffs })
    }

    /// Reduces an arbitrary-degree polynomial in ζ_n mod Φ_n.
    pub fn from_poly(n: u64, poly: &[Rat]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("cyclotomic modulus must be ≥ 1".into()));
        }
        let phi_poly = cyclotomic_polynomial(n);
        let mut p = poly.to_vec();
        poly_trim(&mut p);
        let r = if p.len() >= phi_poly.len() {
            let (_, r) = poly_divmod(&p, &phi_poly);
            r
        } else {
            p
        };
        let phi = euler_phi(n) as usize;
        let mut coeffs = r;
        coeffs.resize(phi, Rat::zero());
        Ok(CycElt { n, coeffs })
    }

    /// 0 ∈ Q(ζ_n).
    pub fn zero(n: u64) -> Self {
        CycElt {
            n,
            coeffs: vec![Rat::zero(); euler_phi(n) as usize],
        }
    }

    /// 1 ∈ Q(ζ_n).
    pub fn one(n: u64) -> Self {
        Self::from_rat(n, Rat::one())
    }

    /// The rational `c` viewed inside Q(ζ_n).
    pub fn from_rat(n: u64, c: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); euler_phi(n) as usize];
        if !coeffs.is_empty() {
            coeffs[0] = c;
        } else {
            // n = 1 or 2 still have φ(n) = 1, so this branch is unreachable;
            // kept for safety.
            coeffs.push(c);
        }
        CycElt { n, coeffs }
    }

    /// ζ_n^k for any integer k (negative exponents wrap around).
    pub fn zeta_pow(n: u64, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("cyclotomic modulus must be ≥ 1".into()));
        }
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rat::zero(); e + 1];
        poly[e] = Rat::one();
        Self::from_poly(n, &poly)
    }

    /// ζ_n itself.
    pub fn zeta(n: u64) -> Result<Self> {
        Self::zeta_pow(n, 1)
    }

    /// The modulus n of the ambient ring Q(ζ_n).
    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Power-basis coefficients (length φ(n)).
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// True iff the element is 0.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// True iff the element lies in Q (all non-constant coefficients vanish).
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Rat::is_zero)
    }

    /// The element as a rational, when [`CycElt::is_rational`] holds.
    pub fn to_rat(&self) -> Option<Rat> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    fn check_same_ring(&self, rhs: &CycElt) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::ModulusMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        Ok(())
    }

    /// Sum in Q(ζ_n); errors when the moduli differ.
    pub fn add(&self, rhs: &CycElt) -> Result<CycElt> {
        self.check_same_ring(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycElt { n: self.n, coeffs })
    }

    /// Difference in Q(ζ_n); errors when the moduli differ.
    pub fn sub(&self, rhs: &CycElt) -> Result<CycElt> {
        self.check_same_ring(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycElt { n: self.n, coeffs })
    }

    /// Negation.
    pub fn neg(&self) -> CycElt {
        CycElt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Product in Q(ζ_n), reduced mod Φ_n; errors when the moduli differ.
    pub fn mul(&self, rhs: &CycElt) -> Result<CycElt> {
        self.check_same_ring(rhs)?;
        let prod = poly_mul(&self.coeffs.to_vec(), &rhs.coeffs.to_vec());
        CycElt::from_poly(self.n, &prod)
    }

    /// Scales by a rational.
    pub fn scale(&self, c: &Rat) -> CycElt {
        CycElt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Φ_n (which is irreducible, so every nonzero element is a unit).
    ///
    /// Errors with [`Error::DivisionByZero`] on 0.
    pub fn inv(&self) -> Result<CycElt> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi_poly = cyclotomic_polynomial(self.n);
        let mut x = self.coeffs.to_vec();
        poly_trim(&mut x);
        // Extended Euclid: maintain r0 = s0·x mod Φ, r1 = s1·x mod Φ.
        let mut r0 = phi_poly;
        let mut r1 = x;
        let mut s0: Poly = Vec::new(); // 0
        let mut s1: Poly = vec![Rat::one()];
        while poly_deg(&r1).is_some_and(|d| d > 0) {
            let (q, r) = poly_divmod(&r0, &r1);
            let qs1 = poly_mul(&q, &s1);
            let mut s2: Poly = vec![Rat::zero(); s0.len().max(qs1.len())];
            for (i, c) in s0.iter().enumerate() {
                s2[i] += c;
            }
            for (i, c) in qs1.iter().enumerate() {
                s2[i] -= c;
            }
            poly_trim(&mut s2);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is now a nonzero constant (gcd = 1 up to scaling).
        let c = r1
            .first()
            .cloned()
            .ok_or(Error::DivisionByZero)?;
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv_c = c.recip()?;
        let scaled: Poly = s1.iter().map(|t| t * &inv_c).collect();
        CycElt::from_poly(self.n, &scaled)
    }

    /// `self^e` for any integer e (negative exponents invert first).
    pub fn pow(&self, e: i64) -> Result<CycElt> {
        let (mut base, mut e) = if e < 0 {
            (self.inv()?, e.unsigned_abs())
        } else {
            (self.clone(), e as u64)
        };
        let mut acc = CycElt::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

impl std::fmt::Debug for CycElt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CycElt(n={}, [", self.n)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

impl std::fmt::Display for CycElt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{i}")?,
            }
        }
        Ok(())
    }
}

/// Sum of two cyclotomic elements (same modulus required).
pub fn cyc_add(x: &CycElt, y: &CycElt) -> Result<CycElt> {
    x.add(y)
}

/// Product of two cyclotomic elements (same modulus required).
pub fn cyc_mul(x: &CycElt, y: &CycElt) -> Result<CycElt> {
    x.mul(y)
}

/// Inverse of a nonzero cyclotomic element.
pub fn cyc_inv(x: &CycElt) -> Result<CycElt> {
    x.inv()
}

/// The π-adic valuation ν_π(x) of a nonzero x ∈ Q(ζ_{p^r}), where
/// π = 1 − ζ_{p^r} is the uniformizer above p.
///
/// Normalized so that ν_π(π) = 1 and ν_π(p) = φ(p^r). Computed by clearing
/// denominators and taking ν_p of the norm: with d the lcm of coefficient
/// denominators and y = d·x integral, ν_π(x) = ν_p(Res(Φ_{p^r}, y)) −
/// φ(p^r)·ν_p(d).
///
/// Errors when x = 0, p is not prime, r = 0, or x lives in the wrong ring.
pub fn pi_valuation(x: &CycElt, p: u64, r: u32) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidParams("r must be ≥ 1".into()));
    }
    let n = upow(p, r);
    if x.modulus() != n {
        return Err(Error::ModulusMismatch {
            left: x.modulus(),
            right: n,
        });
    }
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    // Clear denominators so the norm is an integer.
    let mut d = num_bigint::BigInt::from(1);
    for c in x.coeffs() {
        d = num_integer::Integer::lcm(&d, c.denom());
    }
    let d_rat = Rat::int(d.clone());
    let y: Vec<Rat> = x.coeffs().iter().map(|c| c * &d_rat).collect();
    let phi_poly = cyclotomic_polynomial(n);
    let norm = resultant(&phi_poly, &y);
    let phi = euler_phi(n) as i64;
    Ok(nu_p(&norm, p)? - phi * nu_p_bigint(&d, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nu_p_int;

    fn rv(vals: &[i64]) -> Vec<Rat> {
        vals.iter().map(|&v| Rat::int(v)).collect()
    }

    #[test]
    fn cyclotomic_polynomials_small() {
        assert_eq!(cyclotomic_polynomial(1), rv(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), rv(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), rv(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), rv(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(5), rv(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(6), rv(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(8), rv(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(9), rv(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), rv(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn zeta_powers_wrap_and_reduce() {
        let z5 = CycElt::zeta(5).unwrap();
        assert_eq!(CycElt::zeta_pow(5, 5).unwrap(), CycElt::one(5));
        assert_eq!(CycElt::zeta_pow(5, -1).unwrap(), CycElt::zeta_pow(5, 4).unwrap());
        // ζ_5^4 = −1 − ζ − ζ² − ζ³ on the power basis.
        assert_eq!(
            CycElt::zeta_pow(5, 4).unwrap().coeffs(),
            rv(&[-1, -1, -1, -1]).as_slice()
        );
        // ζ·ζ⁴ = 1.
        let prod = z5.mul(&CycElt::zeta_pow(5, 4).unwrap()).unwrap();
        assert_eq!(prod, CycElt::one(5));
    }

    #[test]
    fn geometric_sum_of_all_roots_vanishes() {
        for n in [3u64, 4, 5, 7, 8, 9, 12] {
            let mut acc = CycElt::zero(n);
            for k in 0..n {
                acc = acc.add(&CycElt::zeta_pow(n, k as i64).unwrap()).unwrap();
            }
            assert!(acc.is_zero(), "sum of all n-th roots must vanish, n={n}");
        }
    }

    #[test]
    fn inverse_round_trips() {
        let n = 9;
        let x = CycElt::from_poly(
            n,
            &[Rat::new(2, 3), Rat::int(1), Rat::zero(), Rat::int(-4)],
        )
        .unwrap();
        let xi = x.inv().unwrap();
        assert_eq!(x.mul(&xi).unwrap(), CycElt::one(n));
        assert!(CycElt::zero(n).inv().is_err());
        // 1 − ζ_4 has inverse (1 + ζ_4)/2.
        let y = CycElt::one(4)
            .sub(&CycElt::zeta(4).unwrap())
            .unwrap();
        let yi = y.inv().unwrap();
        assert_eq!(yi.coeffs(), &[Rat::new(1, 2), Rat::new(1, 2)]);
        // 1 − ζ_5 has inverse (1/5)(4 + 3ζ + 2ζ² + ζ³).
        let w = CycElt::one(5)
            .sub(&CycElt::zeta(5).unwrap())
            .unwrap();
        let wi = cyc_inv(&w).unwrap();
        assert_eq!(
            wi.coeffs(),
            &[
                Rat::new(4, 5),
                Rat::new(3, 5),
                Rat::new(2, 5),
                Rat::new(1, 5)
            ]
        );
        assert_eq!(cyc_mul(&w, &wi).unwrap(), CycElt::one(5));
    }

    #[test]
    fn modulus_mismatch_is_error() {
        let a = CycElt::one(4);
        let b = CycElt::one(8);
        assert!(matches!(
            a.add(&b),
            Err(Error::ModulusMismatch { left: 4, right: 8 })
        ));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn rationality_detection() {
        let z4 = CycElt::zeta(4).unwrap();
        let m1 = z4.mul(&z4).unwrap(); // ζ_4² = −1
        assert!(m1.is_rational());
        assert_eq!(m1.to_rat().unwrap(), Rat::int(-1));
        assert!(!z4.is_rational());
        assert_eq!(z4.to_rat(), None);
    }

    #[test]
    fn pow_with_negative_exponents() {
        let z = CycElt::zeta(7).unwrap();
        let x = z.add(&CycElt::from_rat(7, Rat::int(2))).unwrap();
        let a = x.pow(3).unwrap();
        let b = x.pow(-3).unwrap();
        assert_eq!(a.mul(&b).unwrap(), CycElt::one(7));
        assert_eq!(x.pow(0).unwrap(), CycElt::one(7));
    }

    #[test]
    fn resultant_conventions() {
        // Res(X² − 1, X − 2) = (1 − 2)(−1 − 2) = 3.
        let f = rv(&[-1, 0, 1]);
        let g = rv(&[-2, 1]);
        assert_eq!(resultant(&f, &g), Rat::int(3));
        // Constant second argument: Res(f, c) = c^{deg f}.
        assert_eq!(resultant(&f, &rv(&[5])), Rat::int(25));
        // Swapping introduces (−1)^{deg f·deg g}.
        assert_eq!(resultant(&g, &f), Rat::int(3));
        let h = rv(&[1, 1]); // X + 1 shares the root −1 with f
        assert_eq!(resultant(&f, &h), Rat::zero());
        // Norm of x = 2 − ζ_4: Res(X²+1, 2−X) = (2−i)(2+i) = 5.
        let phi4 = cyclotomic_polynomial(4);
        assert_eq!(resultant(&phi4, &rv(&[2, -1])), Rat::int(5));
    }

    #[test]
    fn pi_valuation_of_uniformizer_powers() {
        // ν_π(1 − ζ_{p^r}^t) = p^{ν_p(t)} for 1 ≤ t < p^r.
        for (p, r) in [(2u64, 2u32), (2, 3), (3, 2), (5, 1), (7, 1)] {
            let n = upow(p, r);
            for t in 1..n {
                let x = CycElt::one(n)
                    .sub(&CycElt::zeta_pow(n, t as i64).unwrap())
                    .unwrap();
                let expected = upow(p, nu_p_int(t as i64, p).unwrap() as u32) as i64;
                assert_eq!(
                    pi_valuation(&x, p, r).unwrap(),
                    expected,
                    "p={p} r={r} t={t}"
                );
            }
        }
    }

    #[test]
    fn pi_valuation_of_rationals() {
        // ν_π(p) = φ(p^r); ν_π(1/p) = −φ(p^r); ν_π(unit) = 0.
        for (p, r) in [(2u64, 3u32), (3, 2), (5, 1)] {
            let n = upow(p, r);
            let phi = euler_phi(n) as i64;
            let xp = CycElt::from_rat(n, Rat::int(p as i64));
            assert_eq!(pi_valuation(&xp, p, r).unwrap(), phi);
            let xinv = CycElt::from_rat(n, Rat::new(1, p as i64));
            assert_eq!(pi_valuation(&xinv, p, r).unwrap(), -phi);
            let u = CycElt::from_rat(n, Rat::new(7 * 11, 13));
            if p != 7 && p != 11 && p != 13 {
                assert_eq!(pi_valuation(&u, p, r).unwrap(), 0);
            }
        }
    }

    #[test]
    fn pi_valuation_is_multiplicative_spot() {
        let (p, r) = (3u64, 2u32);
        let n = 9u64;
        let x = CycElt::one(n)
            .sub(&CycElt::zeta_pow(n, 3).unwrap())
            .unwrap(); // ν_π = 3
        let y = CycElt::one(n)
            .sub(&CycElt::zeta_pow(n, 1).unwrap())
            .unwrap(); // ν_π = 1
        let xy = x.mul(&y).unwrap();
        assert_eq!(
            pi_valuation(&xy, p, r).unwrap(),
            pi_valuation(&x, p, r).unwrap() + pi_valuation(&y, p, r).unwrap()
        );
        let q = x.mul(&y.inv().unwrap()).unwrap();
        assert_eq!(pi_valuation(&q, p, r).unwrap(), 2);
    }

    #[test]
    fn pi_valuation_errors() {
        assert!(pi_valuation(&CycElt::zero(9), 3, 2).is_err());
        assert!(pi_valuation(&CycElt::one(9), 3, 1).is_err()); // wrong ring
        assert!(pi_valuation(&CycElt::one(8), 6, 1).is_err()); // not prime
    }

    #[test]
    fn serde_shape() {
        let z = CycElt::zeta(4).unwrap();
        let json = serde_json::to_string(&z).unwrap();
        assert_eq!(json, r#"{"n":4,"coeffs":["0","1"]}"#);
        let back: CycElt = serde_json::from_str(&json).unwrap();
        assert_eq!(back, z);
    }
}
