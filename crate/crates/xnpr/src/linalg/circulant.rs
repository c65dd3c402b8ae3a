//! Circulant matrices over Q and their spectral inverses in Q(ζ_n).
//!
//! A circulant is determined by its first column (c₀, …, c_{n−1}); each
//! later column is the previous one shifted down by one, so the (i, j) entry
//! is c_{(i−j) mod n}. Its eigenvectors are the root-of-unity columns
//! v_j = (1, ζ_n^{j−1}, …, ζ_n^{(n−1)(j−1)}) with eigenvalues
//! λ_j = Σ_k c_k ζ_n^{(j−1)(n−k)}, and the (i, j) entry of the inverse is
//! (1/n)·Σ_{k=1}^{n} λ_k^{−1} ζ_n^{(k−1)(i−j)} — rational whenever the
//! circulant is.

use serde::{Deserialize, Serialize};

use crate::arith::{CycElt, Rat};
use crate::error::{Error, Result};
use crate::linalg::mat::Mat;

/// A circulant matrix, stored as its first column.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circulant {
    first_column: Vec<Rat>,
}

impl Circulant {
    /// Builds a circulant from its first column (length ≥ 1).
    pub fn new(first_column: Vec<Rat>) -> Result<Self> {
        if first_column.is_empty() {
            return Err(Error::InvalidParams("circulant needs n ≥ 1".into()));
        }
        Ok(Circulant { first_column })
    }

    /// Dimension n.
    pub fn n(&self) -> usize {
        self.first_column.len()
    }

    /// The defining first column (c₀, …, c_{n−1}).
    pub fn first_column(&self) -> &[Rat] {
        &self.first_column
    }

    /// The dense n×n matrix with entry (i, j) = c_{(i−j) mod n}.
    pub fn materialize(&self) -> Mat {
        let n = self.n();
        Mat::from_fn(n, n, |i, j| {
            self.first_column[(n + i - j) % n].clone()
        })
    }

    /// The j-th eigenpair (1 ≤ j ≤ n): eigenvalue
    /// λ_j = Σ_k c_k ζ_n^{(j−1)(n−k)} and unnormalized eigenvector
    /// v_j = (1, ζ_n^{j−1}, …, ζ_n^{(n−1)(j−1)}), both exact in Q(ζ_n).
    pub fn eigen(&self, j: usize) -> Result<(CycElt, Vec<CycElt>)> {
        let n = self.n();
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange(format!("j = {j} not in 1..={n}")));
        }
        let nn = n as u64;
        let e = (j - 1) as i64;
        let mut lambda = CycElt::zero(nn);
        for (k, ck) in self.first_column.iter().enumerate() {
            let term = CycElt::zeta_pow(nn, e * (n as i64 - k as i64))?.scale(ck);
            lambda = lambda.add(&term)?;
        }
        let v = (0..n)
            .map(|m| CycElt::zeta_pow(nn, e * m as i64))
            .collect::<Result<Vec<_>>>()?;
        Ok((lambda, v))
    }

    /// All n eigenvalues, in order j = 1..n.
    pub fn eigenvalues(&self) -> Result<Vec<CycElt>> {
        (1..=self.n()).map(|j| Ok(self.eigen(j)?.0)).collect()
    }

    /// Entry (i, j) of the inverse (1-based), via the spectral formula
    /// (1/n)·Σ_{k=1}^{n} λ_k^{−1} ζ_n^{(k−1)(i−j)}.
    ///
    /// Errors with [`Error::SingularMatrix`] if some λ_k = 0, and with
    /// [`Error::NonRationalResult`] if a ζ-coefficient survives the sum
    /// (it cannot for a rational circulant; surviving terms signal a bug).
    pub fn inverse_entry(&self, i: usize, j: usize) -> Result<Rat> {
        let n = self.n();
        if i == 0 || i > n || j == 0 || j > n {
            return Err(Error::IndexOutOfRange(format!(
                "(i, j) = ({i}, {j}) not in 1..={n}"
            )));
        }
        let inv_lambdas = self.inverted_eigenvalues()?;
        self.inverse_entry_from(&inv_lambdas, i, j)
    }

    fn inverted_eigenvalues(&self) -> Result<Vec<CycElt>> {
        self.eigenvalues()?
            .into_iter()
            .map(|l| {
                if l.is_zero() {
                    Err(Error::SingularMatrix)
                } else {
                    l.inv()
                }
            })
            .collect()
    }

    fn inverse_entry_from(&self, inv_lambdas: &[CycElt], i: usize, j: usize) -> Result<Rat> {
        let n = self.n();
        let nn = n as u64;
        let d = i as i64 - j as i64;
        let mut acc = CycElt::zero(nn);
        for (k, li) in inv_lambdas.iter().enumerate() {
            let phase = CycElt::zeta_pow(nn, k as i64 * d)?;
            acc = acc.add(&li.mul(&phase)?)?;
        }
        let acc = acc.scale(&Rat::new(1, n as i64));
        acc.to_rat().ok_or(Error::NonRationalResult)
    }

    /// The inverse circulant (first column d_i = inverse entry (i, 1)).
    ///
    /// Errors when the circulant is singular.
    pub fn inverse(&self) -> Result<Circulant> {
        let inv_lambdas = self.inverted_eigenvalues()?;
        let first_column = (1..=self.n())
            .map(|i| self.inverse_entry_from(&inv_lambdas, i, 1))
            .collect::<Result<Vec<_>>>()?;
        Circulant::new(first_column)
    }
}

impl std::fmt::Debug for Circulant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Circulant(")?;
        for (k, c) in self.first_column.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The j-th exact eigenpair of a circulant (free-function form).
pub fn circ_eigen(c: &Circulant, j: usize) -> Result<(CycElt, Vec<CycElt>)> {
    c.eigen(j)
}

/// Entry (i, j) of the inverse of a circulant (free-function form).
pub fn circ_inverse_entry(c: &Circulant, i: usize, j: usize) -> Result<Rat> {
    c.inverse_entry(i, j)
}

/// The inverse circulant (free-function form).
pub fn circ_inverse(c: &Circulant) -> Result<Circulant> {
    c.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(vals: &[i64]) -> Circulant {
        Circulant::new(vals.iter().map(|&v| Rat::int(v)).collect()).unwrap()
    }

    #[test]
    fn materialization_layout() {
        let c = circ(&[10, 20, 30]);
        let m = c.materialize();
        // Columns are downward shifts of the first column.
        let expected = Mat::from_rows(vec![
            vec![Rat::int(10), Rat::int(30), Rat::int(20)],
            vec![Rat::int(20), Rat::int(10), Rat::int(30)],
            vec![Rat::int(30), Rat::int(20), Rat::int(10)],
        ])
        .unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn eigen_examples() {
        let c = circ(&[-2, 1]);
        let (l1, _) = c.eigen(1).unwrap();
        assert_eq!(l1.to_rat().unwrap(), Rat::int(-1));
        let (l2, _) = c.eigen(2).unwrap();
        assert_eq!(l2.to_rat().unwrap(), Rat::int(-3));
        // Scalar circulant: every eigenvalue is c₀.
        let s = circ(&[7, 0, 0, 0]);
        for j in 1..=4 {
            assert_eq!(s.eigen(j).unwrap().0.to_rat().unwrap(), Rat::int(7));
        }
        assert!(c.eigen(0).is_err());
        assert!(c.eigen(3).is_err());
    }

    #[test]
    fn eigen_equation_holds_exactly() {
        for c in [
            circ(&[-2, 1]),
            circ(&[1, 2, 3]),
            circ(&[-5, 1, 1, 1, 1]),
            circ(&[3, 0, -1, 0, 2, 1]),
        ] {
            let m = c.materialize();
            let n = c.n();
            for j in 1..=n {
                let (lambda, v) = c.eigen(j).unwrap();
                for i in 0..n {
                    // (M v)_i = λ·v_i in Q(ζ_n).
                    let mut lhs = CycElt::zero(n as u64);
                    for (k, vk) in v.iter().enumerate() {
                        lhs = lhs.add(&vk.scale(m.get(i, k))).unwrap();
                    }
                    let rhs = lambda.mul(&v[i]).unwrap();
                    assert_eq!(lhs, rhs, "n={n} j={j} i={i}");
                }
            }
        }
    }

    #[test]
    fn inverse_entry_examples() {
        let c = circ(&[-2, 1]);
        assert_eq!(c.inverse_entry(1, 1).unwrap(), Rat::new(-2, 3));
        assert_eq!(c.inverse_entry(1, 2).unwrap(), Rat::new(-1, 3));
        let s = circ(&[2, 0, 0]);
        for i in 1..=3 {
            assert_eq!(s.inverse_entry(i, i).unwrap(), Rat::new(1, 2));
        }
        // Singular circulant: row sums vanish → λ₁ = 0.
        let sing = circ(&[1, -1]);
        assert_eq!(sing.inverse_entry(1, 1), Err(Error::SingularMatrix));
        assert_eq!(sing.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn inverse_examples() {
        let c = circ(&[-2, 1]);
        let ci = c.inverse().unwrap();
        assert_eq!(
            ci.first_column(),
            &[Rat::new(-2, 3), Rat::new(-1, 3)]
        );
        let id = circ(&[1, 0, 0, 0, 0]);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn inverse_matches_gauss_oracle() {
        for c in [
            circ(&[-2, 1]),
            circ(&[-5, 1, 1, 1, 1]),
            circ(&[4, 1, 0, 0, 0, 1]),
            circ(&[3, 1, 0, 1]),
            circ(&[7, -2, 3]),
        ] {
            let ci = c.inverse().unwrap();
            let dense = c.materialize();
            assert_eq!(
                ci.materialize(),
                dense.gauss_inverse().unwrap(),
                "first column {:?}",
                c.first_column()
            );
            assert!(ci
                .materialize()
                .mul(&dense)
                .unwrap()
                .is_identity());
        }
    }

    #[test]
    fn inverse_with_rational_entries() {
        let c = Circulant::new(vec![
            Rat::new(5, 2),
            Rat::new(-1, 3),
            Rat::new(1, 6),
            Rat::zero(),
        ])
        .unwrap();
        let ci = c.inverse().unwrap();
        assert_eq!(ci.materialize(), c.materialize().gauss_inverse().unwrap());
    }
}
