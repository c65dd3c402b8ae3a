//! Dense exact matrices over Q, a Gauss–Jordan inversion oracle, and the
//! structured inverse-update formulas (minor removal, Woodbury, and the
//! rank-two block-ones update) that let the curve matrices be inverted in
//! closed form.

use serde::{Deserialize, Serialize};

use crate::arith::Rat;
use crate::error::{Error, Result};

/// A dense `rows × cols` matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

/// Shadow struct so deserialization can re-validate the length invariant.
#[derive(Deserialize)]
struct MatRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let repr = MatRepr::deserialize(deserializer)?;
        Mat::new(repr.rows, repr.cols, repr.entries).map_err(serde::de::Error::custom)
    }
}

impl Mat {
    /// Builds a matrix from row-major entries; validates the length.
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParams("matrix dimensions must be ≥ 1".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}×{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Mat {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from explicit rows.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Mat::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix entry-by-entry from a function of (row, col), 0-based.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat {
            rows,
            cols,
            entries,
        }
    }

    /// The `rows × cols` zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    /// The n×n identity.
    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { Rat::one() } else { Rat::zero() })
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at (i, j), 0-based.
    pub fn get(&self, i: usize, j: usize) -> &Rat {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }

    /// Overwrites entry (i, j), 0-based.
    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries[i * self.cols + j] = v;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    /// True iff the matrix is square.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True iff the matrix equals the identity.
    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(self.rows)
    }

    /// Matrix product.
    pub fn mul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} · {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = aik * rhs.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    /// Matrix sum.
    pub fn add(&self, rhs: &Mat) -> Result<Mat> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("add shapes differ".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Matrix difference.
    pub fn sub(&self, rhs: &Mat) -> Result<Mat> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("sub shapes differ".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rat) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// Transpose.
    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} · vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect())
    }

    /// Sum of the entries in row i (0-based).
    pub fn row_sum(&self, i: usize) -> Rat {
        (0..self.cols).map(|j| self.get(i, j)).sum()
    }

    /// Sum of the entries in column j (0-based).
    pub fn col_sum(&self, j: usize) -> Rat {
        (0..self.rows).map(|i| self.get(i, j)).sum()
    }

    /// Sum of all entries.
    pub fn total_sum(&self) -> Rat {
        self.entries.iter().sum()
    }

    /// The matrix with row `row` and column `col` removed (0-based).
    pub fn remove_row_col(&self, row: usize, col: usize) -> Result<Mat> {
        if row >= self.rows || col >= self.cols {
            return Err(Error::IndexOutOfRange(format!(
                "remove ({row}, {col}) from {}×{}",
                self.rows, self.cols
            )));
        }
        if self.rows == 1 || self.cols == 1 {
            return Err(Error::DimensionMismatch(
                "cannot remove from a single row/column".into(),
            ));
        }
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            for j in 0..self.cols {
                if j == col {
                    continue;
                }
                entries.push(self.get(i, j).clone());
            }
        }
        Mat::new(self.rows - 1, self.cols - 1, entries)
    }

    /// Exact inverse by Gauss–Jordan elimination.
    ///
    /// Pivot rule: the first row (in order) with a nonzero entry in the
    /// current column — arithmetic is exact, so no magnitude pivoting is
    /// needed. Errors with [`Error::SingularMatrix`] when no pivot exists.
    pub fn gauss_inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square".into()));
        }
        let n = self.rows;
        // Augmented system [self | I], row-major.
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&i| !a.get(i, col).is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot_row != col {
                for j in 0..n {
                    let tmp = a.get(pivot_row, j).clone();
                    a.set(pivot_row, j, a.get(col, j).clone());
                    a.set(col, j, tmp);
                    let tmp = inv.get(pivot_row, j).clone();
                    inv.set(pivot_row, j, inv.get(col, j).clone());
                    inv.set(col, j, tmp);
                }
            }
            let pivot = a.get(col, col).clone();
            let pivot_inv = pivot.recip()?;
            for j in 0..n {
                a.set(col, j, a.get(col, j) * &pivot_inv);
                inv.set(col, j, inv.get(col, j) * &pivot_inv);
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let factor = a.get(i, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let na = a.get(i, j) - &(&factor * a.get(col, j));
                    a.set(i, j, na);
                    let ni = inv.get(i, j) - &(&factor * inv.get(col, j));
                    inv.set(i, j, ni);
                }
            }
        }
        Ok(inv)
    }

    /// CSV rendering: one line per row, entries as `num/den` strings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    out.push(',');
                }
                out.push_str(&self.get(i, j).to_string());
            }
            out.push('\n');
        }
        out
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}×{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{}\t", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Exact inverse via Gauss–Jordan elimination (free-function form).
pub fn gauss_inverse(m: &Mat) -> Result<Mat> {
    m.gauss_inverse()
}

/// Inverse of A with row `s` and column `t` removed, computed from the
/// entries m = A^{-1} alone (1-based s, t):
/// entry (i, j) of the result is m_{ij} − m_{is}·m_{tj}/m_{ts}, where the
/// result rows run over i ∈ {1..n}\{t} and columns over j ∈ {1..n}\{s}.
///
/// Errors with [`Error::PivotVanishes`] when m_{ts} = 0 (the formula needs
/// that entry as pivot).
pub fn minor_removed_inverse(a_inv: &Mat, s: usize, t: usize) -> Result<Mat> {
    if !a_inv.is_square() {
        return Err(Error::DimensionMismatch("minor removal on non-square".into()));
    }
    let n = a_inv.rows();
    if s == 0 || t == 0 || s > n || t > n {
        return Err(Error::IndexOutOfRange(format!(
            "(s, t) = ({s}, {t}) not in 1..={n}"
        )));
    }
    if n == 1 {
        return Err(Error::DimensionMismatch(
            "cannot remove the only row/column".into(),
        ));
    }
    let (s0, t0) = (s - 1, t - 1);
    let pivot = a_inv.get(t0, s0).clone();
    if pivot.is_zero() {
        return Err(Error::PivotVanishes);
    }
    let mut entries = Vec::with_capacity((n - 1) * (n - 1));
    for i in 0..n {
        if i == t0 {
            continue;
        }
        for j in 0..n {
            if j == s0 {
                continue;
            }
            let correction = &(a_inv.get(i, s0) * a_inv.get(t0, j)) / &pivot;
            entries.push(a_inv.get(i, j) - &correction);
        }
    }
    Mat::new(n - 1, n - 1, entries)
}

/// The Woodbury identity: exact inverse of A + U·C·V from A^{-1} and C^{-1},
/// (A + UCV)^{-1} = A^{-1} − A^{-1}U(C^{-1} + V A^{-1} U)^{-1} V A^{-1}.
///
/// Errors with [`Error::RankUpdateSingular`] when the inner matrix
/// C^{-1} + V A^{-1} U is singular.
pub fn woodbury(a_inv: &Mat, u: &Mat, c_inv: &Mat, v: &Mat) -> Result<Mat> {
    let aiu = a_inv.mul(u)?;
    let vai = v.mul(a_inv)?;
    let inner = c_inv.add(&v.mul(&aiu)?)?;
    let inner_inv = inner
        .gauss_inverse()
        .map_err(|_| Error::RankUpdateSingular("C^{-1} + V·A^{-1}·U is singular".into()))?;
    let correction = aiu.mul(&inner_inv)?.mul(&vai)?;
    a_inv.sub(&correction)
}

/// Inverse of the block matrix [[A, 1s], [1s, B]] (off-diagonal blocks all
/// ones) assembled from A^{-1} (n×n) and B^{-1} (m×m) alone.
///
/// With α the sum of all entries of A^{-1}, β the sum of all entries of
/// B^{-1}, row sums rᴬ, rᴮ and column sums cᴬ, cᴮ of the block inverses,
/// the four blocks of the result are:
///   upper-left  a_{ij} + (β/(1−αβ))·rᴬ_i·cᴬ_j
///   upper-right −(1/(1−αβ))·rᴬ_i·cᴮ_j
///   lower-left  −(1/(1−αβ))·rᴮ_i·cᴬ_j
///   lower-right b_{ij} + (α/(1−αβ))·rᴮ_i·cᴮ_j
///
/// Empty blocks pass through: m = 0 returns A^{-1}, n = 0 returns B^{-1}.
/// Errors with [`Error::RankUpdateSingular`] when 1 − αβ = 0.
pub fn block_ones_inverse(a_inv_block: &Mat, b_inv_block: &Mat) -> Result<Mat> {
    if !a_inv_block.is_square() || !b_inv_block.is_square() {
        return Err(Error::DimensionMismatch(
            "block-ones inverse needs square blocks".into(),
        ));
    }
    let n = a_inv_block.rows();
    let m = b_inv_block.rows();
    let alpha = a_inv_block.total_sum();
    let beta = b_inv_block.total_sum();
    let denom = Rat::one() - &alpha * &beta;
    if denom.is_zero() {
        return Err(Error::RankUpdateSingular("1 − αβ = 0".into()));
    }
    let row_a: Vec<Rat> = (0..n).map(|i| a_inv_block.row_sum(i)).collect();
    let col_a: Vec<Rat> = (0..n).map(|j| a_inv_block.col_sum(j)).collect();
    let row_b: Vec<Rat> = (0..m).map(|i| b_inv_block.row_sum(i)).collect();
    let col_b: Vec<Rat> = (0..m).map(|j| b_inv_block.col_sum(j)).collect();
    let beta_over = &beta / &denom;
    let alpha_over = &alpha / &denom;
    let neg_inv = -(Rat::one() / &denom);
    Ok(Mat::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
        (true, true) => a_inv_block.get(i, j) + &(&beta_over * &row_a[i]) * &col_a[j],
        (true, false) => &(&neg_inv * &row_a[i]) * &col_b[j - n],
        (false, true) => &(&neg_inv * &row_b[i - n]) * &col_a[j],
        (false, false) => {
            b_inv_block.get(i - n, j - n) + &(&alpha_over * &row_b[i - n]) * &col_b[j - n]
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn construction_and_accessors() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.rows(), 2);
        assert_eq!(a.cols(), 2);
        assert_eq!(*a.get(1, 0), Rat::int(3));
        assert_eq!(a.row_sum(0), Rat::int(3));
        assert_eq!(a.col_sum(1), Rat::int(6));
        assert_eq!(a.total_sum(), Rat::int(10));
        assert!(Mat::new(2, 2, vec![Rat::one(); 3]).is_err());
        assert!(Mat::new(0, 1, vec![]).is_err());
    }

    #[test]
    fn product_and_identity() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let id = Mat::identity(2);
        assert_eq!(a.mul(&id).unwrap(), a);
        assert!(id.is_identity());
        let b = m(&[&[0, 1], &[1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, m(&[&[2, 1], &[4, 3]]));
        assert!(a.mul(&Mat::identity(3)).is_err());
        let v = vec![Rat::int(1), Rat::int(-1)];
        assert_eq!(a.mul_vec(&v).unwrap(), vec![Rat::int(-1), Rat::int(-1)]);
    }

    #[test]
    fn gauss_inverse_examples() {
        assert_eq!(
            Mat::identity(3).gauss_inverse().unwrap(),
            Mat::identity(3)
        );
        let a = m(&[&[2, 1], &[1, 2]]);
        let ai = a.gauss_inverse().unwrap();
        let expected = Mat::from_rows(vec![
            vec![Rat::new(2, 3), Rat::new(-1, 3)],
            vec![Rat::new(-1, 3), Rat::new(2, 3)],
        ])
        .unwrap();
        assert_eq!(ai, expected);
        assert!(a.mul(&ai).unwrap().is_identity());
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.gauss_inverse().unwrap(), swap);
        assert_eq!(
            m(&[&[1, 2], &[2, 4]]).gauss_inverse(),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn gauss_inverse_handles_zero_leading_pivots() {
        let a = m(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]]);
        let ai = a.gauss_inverse().unwrap();
        assert!(a.mul(&ai).unwrap().is_identity());
        assert!(ai.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn minor_removed_inverse_examples() {
        // A = [[2,1],[1,2]], remove row 1 / col 1 → inverse of [2] = [1/2].
        let a = m(&[&[2, 1], &[1, 2]]);
        let red = minor_removed_inverse(&a.gauss_inverse().unwrap(), 1, 1).unwrap();
        assert_eq!(red, Mat::from_rows(vec![vec![Rat::new(1, 2)]]).unwrap());
        // Identity 3×3, s=t=2 → identity 2×2.
        let red = minor_removed_inverse(&Mat::identity(3), 2, 2).unwrap();
        assert!(red.is_identity());
        // A = [[3,1],[1,3]], s=t=1 → [1/3].
        let a = m(&[&[3, 1], &[1, 3]]);
        let red = minor_removed_inverse(&a.gauss_inverse().unwrap(), 1, 1).unwrap();
        assert_eq!(red, Mat::from_rows(vec![vec![Rat::new(1, 3)]]).unwrap());
        // Pivot m_{ts} = 0 → error: identity with s=1, t=2 has m_21 = 0.
        assert_eq!(
            minor_removed_inverse(&Mat::identity(3), 1, 2),
            Err(Error::PivotVanishes)
        );
    }

    #[test]
    fn minor_removed_inverse_matches_direct_inversion() {
        // Deterministic 5×5 with varied entries; all (s,t) with pivot ≠ 0.
        let a = m(&[
            &[4, 1, 0, 2, -1],
            &[1, 5, 1, 0, 3],
            &[0, 1, 6, 1, 0],
            &[2, 0, 1, 7, 1],
            &[-1, 3, 0, 1, 8],
        ]);
        let ai = a.gauss_inverse().unwrap();
        for s in 1..=5 {
            for t in 1..=5 {
                if ai.get(t - 1, s - 1).is_zero() {
                    continue;
                }
                let got = minor_removed_inverse(&ai, s, t).unwrap();
                let direct = a
                    .remove_row_col(s - 1, t - 1)
                    .unwrap()
                    .gauss_inverse()
                    .unwrap();
                assert_eq!(got, direct, "s={s} t={t}");
            }
        }
    }

    #[test]
    fn woodbury_examples() {
        // A = 2I₂, U = e₁, C = [1], V = e₁ᵀ → (A + UCV)^{-1} = diag(1/3, 1/2).
        let a_inv = Mat::from_rows(vec![
            vec![Rat::new(1, 2), Rat::zero()],
            vec![Rat::zero(), Rat::new(1, 2)],
        ])
        .unwrap();
        let u = Mat::new(2, 1, vec![Rat::one(), Rat::zero()]).unwrap();
        let c_inv = Mat::new(1, 1, vec![Rat::one()]).unwrap();
        let v = u.transpose();
        let got = woodbury(&a_inv, &u, &c_inv, &v).unwrap();
        let expected = Mat::from_rows(vec![
            vec![Rat::new(1, 3), Rat::zero()],
            vec![Rat::zero(), Rat::new(1, 2)],
        ])
        .unwrap();
        assert_eq!(got, expected);
        // U = 0 → unchanged.
        let zero_u = Mat::zeros(2, 1);
        assert_eq!(
            woodbury(&a_inv, &zero_u, &c_inv, &zero_u.transpose()).unwrap(),
            a_inv
        );
    }

    #[test]
    fn woodbury_matches_gauss_on_dense_update() {
        let a = m(&[&[3, 1, 0], &[1, 4, 1], &[0, 1, 5]]);
        let u = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        let c = m(&[&[2, 0], &[1, 1]]);
        let v = m(&[&[1, 1, 0], &[0, 1, 1]]);
        let updated = a.add(&u.mul(&c).unwrap().mul(&v).unwrap()).unwrap();
        let got = woodbury(
            &a.gauss_inverse().unwrap(),
            &u,
            &c.gauss_inverse().unwrap(),
            &v,
        )
        .unwrap();
        assert_eq!(got, updated.gauss_inverse().unwrap());
    }

    #[test]
    fn block_ones_inverse_reproduces_dense_inverse() {
        // A = J₄ − 6I₄ (diag −5, off-diag 1), B = [−5]: the assembled block
        // matrix is J₅ − 6I₅ and its inverse is −(1/6)(I + J).
        let a = m(&[
            &[-5, 1, 1, 1],
            &[1, -5, 1, 1],
            &[1, 1, -5, 1],
            &[1, 1, 1, -5],
        ]);
        let b = m(&[&[-5]]);
        let got = block_ones_inverse(
            &a.gauss_inverse().unwrap(),
            &b.gauss_inverse().unwrap(),
        )
        .unwrap();
        let expected = Mat::from_fn(5, 5, |i, j| {
            if i == j {
                Rat::new(-2, 6)
            } else {
                Rat::new(-1, 6)
            }
        });
        assert_eq!(got, expected);
        // And against the oracle on the assembled matrix.
        let assembled = Mat::from_fn(5, 5, |i, j| {
            if i == j {
                Rat::int(-5)
            } else {
                Rat::int(1)
            }
        });
        assert_eq!(got, assembled.gauss_inverse().unwrap());
    }

    #[test]
    fn block_ones_inverse_asymmetric_blocks() {
        let a = m(&[&[5, 2, 0], &[1, 6, 1], &[0, 2, 7]]);
        let b = m(&[&[8, 1], &[3, 9]]);
        let got = block_ones_inverse(
            &a.gauss_inverse().unwrap(),
            &b.gauss_inverse().unwrap(),
        )
        .unwrap();
        let assembled = Mat::from_fn(5, 5, |i, j| match (i < 3, j < 3) {
            (true, true) => a.get(i, j).clone(),
            (false, false) => b.get(i - 3, j - 3).clone(),
            _ => Rat::one(),
        });
        assert_eq!(got, assembled.gauss_inverse().unwrap());
    }

    #[test]
    fn block_ones_inverse_rejects_singular_update() {
        // α = β = 1 → 1 − αβ = 0.
        let a_inv = Mat::new(1, 1, vec![Rat::one()]).unwrap();
        let b_inv = Mat::new(1, 1, vec![Rat::one()]).unwrap();
        assert!(matches!(
            block_ones_inverse(&a_inv, &b_inv),
            Err(Error::RankUpdateSingular(_))
        ));
    }

    #[test]
    fn serde_and_csv_shapes() {
        let a = Mat::from_rows(vec![
            vec![Rat::new(1, 2), Rat::int(3)],
            vec![Rat::int(-1), Rat::zero()],
        ])
        .unwrap();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"rows":2,"cols":2,"entries":["1/2","3","-1","0"]}"#
        );
        let back: Mat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<Mat>(
            r#"{"rows":2,"cols":2,"entries":["1/2"]}"#
        )
        .is_err());
        assert_eq!(a.to_csv(), "1/2,3\n-1,0\n");
    }

    #[test]
    fn transpose_and_scale() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        let t = a.transpose();
        assert_eq!(t.rows(), 3);
        assert_eq!(*t.get(2, 1), Rat::int(6));
        assert_eq!(
            a.scale(&Rat::new(1, 2)).get(1, 2),
            &Rat::int(3)
        );
        let removed = a.remove_row_col(0, 1).unwrap();
        assert_eq!(removed, m(&[&[4, 6]]));
    }
}
