use num_traits::{One, Zero};
use rayon::prelude::*;

use super::elim::{self, Solver};
use super::scalar::Scalar;
use super::vector::{linear_combination, SparseVec};
use super::LinalgError;

/// Rational matrix, stored as sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.max_index().is_none_or(|m| m < cols)));
        Self { rows: data.len(), cols, data }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        debug_assert!(columns.iter().all(|c| c.max_index().is_none_or(|m| m < rows)));
        Self { rows: columns.len(), cols: rows, data: columns.to_vec() }.transpose()
    }

    pub fn from_dense(grid: &[Vec<Scalar>]) -> Self {
        let cols = grid.first().map_or(0, |r| r.len());
        Self::from_rows(cols, grid.iter().map(|r| SparseVec::from_dense(r)).collect())
    }

    pub fn from_i64(grid: &[Vec<i64>]) -> Self {
        let g: Vec<Vec<Scalar>> = grid
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_integer(x.into())).collect())
            .collect();
        Self::from_dense(&g)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let mut pairs: Vec<(usize, Scalar)> = self.data[i].iter().filter(|(k, _)| *k != j).map(|(k, x)| (k, x.clone())).collect();
        pairs.push((j, v));
        self.data[i] = SparseVec::from_pairs(pairs);
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r.iter() {
                buckets[j].push((i, x.clone()));
            }
        }
        let data = buckets
            .into_iter()
            .map(SparseVec::from_pairs)
            .collect();
        Self { rows: self.cols, cols: self.rows, data }
    }

    /// Row-major flattening: entry `(r, c)` goes to coordinate `r * ncols + c`.
    pub fn flatten(&self) -> SparseVec {
        let n = self.cols;
        SparseVec::from_pairs(
            self.data
                .iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().map(move |(c, x)| (r * n + c, x.clone())))
                .collect(),
        )
    }

    /// Inverse of [`Matrix::flatten`].
    pub fn from_flat(v: &SparseVec, rows: usize, cols: usize) -> Self {
        let mut buckets = vec![Vec::new(); rows];
        for (i, x) in v.iter() {
            buckets[i / cols].push((i % cols, x.clone()));
        }
        Self::from_rows(cols, buckets.into_iter().map(SparseVec::from_pairs).collect())
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    /// `self * v`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(
            self.data
                .iter()
                .enumerate()
                .filter_map(|(i, r)| {
                    let x = r.dot(v);
                    (!x.is_zero()).then_some((i, x))
                })
                .collect(),
        )
    }

    /// `vᵀ * self`, computed as a combination of rows.
    pub fn apply_left(&self, v: &SparseVec) -> SparseVec {
        linear_combination(v.iter().map(|(i, x)| (x, &self.data[i])))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.par_iter().map(|r| other.apply_left(r)).collect();
        Ok(Matrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.combine(other, &Scalar::one())
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.combine(other, &-Scalar::one())
    }

    fn combine(&self, other: &Matrix, c: &Scalar) -> Result<Matrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::Shape("operands differ in shape".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.axpy(c, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.scale(c)).collect() }
    }

    /// Commutator `self*other - other*self` for square matrices.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Rows stacked below each other.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::Shape("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: data.len(), cols: self.cols, data })
    }

    /// Side-by-side concatenation.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::Shape("hstack row mismatch".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.concat(self.cols, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols + other.cols, data })
    }

    /// Restriction to the given row and column index lists (re-indexed in order).
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &c) in col_idx.iter().enumerate() {
            pos[c] = k;
        }
        let data = row_idx
            .iter()
            .map(|&r| self.data[r].remap(|j| (pos[j] != usize::MAX).then_some(pos[j])))
            .collect();
        Matrix { rows: row_idx.len(), cols: col_idx.len(), data }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn rank(&self) -> usize {
        elim::rank_of_rows(&self.data)
    }

    pub fn det(&self) -> Result<Scalar, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape("determinant of non-square matrix".into()));
        }
        Ok(elim::determinant(&self.to_dense()))
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape("inverse of non-square matrix".into()));
        }
        // Solving c·M = e_i gives row i of M⁻¹.
        let solver = Solver::new(&self.data);
        if solver.rank() < self.rows {
            return Err(LinalgError::Singular);
        }
        let rows: Vec<SparseVec> = (0..self.rows)
            .into_par_iter()
            .map(|i| solver.solve(&SparseVec::unit(i)).expect("full rank"))
            .collect();
        Ok(Matrix::from_rows(self.rows, rows))
    }

    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric() && elim::is_positive_definite(&self.data, self.rows)
    }

    /// Block-diagonal matrix from square or rectangular blocks.
    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows);
        let mut off = 0;
        for b in blocks {
            data.extend(b.data.iter().map(|r| r.shifted(off)));
            off += b.cols;
        }
        Matrix { rows, cols, data }
    }
}

/// The adjoint `m*` of `m: src -> dst` for the inner products given by the
/// gram matrices, so that `<m x, y>_dst = <x, m* y>_src`; equals `G_src⁻¹ mᵀ G_dst`.
pub fn adjoint(m: &Matrix, gram_src: &Matrix, gram_dst: &Matrix) -> Result<Matrix, LinalgError> {
    if gram_src.nrows() != m.ncols() || gram_dst.nrows() != m.nrows() {
        return Err(LinalgError::Shape("gram sizes do not match the map".into()));
    }
    if !gram_src.is_symmetric() || !gram_dst.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let mt_g = m.transpose().mul(gram_dst)?;
    let src_inv = gram_src.inverse()?;
    src_inv.mul(&mt_g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    #[test]
    fn small_ranks() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::from_i64(&[vec![1, 1], vec![1, 1]]).rank(), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(&[vec![2, 1, 0], vec![0, 1, 3], vec![1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
        assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(3));
        assert!(Matrix::from_i64(&[vec![1, 2], vec![2, 4]]).inverse().is_err());
    }

    #[test]
    fn adjoint_identity_gram_is_transpose() {
        let m = Matrix::from_i64(&[vec![1, 2, 3], vec![0, -1, 4]]);
        let a = adjoint(&m, &Matrix::identity(3), &Matrix::identity(2)).unwrap();
        assert_eq!(a, m.transpose());
        let back = adjoint(&a, &Matrix::identity(2), &Matrix::identity(3)).unwrap();
        assert_eq!(back, m);
        let bad = Matrix::from_i64(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(adjoint(&m, &Matrix::identity(3), &bad), Err(LinalgError::NotSymmetric));
    }

    #[test]
    fn positive_definite() {
        assert!(Matrix::from_i64(&[vec![2, 1], vec![1, 2]]).is_positive_definite());
        assert!(!Matrix::from_i64(&[vec![1, 2], vec![2, 1]]).is_positive_definite());
        assert_eq!(Matrix::from_i64(&[vec![2, 1], vec![1, 2]]).det().unwrap(), int(3));
    }
}
