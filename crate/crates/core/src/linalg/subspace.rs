use serde::{Deserialize, Serialize};

use super::elim::{self, Solver};
use super::matrix::Matrix;
use super::scalar::{self, Scalar};
use super::vector::SparseVec;
use super::LinalgError;

/// A linear subspace of `Q^ambient` held in its canonical reduced echelon basis.
///
/// Each basis vector has a leading one at its pivot and zeros at every other
/// pivot; basis vectors are sorted by pivot. Two values compare equal exactly
/// when they describe the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[SparseVec]) -> Result<Self, LinalgError> {
        if let Some(m) = vectors.iter().filter_map(|v| v.max_index()).max() {
            if m >= ambient {
                return Err(LinalgError::AmbientMismatch(m + 1, ambient));
            }
        }
        Ok(Self { ambient, basis: elim::rref(vectors) })
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: (0..ambient).map(SparseVec::unit).collect() }
    }

    /// Span of the given coordinate axes.
    pub fn coordinate(ambient: usize, axes: impl IntoIterator<Item = usize>) -> Self {
        let v: Vec<SparseVec> = axes.into_iter().map(SparseVec::unit).collect();
        Self::span(ambient, &v).expect("axes inside ambient space")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    /// The basis as an `ambient × dim` matrix of columns.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    pub fn canonicalize(&self) -> Self {
        Self { ambient: self.ambient, basis: elim::rref(&self.basis) }
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn solver(&self) -> Solver {
        Solver::new(&self.basis)
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool, LinalgError> {
        if let Some(m) = v.max_index() {
            if m >= self.ambient {
                return Err(LinalgError::AmbientMismatch(m + 1, self.ambient));
            }
        }
        Ok(self.solver().contains(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check(other)?;
        let s = self.solver();
        Ok(other.basis.iter().all(|v| s.contains(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &v)
    }

    /// Zassenhaus intersection: eliminate the rows `(u, u)` for `u` in `self`
    /// and `(w, 0)` for `w` in `other`; rows supported in the second half span
    /// the intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let n = self.ambient;
        let mut rows: Vec<SparseVec> = self.basis.iter().map(|u| u.concat(n, u)).collect();
        rows.extend(other.basis.iter().cloned());
        let ech = elim::rref(&rows);
        let inter: Vec<SparseVec> = ech
            .iter()
            .filter(|r| r.leading().is_some_and(|(i, _)| i >= n))
            .map(|r| r.window(n, 2 * n))
            .collect();
        Subspace::span(n, &inter)
    }

    pub fn is_transverse(&self, other: &Subspace) -> Result<bool, LinalgError> {
        Ok(self.intersect(other)?.is_zero())
    }

    /// Coordinates of `v` in the canonical basis.
    pub fn coordinates(&self, v: &SparseVec) -> Result<SparseVec, LinalgError> {
        self.solver().solve(v).ok_or(LinalgError::NotInSpan)
    }

    /// Image of the subspace under `m`.
    pub fn map(&self, m: &Matrix) -> Result<Subspace, LinalgError> {
        if m.ncols() != self.ambient {
            return Err(LinalgError::AmbientMismatch(m.ncols(), self.ambient));
        }
        let v: Vec<SparseVec> = self.basis.iter().map(|b| m.apply(b)).collect();
        Subspace::span(m.nrows(), &v)
    }

    /// True when `m` maps the subspace into itself.
    pub fn is_invariant(&self, m: &Matrix) -> Result<bool, LinalgError> {
        self.contains_subspace(&self.map(m)?)
    }

    /// Elements of `self` orthogonal to `other` for the symmetric form `gram`.
    pub fn orthogonal_complement_in(&self, other: &Subspace, gram: &Matrix) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        // Constraint rows: (G w)ᵀ restricted to the coordinates of self.
        let gw: Vec<SparseVec> = other.basis.iter().map(|w| gram.apply(w)).collect();
        let cons: Vec<SparseVec> = gw
            .iter()
            .map(|g| SparseVec::from_pairs(self.basis.iter().enumerate().map(|(k, b)| (k, b.dot(g))).collect()))
            .collect();
        let coeffs = elim::kernel_of_rows(&cons, self.dim());
        let v: Vec<SparseVec> = coeffs
            .iter()
            .map(|c| super::vector::linear_combination(c.iter().map(|(k, x)| (x, &self.basis[k]))))
            .collect();
        Subspace::span(self.ambient, &v)
    }

    pub fn to_strings(&self) -> Vec<Vec<(usize, String)>> {
        self.basis
            .iter()
            .map(|v| v.iter().map(|(i, x)| (i, scalar::to_string(x))).collect())
            .collect()
    }
}

/// Canonical basis of `{v : m v = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    Subspace { ambient: m.ncols(), basis: elim::kernel_of_rows(m.rows(), m.ncols()) }
}

/// Column space of `m`.
pub fn image(m: &Matrix) -> Subspace {
    Subspace { ambient: m.nrows(), basis: elim::rref(&m.columns()) }
}

/// Serialized form: ambient dimension plus sparse basis with rational strings.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SubspaceDoc {
    pub ambient: usize,
    pub basis: Vec<Vec<(usize, String)>>,
}

impl From<&Subspace> for SubspaceDoc {
    fn from(s: &Subspace) -> Self {
        Self { ambient: s.ambient, basis: s.to_strings() }
    }
}

impl TryFrom<&SubspaceDoc> for Subspace {
    type Error = LinalgError;

    fn try_from(d: &SubspaceDoc) -> Result<Self, LinalgError> {
        let vs = d
            .basis
            .iter()
            .map(|v| {
                let pairs: Result<Vec<(usize, Scalar)>, _> =
                    v.iter().map(|(i, s)| scalar::parse(s).map(|x| (*i, x))).collect();
                pairs.map(SparseVec::from_pairs)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::span(d.ambient, &vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    #[test]
    fn axes_meet_in_zero() {
        let x = Subspace::coordinate(2, [0]);
        let y = Subspace::coordinate(2, [1]);
        assert!(x.intersect(&y).unwrap().is_zero());
        assert_eq!(x.intersect(&x).unwrap(), x);
        assert_eq!(x.sum(&y).unwrap(), Subspace::full(2));
    }

    #[test]
    fn kernel_trivial_cases() {
        assert!(kernel(&Matrix::identity(4)).is_zero());
        assert_eq!(kernel(&Matrix::zeros(3, 3)), Subspace::full(3));
    }

    #[test]
    fn mismatch_rejected() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert_eq!(a.intersect(&b), Err(LinalgError::AmbientMismatch(2, 3)));
    }

    #[test]
    fn orthogonal_complement() {
        let all = Subspace::full(3);
        let line = Subspace::span(3, &[SparseVec::from_pairs(vec![(0, int(1)), (1, int(1))])]).unwrap();
        let c = all.orthogonal_complement_in(&line, &Matrix::identity(3)).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(c.is_transverse(&line).unwrap());
    }
}
