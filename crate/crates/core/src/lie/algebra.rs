use std::ops::Range;
use std::sync::OnceLock;

use num_traits::Zero;
use rayon::prelude::*;

use super::{Family, FamilySpec, LieError};
use crate::linalg::vector::linear_combination;
use crate::linalg::{Matrix, Scalar, SparseVec};

/// Extra structure on `g_{-1}` recorded by the constructors.
///
/// Local coordinates on `g_{-1}` number its basis `0..2m`; local index `x`
/// is global basis index `1 + x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Metadata {
    None,
    /// Splitting into two Lagrangian pieces, as local indices.
    Split { e: Vec<usize>, f: Vec<usize> },
    /// Complex structure on `g_{-1}`.
    Complex { j: Matrix },
    /// `g_{-1} = R^2* ⊗ R^n`; local index `a * n + c`, with the diagonal
    /// inner product `signs` on `R^n`.
    Tensor { n: usize, signs: Vec<i64> },
    /// Right multiplications by `i`, `j`, `k` on `g_{-1} = H^n`.
    Quaternionic { i: Matrix, j: Matrix, k: Matrix },
    /// Root of every basis vector in simple-root coordinates (zero on the Cartan part).
    Chevalley { cartan: Vec<Vec<i64>>, roots: Vec<Vec<i64>> },
}

/// A real Lie algebra with a contact grading, given by exact structure
/// constants. The basis is ordered by degree, so `e_0` spans `g_{-2}` and the
/// last basis vector spans `g_2`.
#[derive(Debug)]
pub struct GradedLieAlgebra {
    family: Family,
    params: Vec<usize>,
    degrees: Vec<i8>,
    table: Vec<SparseVec>,
    theta: Matrix,
    metadata: Metadata,
    gram: OnceLock<Matrix>,
}

impl Clone for GradedLieAlgebra {
    fn clone(&self) -> Self {
        Self {
            family: self.family,
            params: self.params.clone(),
            degrees: self.degrees.clone(),
            table: self.table.clone(),
            theta: self.theta.clone(),
            metadata: self.metadata.clone(),
            gram: OnceLock::new(),
        }
    }
}

impl PartialEq for GradedLieAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.family == o.family
            && self.params == o.params
            && self.degrees == o.degrees
            && self.table == o.table
            && self.theta == o.theta
            && self.metadata == o.metadata
    }
}

impl GradedLieAlgebra {
    /// Assembles an algebra from brackets of pairs `i < j`; the rest of the
    /// table follows from antisymmetry. `theta` acts on coordinate columns.
    pub fn from_upper(
        family: Family,
        params: Vec<usize>,
        degrees: Vec<i8>,
        upper: impl Fn(usize, usize) -> SparseVec + Sync,
        theta: Matrix,
        metadata: Metadata,
    ) -> Result<Self, LieError> {
        let dim = degrees.len();
        if theta.nrows() != dim || theta.ncols() != dim {
            return Err(LieError::Consistency("involution has the wrong size".into()));
        }
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(LieError::Consistency("basis is not ordered by degree".into()));
        }
        let rows: Vec<Vec<SparseVec>> = (0..dim)
            .into_par_iter()
            .map(|i| (i + 1..dim).map(|j| upper(i, j)).collect())
            .collect();
        let mut table = vec![SparseVec::new(); dim * dim];
        for (i, row) in rows.into_iter().enumerate() {
            for (off, v) in row.into_iter().enumerate() {
                let j = i + 1 + off;
                table[j * dim + i] = v.neg();
                table[i * dim + j] = v;
            }
        }
        Ok(Self { family, params, degrees, table, theta, metadata, gram: OnceLock::new() })
    }

    /// Raw constructor used by the document importer; the table is taken as is.
    pub fn from_table(
        family: Family,
        params: Vec<usize>,
        degrees: Vec<i8>,
        table: Vec<SparseVec>,
        theta: Matrix,
        metadata: Metadata,
    ) -> Self {
        Self { family, params, degrees, table, theta, metadata, gram: OnceLock::new() }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &[usize] {
        &self.params
    }

    pub fn spec(&self) -> FamilySpec {
        FamilySpec::new(self.family, &self.params)
    }

    pub fn label(&self) -> String {
        self.spec().to_string()
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i8] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i8 {
        self.degrees[i]
    }

    pub fn metadata(&self) -> &Metadata {
        &self.metadata
    }

    pub fn theta(&self) -> &Matrix {
        &self.theta
    }

    /// Index range of `g_d` (empty when `|d| > 2`).
    pub fn range(&self, d: i8) -> Range<usize> {
        let lo = self.degrees.partition_point(|&x| x < d);
        let hi = self.degrees.partition_point(|&x| x <= d);
        lo..hi
    }

    /// Dimensions of `g_{-2}, ..., g_2`.
    pub fn component_dims(&self) -> [usize; 5] {
        [-2, -1, 0, 1, 2].map(|d| self.range(d).len())
    }

    /// Half the dimension of `g_{-1}`.
    pub fn m(&self) -> usize {
        self.range(-1).len() / 2
    }

    /// Dimension of `g_- = g_{-2} ⊕ g_{-1}`.
    pub fn minus_dim(&self) -> usize {
        self.range(-2).len() + self.range(-1).len()
    }

    /// The fixed basis vector of `g_2`.
    pub fn psi_index(&self) -> usize {
        self.dim() - 1
    }

    pub fn bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn table(&self) -> &[SparseVec] {
        &self.table
    }

    pub fn bracket_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let c = a * b;
                pairs.extend(self.bracket(i, j).iter().map(|(k, v)| (k, &c * v)));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// `[e_i, y]`.
    pub fn bracket_basis(&self, i: usize, y: &SparseVec) -> SparseVec {
        linear_combination(y.iter().map(|(j, b)| (b, self.bracket(i, j))))
    }

    /// Matrix of `ad_x` on the whole algebra.
    pub fn ad(&self, x: &SparseVec) -> Matrix {
        let cols: Vec<SparseVec> = (0..self.dim())
            .map(|j| linear_combination(x.iter().map(|(i, a)| (a, self.bracket(i, j)))))
            .collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Matrix of `ad_x` from `g_src` to `g_dst` in local coordinates.
    pub fn ad_block(&self, x: &SparseVec, src: i8, dst: i8) -> Matrix {
        let (rs, rd) = (self.range(src), self.range(dst));
        let cols: Vec<SparseVec> = rs
            .clone()
            .map(|j| {
                linear_combination(x.iter().map(|(i, a)| (a, self.bracket(i, j))))
                    .remap(|k| rd.contains(&k).then(|| k - rd.start))
            })
            .collect();
        Matrix::from_columns(rd.len(), &cols)
    }

    /// The element of `g_0` acting by `d` on `g_d`, or `None` if the grading is not inner.
    pub fn grading_element(&self) -> Option<SparseVec> {
        let dim = self.dim();
        let r0 = self.range(0);
        let gens: Vec<SparseVec> = r0.clone().map(|a| self.ad(&SparseVec::unit(a)).flatten()).collect();
        let target = SparseVec::from_pairs((0..dim).map(|i| (i * dim + i, Scalar::from_integer(self.degree(i).into()))).collect());
        let coeffs = crate::linalg::elim::Solver::new(&gens).solve(&target)?;
        Some(coeffs.shifted(r0.start))
    }

    /// Bracket form `b` on `g_{-1}` in local coordinates: `[X, Y] = b(X, Y) e_0`.
    pub fn bracket_form(&self) -> Matrix {
        let r = self.range(-1);
        let grid: Vec<Vec<Scalar>> = r
            .clone()
            .map(|i| r.clone().map(|j| self.bracket(i, j).get(0)).collect())
            .collect();
        Matrix::from_dense(&grid)
    }

    /// Killing form `tr(ad e_i ad e_k)`.
    pub fn killing(&self, i: usize, k: usize) -> Scalar {
        let mut acc = Scalar::zero();
        for m in 0..self.dim() {
            for (l, c) in self.bracket(k, m).iter() {
                if let Some(d) = self.bracket(i, l).get_ref(m) {
                    acc += c * d;
                }
            }
        }
        acc
    }

    /// Positive definite form `<X, Y> = -B(X, θY)` with `B` the Killing form.
    /// It is block diagonal by degree.
    pub fn gram(&self) -> &Matrix {
        self.gram.get_or_init(|| {
            let dim = self.dim();
            let theta_cols = self.theta.columns();
            let rows: Vec<SparseVec> = (0..dim)
                .into_par_iter()
                .map(|i| {
                    let same = self.range(self.degrees[i]);
                    let opp = self.range(-self.degrees[i]);
                    let kill: Vec<(usize, Scalar)> = opp
                        .map(|k| (k, self.killing(i, k)))
                        .filter(|(_, v)| !v.is_zero())
                        .collect();
                    let kv = SparseVec::from_pairs(kill);
                    SparseVec::from_pairs(same.map(|j| (j, -kv.dot(&theta_cols[j]))).collect())
                })
                .collect();
            Matrix::from_rows(dim, rows)
        })
    }

    /// Copy with one structure constant replaced (and its antisymmetric partner).
    pub fn with_constant(&self, i: usize, j: usize, k: usize, v: Scalar) -> Self {
        let mut out = self.clone();
        let dim = self.dim();
        let set = |vec: &SparseVec, val: Scalar| {
            let mut p: Vec<(usize, Scalar)> =
                vec.iter().filter(|(x, _)| *x != k).map(|(x, y)| (x, y.clone())).collect();
            p.push((k, val));
            SparseVec::from_pairs(p)
        };
        out.table[i * dim + j] = set(&self.table[i * dim + j], v.clone());
        out.table[j * dim + i] = set(&self.table[j * dim + i], -v);
        out
    }

    /// Copy with the `g_{-2}` and `g_2` basis vectors rescaled by `c` and `1/c`;
    /// this rescales the bracket form by `1/c`.
    pub fn rescale_contact_line(&self, c: &Scalar) -> Self {
        let dim = self.dim();
        let top = self.psi_index();
        let factor = |i: usize| -> Scalar {
            if i == 0 {
                c.clone()
            } else if i == top {
                c.recip()
            } else {
                Scalar::from_integer(1.into())
            }
        };
        // New basis e'_i = f_i e_i, so [e'_i, e'_j] = f_i f_j / f_k c_ij^k e'_k.
        let table = (0..dim * dim)
            .map(|ij| {
                let (i, j) = (ij / dim, ij % dim);
                let s = factor(i) * factor(j);
                SparseVec::from_pairs(self.table[ij].iter().map(|(k, v)| (k, v * &s / factor(k))).collect())
            })
            .collect();
        let theta = Matrix::from_rows(
            dim,
            self.theta
                .rows()
                .iter()
                .enumerate()
                .map(|(k, r)| SparseVec::from_pairs(r.iter().map(|(j, v)| (j, v * factor(j) / factor(k))).collect()))
                .collect(),
        );
        Self::from_table(self.family, self.params.clone(), self.degrees.clone(), table, theta, self.metadata.clone())
    }
}
