//! Classical families as real matrix Lie algebras.
//!
//! Each algebra is a space of real `N × N` matrices closed under `X ↦ -Xᵀ`,
//! which serves as the Cartan involution. The contact grading comes from a
//! diagonal grading element with block weights `(1, 0, ..., 0, -1)`. Complex
//! and quaternionic matrices are realified entrywise: `a + ib` becomes the
//! block pattern `[[a, -b], [b, a]]` on a doubled index set, and a quaternion
//! `q` becomes the `4 × 4` matrix of left multiplication by `q` in the basis
//! `1, i, j, k`.

use num_traits::{One, Zero};

use super::algebra::{GradedLieAlgebra, Metadata};
use super::{Family, LieError};
use crate::linalg::elim::Solver;
use crate::linalg::scalar::{frac, int};
use crate::linalg::{Matrix, Scalar, SparseVec};

/// A real matrix algebra given by a spanning set of homogeneous matrices.
struct MatrixModel {
    weights: Vec<i64>,
    elements: Vec<Matrix>,
}

fn flatten(m: &Matrix) -> SparseVec {
    let n = m.ncols();
    SparseVec::from_pairs(
        m.rows()
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, x)| (r * n + c, x.clone())))
            .collect(),
    )
}

impl MatrixModel {
    fn degree_of(&self, m: &Matrix) -> Result<i8, LieError> {
        let mut deg = None;
        for (r, row) in m.rows().iter().enumerate() {
            for (c, _) in row.iter() {
                let d = self.weights[r] - self.weights[c];
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => {
                        return Err(LieError::Consistency("basis matrix is not homogeneous".into()))
                    }
                    _ => {}
                }
            }
        }
        let d = deg.ok_or_else(|| LieError::Consistency("zero basis matrix".into()))?;
        Ok(d as i8)
    }

    /// Orders the basis by degree (stable), computes structure constants and
    /// the involution, and returns the sorted basis matrices alongside.
    fn build(
        self,
        family: Family,
        params: Vec<usize>,
        metadata: impl FnOnce(&[Matrix], &GradedLieAlgebra) -> Result<Metadata, LieError>,
    ) -> Result<GradedLieAlgebra, LieError> {
        let mut tagged: Vec<(i8, Matrix)> = Vec::with_capacity(self.elements.len());
        for e in &self.elements {
            tagged.push((self.degree_of(e)?, e.clone()));
        }
        tagged.sort_by_key(|t| t.0);
        let degrees: Vec<i8> = tagged.iter().map(|t| t.0).collect();
        let basis: Vec<Matrix> = tagged.into_iter().map(|t| t.1).collect();
        let flat: Vec<SparseVec> = basis.iter().map(flatten).collect();
        let solver = Solver::new(&flat);
        if solver.rank() != flat.len() {
            return Err(LieError::Consistency("basis matrices are dependent".into()));
        }
        let express = |m: &Matrix| {
            solver
                .solve(&flatten(m))
                .ok_or_else(|| LieError::Consistency("matrix space is not closed".into()))
        };
        let mut theta_cols = Vec::with_capacity(basis.len());
        for b in &basis {
            theta_cols.push(express(&b.transpose().scale(&-Scalar::one()))?);
        }
        let theta = Matrix::from_columns(basis.len(), &theta_cols);
        let closed = std::sync::atomic::AtomicBool::new(true);
        let g = GradedLieAlgebra::from_upper(
            family,
            params,
            degrees,
            |i, j| {
                let c = basis[i].commutator(&basis[j]).expect("square matrices");
                match express(&c) {
                    Ok(v) => v,
                    Err(_) => {
                        closed.store(false, std::sync::atomic::Ordering::Relaxed);
                        SparseVec::new()
                    }
                }
            },
            theta,
            Metadata::None,
        )?;
        if !closed.load(std::sync::atomic::Ordering::Relaxed) {
            return Err(LieError::Consistency("matrix space is not closed under brackets".into()));
        }
        let meta = metadata(&basis, &g)?;
        Ok(GradedLieAlgebra::from_table(
            g.family(),
            g.params().to_vec(),
            g.degrees().to_vec(),
            g.table().to_vec(),
            g.theta().clone(),
            meta,
        ))
    }
}

fn block_weights(n: usize, outer: usize, repeat: usize) -> Vec<i64> {
    let mut w = Vec::new();
    w.extend(std::iter::repeat_n(1, outer));
    w.extend(std::iter::repeat_n(0, n));
    w.extend(std::iter::repeat_n(-1, outer));
    w.iter().flat_map(|&x| std::iter::repeat_n(x, repeat)).collect()
}

fn real_matrix(size: usize, entries: Vec<(usize, usize, Scalar)>) -> Matrix {
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); size];
    for (r, c, v) in entries {
        rows[r].push((c, v));
    }
    Matrix::from_rows(size, rows.into_iter().map(SparseVec::from_pairs).collect())
}

/// `sl(n+2, R)` with blocks of sizes `(1, n, 1)`. Basis: off-diagonal matrix
/// units and `E_aa - E_{a+1,a+1}`, in lexicographic order of the matrix unit.
/// The first column spans the `E` half of `g_{-1}`, the last row the `F` half.
pub fn construct_sl(n: usize) -> Result<GradedLieAlgebra, LieError> {
    if n < 2 {
        return Err(LieError::Parameter(format!("sl(n+2) needs n >= 2, got {n}")));
    }
    let size = n + 2;
    let mut elements = Vec::new();
    for a in 0..size {
        for b in 0..size {
            if a != b {
                elements.push(real_matrix(size, vec![(a, b, int(1))]));
            } else if a + 1 < size {
                elements.push(real_matrix(size, vec![(a, a, int(1)), (a + 1, a + 1, int(-1))]));
            }
        }
    }
    let model = MatrixModel { weights: block_weights(n, 1, 1), elements };
    model.build(Family::Sl, vec![n], |basis, g| {
        let (mut e, mut f) = (Vec::new(), Vec::new());
        for (x, i) in g.range(-1).enumerate() {
            let col0 = basis[i].rows().iter().any(|r| r.get_ref(0).is_some());
            if col0 { e.push(x) } else { f.push(x) }
        }
        Ok(Metadata::Split { e, f })
    })
}

/// Signed permutation `J` with `J_{r, perm[r]} = sign[r]`.
struct SignedPerm {
    perm: Vec<usize>,
    sign: Vec<i64>,
}

impl SignedPerm {
    /// Antidiagonal identity on the outer blocks of size `outer`, `diag(mid)` inside.
    fn contact(outer: usize, mid: &[i64]) -> Self {
        let n = mid.len();
        let size = n + 2 * outer;
        let mut perm = vec![0; size];
        let mut sign = vec![1; size];
        for a in 0..outer {
            perm[a] = size - outer + a;
            perm[size - outer + a] = a;
        }
        for (c, &s) in mid.iter().enumerate() {
            perm[outer + c] = outer + c;
            sign[outer + c] = s;
        }
        Self { perm, sign }
    }
}

fn signature(p: usize, q: usize) -> Vec<i64> {
    let mut s = vec![1; p];
    s.extend(std::iter::repeat_n(-1, q));
    s
}

/// `so(p+2, q+2)` realized as `{ J Y : Y skew }` for the symmetric form
/// `J = [[0, 0, I_2], [0, I_{p,q}, 0], [I_2, 0, 0]]`. Basis `J(E_ab - E_ba)`, `a < b`.
pub fn construct_so(p: usize, q: usize) -> Result<GradedLieAlgebra, LieError> {
    let n = p + q;
    if n < 3 {
        return Err(LieError::Parameter(format!("so(p+2,q+2) needs p+q >= 3, got {p}+{q}")));
    }
    let size = n + 4;
    let signs = signature(p, q);
    let j = SignedPerm::contact(2, &signs);
    let mut elements = Vec::new();
    for a in 0..size {
        for b in a + 1..size {
            // (J Y)_{r c} = sign_r Y_{perm r, c}; Y = E_ab - E_ba.
            let mut ent = Vec::new();
            for r in 0..size {
                let s = int(j.sign[r]);
                if j.perm[r] == a {
                    ent.push((r, b, s.clone()));
                }
                if j.perm[r] == b {
                    ent.push((r, a, -s));
                }
            }
            elements.push(real_matrix(size, ent));
        }
    }
    let model = MatrixModel { weights: block_weights(n, 2, 1), elements };
    model.build(Family::So, vec![p, q], |_, _| Ok(Metadata::Tensor { n, signs: signs.clone() }))
}

/// Realifies a complex matrix given by entries `(row, col, re, im)`.
fn realify_complex(size: usize, entries: Vec<(usize, usize, Scalar, Scalar)>) -> Matrix {
    let mut out = Vec::new();
    for (r, c, re, im) in entries {
        if !re.is_zero() {
            out.push((r, c, re.clone()));
            out.push((r + size, c + size, re));
        }
        if !im.is_zero() {
            out.push((r, c + size, -im.clone()));
            out.push((r + size, c, im));
        }
    }
    real_matrix(2 * size, out)
}

/// Inverts a reading map `Φ: g_{-1} → R^d` given by its columns and conjugates
/// each operator in `ops` back to local coordinates on `g_{-1}`.
fn pull_back(phi_cols: Vec<SparseVec>, ops: &[Matrix]) -> Result<Vec<Matrix>, LieError> {
    let d = phi_cols.len();
    let phi = Matrix::from_columns(d, &phi_cols);
    let inv = phi.inverse().map_err(|_| LieError::Consistency("reading map on g_-1 is singular".into()))?;
    ops.iter()
        .map(|op| Ok(inv.mul(&op.mul(&phi)?)?))
        .collect()
}

/// `su(p+1, q+1)` realized as trace-free `{ J Y : Y skew-Hermitian }` with
/// `J = antidiag(1, I_{p,q}, 1)`, then realified.
pub fn construct_su(p: usize, q: usize) -> Result<GradedLieAlgebra, LieError> {
    let n = p + q;
    if n < 2 {
        return Err(LieError::Parameter(format!("su(p+1,q+1) needs p+q >= 2, got {p}+{q}")));
    }
    let size = n + 2;
    let signs = signature(p, q);
    let j = SignedPerm::contact(1, &signs);
    let jy = |y: Vec<(usize, usize, Scalar, Scalar)>| {
        let mut out = Vec::new();
        for (a, b, re, im) in y {
            for r in 0..size {
                if j.perm[r] == a {
                    let s = int(j.sign[r]);
                    out.push((r, b, &s * &re, &s * &im));
                }
            }
        }
        realify_complex(size, out)
    };
    let last = size - 1;
    let mut elements = Vec::new();
    for a in 0..size {
        for b in a..size {
            if a == b {
                let mut y = vec![(a, a, int(0), int(1))];
                if a != 0 && a != last {
                    let half = frac(-signs[a - 1], 2);
                    y.push((0, last, int(0), half.clone()));
                    y.push((last, 0, int(0), half));
                }
                elements.push(jy(y));
            } else {
                elements.push(jy(vec![(a, b, int(1), int(0)), (b, a, int(-1), int(0))]));
                if !(a == 0 && b == last) {
                    elements.push(jy(vec![(a, b, int(0), int(1)), (b, a, int(0), int(1))]));
                }
            }
        }
    }
    // rows r and r + size of the realification share the weight of r
    let base = block_weights(n, 1, 1);
    let weights: Vec<i64> = base.iter().chain(base.iter()).cloned().collect();
    let model = MatrixModel { weights, elements };
    model.build(Family::Su, vec![p, q], |basis, g| {
        // Φ reads the middle entries of the first column as (re_1, im_1, re_2, im_2, ...).
        let phi_cols: Vec<SparseVec> = g
            .range(-1)
            .map(|i| {
                let m = &basis[i];
                let mut pairs = Vec::new();
                for c in 0..n {
                    pairs.push((2 * c, m.get(1 + c, 0)));
                    pairs.push((2 * c + 1, m.get(size + 1 + c, 0)));
                }
                SparseVec::from_pairs(pairs)
            })
            .collect();
        let mut mult_i = Vec::new();
        for c in 0..n {
            mult_i.push(SparseVec::single(2 * c + 1, int(1)));
            mult_i.push(SparseVec::single(2 * c, int(-1)));
        }
        let op = Matrix::from_columns(2 * n, &mult_i);
        let j = pull_back(phi_cols, &[op])?.remove(0);
        Ok(Metadata::Complex { j })
    })
}

type Quat = [Scalar; 4];

fn qmul(a: &Quat, b: &Quat) -> Quat {
    [
        &a[0] * &b[0] - &a[1] * &b[1] - &a[2] * &b[2] - &a[3] * &b[3],
        &a[0] * &b[1] + &a[1] * &b[0] + &a[2] * &b[3] - &a[3] * &b[2],
        &a[0] * &b[2] - &a[1] * &b[3] + &a[2] * &b[0] + &a[3] * &b[1],
        &a[0] * &b[3] + &a[1] * &b[2] - &a[2] * &b[1] + &a[3] * &b[0],
    ]
}

fn qunit(t: usize, s: i64) -> Quat {
    let mut q: Quat = [int(0), int(0), int(0), int(0)];
    q[t] = int(s);
    q
}

fn qconj(a: &Quat) -> Quat {
    [a[0].clone(), -a[1].clone(), -a[2].clone(), -a[3].clone()]
}

/// 4×4 matrix of `x ↦ q x` (`left = true`) or `x ↦ x q`.
fn qmatrix(q: &Quat, left: bool) -> Vec<(usize, usize, Scalar)> {
    let mut out = Vec::new();
    for c in 0..4 {
        let e = qunit(c, 1);
        let col = if left { qmul(q, &e) } else { qmul(&e, q) };
        for (r, v) in col.into_iter().enumerate() {
            if !v.is_zero() {
                out.push((r, c, v));
            }
        }
    }
    out
}

/// `so*(2n+4)`: quaternionic `(n+2) × (n+2)` matrices `X = -K H` with `H`
/// Hermitian and `K = [[0, 0, 1], [0, j I_n, 0], [-1, 0, 0]]`, realified by
/// left multiplication. Its contact grading has `g_{-1} = H^n`.
pub fn construct_so_star(n: usize) -> Result<GradedLieAlgebra, LieError> {
    if n < 2 {
        return Err(LieError::Parameter(format!("so* needs n >= 2, got {n}")));
    }
    let size = n + 2;
    let last = size - 1;
    // K as (column index, quaternion) per row.
    let k_row = |r: usize| -> (usize, Quat) {
        if r == 0 {
            (last, qunit(0, 1))
        } else if r == last {
            (0, qunit(0, -1))
        } else {
            (r, qunit(2, 1))
        }
    };
    let realify = |entries: Vec<(usize, usize, Quat)>| {
        let mut out = Vec::new();
        for (r, c, q) in entries {
            for (i, j, v) in qmatrix(&q, true) {
                out.push((4 * r + i, 4 * c + j, v));
            }
        }
        real_matrix(4 * size, out)
    };
    // X = -K H, (K H)_{r c} = K_{r, s(r)} H_{s(r), c}.
    let from_h = |h: Vec<(usize, usize, Quat)>| {
        let mut out = Vec::new();
        for r in 0..size {
            let (s, kq) = k_row(r);
            for (a, c, q) in &h {
                if *a == s {
                    let v = qmul(&kq, q);
                    out.push((r, *c, [-v[0].clone(), -v[1].clone(), -v[2].clone(), -v[3].clone()]));
                }
            }
        }
        realify(out)
    };
    let mut elements = Vec::new();
    for a in 0..size {
        for b in a..size {
            if a == b {
                elements.push(from_h(vec![(a, a, qunit(0, 1))]));
            } else {
                for t in 0..4 {
                    let q = qunit(t, 1);
                    elements.push(from_h(vec![(a, b, q.clone()), (b, a, qconj(&q))]));
                }
            }
        }
    }
    let base = block_weights(n, 1, 1);
    let weights: Vec<i64> = base.iter().flat_map(|&w| std::iter::repeat_n(w, 4)).collect();
    let model = MatrixModel { weights, elements };
    model.build(Family::SoStar, vec![n], |basis, g| {
        // Φ reads the quaternions in the middle of the first column.
        let phi_cols: Vec<SparseVec> = g
            .range(-1)
            .map(|i| {
                let m = &basis[i];
                SparseVec::from_pairs(
                    (0..n)
                        .flat_map(|c| (0..4).map(move |t| (c, t)))
                        .map(|(c, t)| (4 * c + t, m.get(4 * (1 + c) + t, 0)))
                        .collect(),
                )
            })
            .collect();
        let ops: Vec<Matrix> = (1..4)
            .map(|t| {
                let blk = qmatrix(&qunit(t, 1), false);
                let mut ent = Vec::new();
                for c in 0..n {
                    for (r, s, v) in &blk {
                        ent.push((4 * c + r, 4 * c + s, v.clone()));
                    }
                }
                real_matrix(4 * n, ent)
            })
            .collect();
        let mut m = pull_back(phi_cols, &ops)?;
        let k = m.pop().unwrap();
        let j = m.pop().unwrap();
        let i = m.pop().unwrap();
        Ok(Metadata::Quaternionic { i, j, k })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_dimensions() {
        assert_eq!(construct_sl(2).unwrap().component_dims(), [1, 4, 5, 4, 1]);
        assert_eq!(construct_su(1, 1).unwrap().component_dims(), [1, 4, 5, 4, 1]);
        assert_eq!(construct_so(3, 0).unwrap().component_dims(), [1, 6, 7, 6, 1]);
        assert_eq!(construct_so_star(2).unwrap().component_dims(), [1, 8, 10, 8, 1]);
    }

    #[test]
    fn parameter_errors() {
        assert!(construct_sl(1).is_err());
        assert!(construct_su(1, 0).is_err());
        assert!(construct_so(1, 1).is_err());
        assert!(construct_so_star(1).is_err());
    }
}
