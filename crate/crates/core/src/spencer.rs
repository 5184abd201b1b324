//! Spencer differential `V* ⊗ h → Λ²V* ⊗ V` and first prolongations.
//!
//! Coordinates: `V* ⊗ h` uses `x * dim h + a` for `e^x ⊗ H_a`; `Λ²V* ⊗ V`
//! uses `pair_rank * n + c` with pairs `v < w` ranked lexicographically.

use serde::{Deserialize, Serialize};

use crate::chains::{binomial, build_chain, forms_basis, kostant_block, subsets};
use crate::error::{violation, Error, Result};
use crate::kostant::g0_in_gl;
use crate::linalg::matrix::Matrix;
use crate::linalg::scalar::int;
use crate::linalg::subspace::{image, kernel};
use crate::linalg::{SparseVec, Subspace};
use crate::lie::GradedLieAlgebra;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ProlongationReport {
    pub algebra_label: String,
    pub dim_domain: usize,
    pub dim_kernel: usize,
    pub dim_image: usize,
    pub dim_cokernel: usize,
}

/// `∂Φ(v, w) = Φ(v)(w) − Φ(w)(v)` for `h` given by a basis of `n × n` matrices.
pub fn spencer_differential(basis: &[Matrix], n: usize) -> Result<Matrix> {
    if basis.iter().any(|m| m.nrows() != n || m.ncols() != n) {
        return Err(Error::Precondition("h-basis matrices must be n × n".into()));
    }
    let flats: Vec<SparseVec> = basis.iter().map(Matrix::flatten).collect();
    if Subspace::span(n * n, &flats)?.dim() != basis.len() {
        return Err(Error::Precondition("h-basis is not linearly independent".into()));
    }
    let (_, pair_rank) = forms_basis(n, 2);
    let dh = basis.len();
    let basis_cols: Vec<Vec<SparseVec>> = basis.iter().map(Matrix::columns).collect();
    let cols: Vec<SparseVec> = (0..n * dh)
        .map(|idx| {
            let (x, a) = (idx / dh, idx % dh);
            let h = &basis_cols[a];
            let mut pairs = Vec::new();
            for w in 0..n {
                if w == x {
                    continue;
                }
                // pair (x, w): +H e_w when x < w, and −H e_w in slot order (w, x) otherwise
                let (p, sign) = if x < w { ([x, w], int(1)) } else { ([w, x], int(-1)) };
                let r = pair_rank[&p.to_vec()];
                for (c, v) in h[w].iter() {
                    pairs.push((r * n + c, v * &sign));
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    Ok(Matrix::from_columns(binomial(n, 2) * n, &cols))
}

fn report(label: String, d: &Matrix) -> ProlongationReport {
    let rank = d.rank();
    ProlongationReport {
        algebra_label: label,
        dim_domain: d.ncols(),
        dim_kernel: d.ncols() - rank,
        dim_image: rank,
        dim_cokernel: d.nrows() - rank,
    }
}

/// Standard symplectic form `[[0, I], [−I, 0]]` on `R^{2m}`.
pub fn standard_form(m: usize) -> Matrix {
    let mut rows = vec![Vec::new(); 2 * m];
    for i in 0..m {
        rows[i].push((m + i, int(1)));
        rows[m + i].push((i, int(-1)));
    }
    Matrix::from_rows(2 * m, rows.into_iter().map(SparseVec::from_pairs).collect())
}

/// `csp(V, b) = sp(V, b) ⊕ R·id`, flattened row-major.
pub fn csp_of_form(b: &Matrix) -> Result<Subspace> {
    let n = b.nrows();
    let cols: Vec<SparseVec> = (0..n * n)
        .map(|i| {
            let e = Matrix::from_flat(&SparseVec::unit(i), n, n);
            Ok(e.transpose().mul(b)?.add(&b.mul(&e)?)?.flatten())
        })
        .collect::<Result<_>>()?;
    let sp = kernel(&Matrix::from_columns(n * n, &cols));
    Ok(sp.sum(&Subspace::span(n * n, &[Matrix::identity(n).flatten()])?)?)
}

/// Spencer data for `h = csp(R^{2m})`, with its canonical basis.
pub fn csp_spencer(m: usize) -> Result<(Matrix, Vec<Matrix>)> {
    let n = 2 * m;
    let csp = csp_of_form(&standard_form(m))?;
    let basis: Vec<Matrix> = csp.basis().iter().map(|v| Matrix::from_flat(v, n, n)).collect();
    Ok((spencer_differential(&basis, n)?, basis))
}

pub fn csp_baseline(m: usize) -> Result<ProlongationReport> {
    if m < 2 {
        return Err(Error::Precondition("csp baseline needs m ≥ 2".into()));
    }
    let (d, _) = csp_spencer(m)?;
    Ok(report(format!("csp(R^{})", 2 * m), &d))
}

/// `S³V → V* ⊗ csp(V)`: a symmetric tensor `s` goes to `x ↦ M_x` with
/// `b(M_x e_j, e_k) = s_{xjk}`. Its image is the expected first prolongation.
pub fn symmetric_cubic_image(m: usize) -> Result<Subspace> {
    let n = 2 * m;
    let b = standard_form(m);
    let csp = csp_of_form(&b)?;
    let dh = csp.dim();
    let bt_inv = b.transpose().inverse()?;
    let mut gens = Vec::new();
    for t in subsets(n + 2, 3) {
        // multisets of size 3 in 0..n via the stars-and-bars shift
        let idx = [t[0], t[1] - 1, t[2] - 2];
        let mut s = vec![vec![vec![int(0); n]; n]; n];
        for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            s[idx[p[0]]][idx[p[1]]][idx[p[2]]] = int(1);
        }
        let mut v = SparseVec::new();
        for (x, sx) in s.iter().enumerate() {
            // Mᵀ b = S_x  ⇒  M = (bᵀ)⁻¹ S_x since S_x is symmetric
            let mx = bt_inv.mul(&Matrix::from_dense(sx))?;
            let coords = csp.coordinates(&mx.flatten())?;
            v = v.add(&coords.shifted(x * dh));
        }
        gens.push(v);
    }
    Ok(Subspace::span(n * dh, &gens)?)
}

/// `∂_S` for `h = ad(g_0)` restricted to `g_{-1}`; the kernel must vanish.
pub fn pacs_spencer(g: &GradedLieAlgebra) -> Result<Matrix> {
    spencer_differential(&g0_in_gl(g), g.range(-1).len())
}

pub fn pacs_prolongation(g: &GradedLieAlgebra) -> Result<ProlongationReport> {
    let d = pacs_spencer(g)?;
    let r = report(g.label(), &d);
    if r.dim_kernel != 0 {
        let k = kernel(&d);
        return Err(violation("∂_S is injective on g_-1* ⊗ g_0", format!("{:?}", k.basis()[0])));
    }
    Ok(r)
}

/// The `Λ²g_{-1}* ⊗ g_{-1}` block of `∂_K` on `g_{-1}* ⊗ g_0`, cut from the homogeneity-one slice.
pub fn spencer_block_of_kostant(g: &GradedLieAlgebra) -> Result<Matrix> {
    let n = g.range(-1).len();
    let (c1, c2) = (build_chain(g, 1)?, build_chain(g, 2)?);
    let (s1, s2) = (c1.slice(1), c2.slice(1));
    let d = kostant_block(g, &c1, &s1, &c2, &s2);
    let rows: Vec<usize> = (n..s2.dim()).collect();
    let cols: Vec<usize> = (n..s1.dim()).collect();
    Ok(d.submatrix(&rows, &cols))
}

/// Image of `∂_S` as a subspace of `Λ²V* ⊗ V`.
pub fn spencer_image(g: &GradedLieAlgebra) -> Result<Subspace> {
    Ok(image(&pacs_spencer(g)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_algebra_gives_zero_map() {
        let d = spencer_differential(&[], 4).unwrap();
        assert_eq!((d.nrows(), d.ncols()), (24, 0));
    }

    #[test]
    fn dependent_basis_rejected() {
        let i = Matrix::identity(2);
        assert!(spencer_differential(&[i.clone(), i.scale(&int(2))], 2).is_err());
    }

    #[test]
    fn orthogonal_algebra_is_an_isomorphism() {
        // o(3): skew matrices, dim V* ⊗ o = 9 = dim Λ²V* ⊗ V
        let mut basis = Vec::new();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let mut m = Matrix::zeros(3, 3);
            m.set(a, b, int(1));
            m.set(b, a, int(-1));
            basis.push(m);
        }
        let d = spencer_differential(&basis, 3).unwrap();
        assert_eq!((d.nrows(), d.ncols(), d.rank()), (9, 9, 9));
    }
}
