//! Kostant differential, its adjoint for the admissible inner product, the
//! Laplacian, harmonic spaces, and the homogeneity-split cohomology table.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chains::{build_chain, chain_gram, kostant_block, kostant_column, ChainSpace, Slice};
use crate::lie::{GradedLieAlgebra, LieError};
use crate::linalg::float::{float_rank, Mode, DEFAULT_REL_TOL};
use crate::linalg::matrix::adjoint;
use crate::linalg::subspace::{image, kernel};
use crate::linalg::{Matrix, SparseVec, Subspace};

mod maximality;
pub use maximality::{csp_subspace, g0_in_gl, maximality_check, MaximalityReport, Probe};

/// `∂_K: C^k → C^{k+1}` on the whole chain space.
pub fn kostant_differential(g: &GradedLieAlgebra, k: usize) -> Result<Matrix, LieError> {
    let src = build_chain(g, k)?;
    let dst = build_chain(g, k + 1)?;
    let cols: Vec<SparseVec> = (0..src.dim()).into_par_iter().map(|i| kostant_column(g, &src, &dst, i)).collect();
    Ok(Matrix::from_columns(dst.dim(), &cols))
}

fn full_gram(g: &GradedLieAlgebra, space: &ChainSpace) -> Result<Matrix, LieError> {
    chain_gram(g, space, &space.full_slice())
}

/// `∂*: C^k → C^{k-1}`, the adjoint of `∂_K: C^{k-1} → C^k`.
pub fn codifferential(g: &GradedLieAlgebra, k: usize) -> Result<Matrix, LieError> {
    if k == 0 {
        return Err(LieError::Parameter("codifferential needs k ≥ 1".into()));
    }
    let d = kostant_differential(g, k - 1)?;
    let src = full_gram(g, &build_chain(g, k - 1)?)?;
    let dst = full_gram(g, &build_chain(g, k)?)?;
    Ok(adjoint(&d, &src, &dst)?)
}

/// `□ = ∂_K ∂* + ∂* ∂_K` on `C^k`.
pub fn laplacian(g: &GradedLieAlgebra, k: usize) -> Result<Matrix, LieError> {
    let here = build_chain(g, k)?;
    let gram = full_gram(g, &here)?;
    let mut lap = Matrix::zeros(here.dim(), here.dim());
    if k > 0 {
        let d_in = kostant_differential(g, k - 1)?;
        let prev = full_gram(g, &build_chain(g, k - 1)?)?;
        lap = lap.add(&d_in.mul(&adjoint(&d_in, &prev, &gram)?)?)?;
    }
    if k < g.minus_dim() {
        let d_out = kostant_differential(g, k)?;
        let next = full_gram(g, &build_chain(g, k + 1)?)?;
        lap = lap.add(&adjoint(&d_out, &gram, &next)?.mul(&d_out)?)?;
    }
    Ok(lap)
}

/// The homogeneity-`h` part of `C^{k-1} → C^k → C^{k+1}`.
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    pub k: usize,
    pub h: i32,
    pub space: Slice,
    pub prev: Option<Slice>,
    pub next: Option<Slice>,
    /// `C^{k-1}_h → C^k_h` (zero columns when `k = 0`).
    pub d_in: Matrix,
    /// `C^k_h → C^{k+1}_h` (zero rows when `k = dim g_-`).
    pub d_out: Matrix,
}

pub fn complex_slice(g: &GradedLieAlgebra, k: usize, h: i32) -> Result<ComplexSlice, LieError> {
    let here = build_chain(g, k)?;
    let space = here.slice(h);
    let (prev, d_in) = if k > 0 {
        let p = build_chain(g, k - 1)?;
        let ps = p.slice(h);
        let d = kostant_block(g, &p, &ps, &here, &space);
        (Some(ps), d)
    } else {
        (None, Matrix::zeros(space.dim(), 0))
    };
    let (next, d_out) = if k < g.minus_dim() {
        let n = build_chain(g, k + 1)?;
        let ns = n.slice(h);
        let d = kostant_block(g, &here, &space, &n, &ns);
        (Some(ns), d)
    } else {
        (None, Matrix::zeros(0, space.dim()))
    };
    Ok(ComplexSlice { k, h, space, prev, next, d_in, d_out })
}

/// Grams and adjoints on a slice; kept separate since they are only needed for exact work.
#[derive(Clone, Debug)]
pub struct SliceHodge {
    pub gram: Matrix,
    /// Adjoint of `d_in`: `C^k_h → C^{k-1}_h`.
    pub codiff_in: Matrix,
    /// Adjoint of `d_out`: `C^{k+1}_h → C^k_h`.
    pub codiff_out: Matrix,
    pub laplacian: Matrix,
    pub harmonic: Subspace,
}

impl ComplexSlice {
    pub fn hodge(&self, g: &GradedLieAlgebra) -> Result<SliceHodge, LieError> {
        let here = build_chain(g, self.k)?;
        let gram = chain_gram(g, &here, &self.space)?;
        let codiff_in = match &self.prev {
            Some(ps) => {
                let pg = chain_gram(g, &build_chain(g, self.k - 1)?, ps)?;
                adjoint(&self.d_in, &pg, &gram)?
            }
            None => Matrix::zeros(0, self.space.dim()),
        };
        let codiff_out = match &self.next {
            Some(ns) => {
                let ng = chain_gram(g, &build_chain(g, self.k + 1)?, ns)?;
                adjoint(&self.d_out, &gram, &ng)?
            }
            None => Matrix::zeros(self.space.dim(), 0),
        };
        let laplacian = self.d_in.mul(&codiff_in)?.add(&codiff_out.mul(&self.d_out)?)?;
        let harmonic = kernel(&laplacian);
        Ok(SliceHodge { gram, codiff_in, codiff_out, laplacian, harmonic })
    }
}

/// `ker □` in the `(k, h)` slice, in slice-local coordinates.
pub fn harmonics(g: &GradedLieAlgebra, k: usize, h: i32) -> Result<Subspace, LieError> {
    Ok(complex_slice(g, k, h)?.hodge(g)?.harmonic)
}

/// Exact Hodge decomposition of one slice.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HodgeCheck {
    pub k: usize,
    pub h: i32,
    pub dim: usize,
    pub dim_image: usize,
    pub dim_coimage: usize,
    pub dim_harmonic: usize,
    /// `d_out d_in = 0`.
    pub complex: bool,
    /// `ker □ = ker d_out ∩ ker ∂*`.
    pub harmonic_is_closed_and_coclosed: bool,
    /// The three pieces are independent and span the slice.
    pub direct_sum: bool,
    /// `dim ker □ = dim ker d_out − rank d_in`.
    pub matches_cohomology: bool,
}

impl HodgeCheck {
    pub fn holds(&self) -> bool {
        self.complex && self.harmonic_is_closed_and_coclosed && self.direct_sum && self.matches_cohomology
    }
}

pub fn hodge_check(g: &GradedLieAlgebra, k: usize, h: i32) -> Result<HodgeCheck, LieError> {
    let cs = complex_slice(g, k, h)?;
    let hd = cs.hodge(g)?;
    let complex = cs.d_out.mul(&cs.d_in)?.is_zero();
    let im = image(&cs.d_in);
    let coim = image(&hd.codiff_out);
    let closed = kernel(&cs.d_out);
    let coclosed = kernel(&hd.codiff_in);
    let harmonic_is_closed_and_coclosed = closed.intersect(&coclosed)? == hd.harmonic;
    let total = im.sum(&coim)?.sum(&hd.harmonic)?;
    let dims = im.dim() + coim.dim() + hd.harmonic.dim();
    let direct_sum = dims == cs.space.dim() && total.dim() == dims;
    let matches_cohomology = hd.harmonic.dim() + im.dim() == closed.dim();
    Ok(HodgeCheck {
        k,
        h,
        dim: cs.space.dim(),
        dim_image: im.dim(),
        dim_coimage: coim.dim(),
        dim_harmonic: hd.harmonic.dim(),
        complex,
        harmonic_is_closed_and_coclosed,
        direct_sum,
        matches_cohomology,
    })
}

/// One row of the cohomology table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CohomologyRow {
    pub k: usize,
    pub h: i32,
    pub dim_kernel: usize,
    pub dim_image: usize,
    pub dim_harmonic: usize,
    /// Computed with floating point ranks.
    pub approximate: bool,
}

pub fn cohomology_row(g: &GradedLieAlgebra, k: usize, h: i32, mode: Mode) -> Result<CohomologyRow, LieError> {
    let cs = complex_slice(g, k, h)?;
    let n = cs.space.dim();
    let widest = n.max(cs.next.as_ref().map_or(0, Slice::dim));
    if mode.use_float(widest) {
        let r_in = float_rank(&cs.d_in, DEFAULT_REL_TOL);
        let r_out = float_rank(&cs.d_out, DEFAULT_REL_TOL);
        let dim_kernel = n - r_out;
        return Ok(CohomologyRow {
            k,
            h,
            dim_kernel,
            dim_image: r_in,
            dim_harmonic: dim_kernel.saturating_sub(r_in),
            approximate: true,
        });
    }
    let dim_kernel = n - cs.d_out.rank();
    let dim_image = cs.d_in.rank();
    let dim_harmonic = cs.hodge(g)?.harmonic.dim();
    if dim_harmonic + dim_image != dim_kernel {
        return Err(LieError::Consistency(format!("Hodge count fails in slice (k={k}, h={h})")));
    }
    Ok(CohomologyRow { k, h, dim_kernel, dim_image, dim_harmonic, approximate: false })
}

/// Cohomology dimensions for `k ≤ k_max`, every homogeneity, ordered by `(k, h)`.
pub fn cohomology_table(g: &GradedLieAlgebra, k_max: usize, mode: Mode) -> Result<Vec<CohomologyRow>, LieError> {
    let mut jobs = Vec::new();
    for k in 0..=k_max.min(g.minus_dim()) {
        for h in build_chain(g, k)?.homogeneities() {
            jobs.push((k, h));
        }
    }
    jobs.par_iter().map(|&(k, h)| cohomology_row(g, k, h, mode)).collect()
}
