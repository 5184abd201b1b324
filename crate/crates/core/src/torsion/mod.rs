//! Homogeneity-one torsion: the complement to `im ∂_S` in `Λ²g_{-1}* ⊗ g_{-1}`
//! and the constructive normalization of an arbitrary element.
//!
//! Slice layouts in homogeneity one (`n = dim g_{-1}`):
//! - `C^0_1 = g_1`;
//! - `C^1_1`: first `n` coordinates `g_{-2}* ⊗ g_{-1}`, then `g_{-1}* ⊗ g_0`
//!   with index `n + x * dim g_0 + a`;
//! - `C^2_1`: first `n` coordinates `g_{-2}* ∧ g_{-1}* ⊗ g_{-2}`, then
//!   `Λ²g_{-1}* ⊗ g_{-1}` with index `n + pair_rank * n + c`;
//! - `C^3_1 = Λ³g_{-1}* ⊗ g_{-2}`, triples in lex order.

mod types;

use serde::{Deserialize, Serialize};

use crate::chains::{action_block, build_chain, embed_lambda3, tracefree_forms, wedge_b_matrix};
use crate::error::{violation, Error, Result};
use crate::kostant::complex_slice;
use crate::lie::GradedLieAlgebra;
use crate::linalg::elim::Solver;
use crate::linalg::subspace::{image, kernel};
use crate::linalg::{Matrix, SparseVec, Subspace};

pub use types::{harmonic_type_check, TypeComponent, TypeReport};

/// Convention label recorded in reports.
pub const CODIFFERENTIAL_CONVENTION: &str =
    "adjoint of the Kostant differential for the form -B(X, theta Y), extended to chains by wedge/tensor products";

/// The maps of the homogeneity-one diagram, as matrices in the local layouts above.
#[derive(Clone, Debug)]
pub struct DiagramMaps {
    /// `g_1 → g_{-2}* ⊗ g_{-1}`.
    pub alpha: Matrix,
    /// `g_{-2}* ⊗ g_{-1} → g_{-1}* ⊗ g_{-2}* ⊗ g_{-2}`.
    pub beta: Matrix,
    /// `Λ²g_{-1}* ⊗ g_{-1} → Λ³g_{-1}* ⊗ g_{-2}`.
    pub gamma: Matrix,
    /// `g_{-1}* ⊗ g_{-2}* ⊗ g_{-2} → Λ³g_{-1}* ⊗ g_{-2}`.
    pub iota: Matrix,
}

/// Everything the homogeneity-one analysis needs, computed once per algebra.
#[derive(Clone, Debug)]
pub struct TorsionContext {
    pub n: usize,
    pub dim_g0: usize,
    /// `∂_K: C^0_1 → C^1_1`.
    pub d0: Matrix,
    /// `∂_K: C^1_1 → C^2_1`.
    pub d1: Matrix,
    /// `∂_K: C^2_1 → C^3_1`.
    pub d2: Matrix,
    pub maps: DiagramMaps,
    pub spencer: Matrix,
    /// `ker □` in `C^2_1` coordinates.
    pub harmonic_chain: Subspace,
    /// `ker □` in `Λ²g_{-1}* ⊗ g_{-1}` coordinates (empty if it leaves that summand).
    pub harmonic: Subspace,
    pub spencer_image: Subspace,
    pub lambda3_0: Subspace,
    /// Tracefree part and trace part of `Λ³g_{-1}*`.
    pub forms3_0: Subspace,
    pub forms3_trace: Subspace,
    pub harmonic_contained: bool,
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..b).collect()
}

impl TorsionContext {
    pub fn new(g: &GradedLieAlgebra) -> Result<Self> {
        let n = g.range(-1).len();
        let dim_g0 = g.range(0).len();
        let cs1 = complex_slice(g, 1, 1)?;
        let cs2 = complex_slice(g, 2, 1)?;
        let d0 = cs1.d_in.clone();
        let d1 = cs2.d_in.clone();
        let d2 = cs2.d_out.clone();
        let (n1, n2, n3) = (d1.ncols(), d1.nrows(), d2.nrows());
        if d0.nrows() != n1 || n1 != n + n * dim_g0 || d0.ncols() != n {
            return Err(Error::Lie(crate::lie::LieError::Consistency("unexpected homogeneity-one layout".into())));
        }
        let maps = DiagramMaps {
            alpha: d0.submatrix(&range(0, n), &range(0, n)),
            beta: d1.submatrix(&range(0, n), &range(0, n)),
            gamma: d2.submatrix(&range(0, n3), &range(n, n2)),
            iota: d2.submatrix(&range(0, n3), &range(0, n)),
        };
        let spencer = d1.submatrix(&range(n, n2), &range(n, n1));
        let harmonic_chain = cs2.hodge(g)?.harmonic;
        let harmonic_contained = harmonic_chain.basis().iter().all(|v| v.window(0, n).is_zero());
        let lam: Vec<SparseVec> = harmonic_chain.basis().iter().map(|v| v.window(n, n2)).collect();
        let harmonic = Subspace::span(n2 - n, &lam)?;
        let (_, lambda3_0) = embed_lambda3(g)?;
        Ok(Self {
            n,
            dim_g0,
            spencer_image: image(&spencer),
            d0,
            d1,
            d2,
            maps,
            spencer,
            harmonic_chain,
            harmonic,
            lambda3_0,
            forms3_0: tracefree_forms(g, 3)?,
            forms3_trace: image(&wedge_b_matrix(g, 3)),
            harmonic_contained,
        })
    }

    /// Dimension of `Λ²g_{-1}* ⊗ g_{-1}`.
    pub fn lam_dim(&self) -> usize {
        self.spencer.nrows()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Theorem43Report {
    pub algebra_label: String,
    pub dim_total: usize,
    pub dim_spencer_image: usize,
    pub dim_harmonic: usize,
    pub dim_lambda3_0: usize,
    pub spencer_injective: bool,
    pub harmonic_in_lambda2: bool,
    pub harmonic_meets_lambda3_0_trivially: bool,
    pub spencer_image_meets_complement_trivially: bool,
    pub pairwise_transverse: bool,
    pub dims_add_up: bool,
    pub alpha_invertible: bool,
    pub beta_invertible: bool,
    pub iota_injective: bool,
    pub gamma_of_spencer_is_trace: bool,
    pub gamma_vanishes_on_harmonic: bool,
    pub gamma_injective_on_lambda3_0: bool,
    pub g0_invariant: bool,
    pub codifferential: String,
}

impl Theorem43Report {
    pub fn holds(&self) -> bool {
        self.spencer_injective
            && self.harmonic_in_lambda2
            && self.harmonic_meets_lambda3_0_trivially
            && self.spencer_image_meets_complement_trivially
            && self.pairwise_transverse
            && self.dims_add_up
            && self.alpha_invertible
            && self.beta_invertible
            && self.iota_injective
            && self.gamma_of_spencer_is_trace
            && self.gamma_vanishes_on_harmonic
            && self.gamma_injective_on_lambda3_0
            && self.g0_invariant
    }
}

fn maps_into(m: &Matrix, src: &Subspace, dst: &Subspace) -> Result<bool> {
    for v in src.basis() {
        if !dst.contains(&m.apply(v))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Subspaces of `Λ²g_{-1}* ⊗ g_{-1}` preserved by every `g_0` basis element.
fn all_invariant(g: &GradedLieAlgebra, ctx: &TorsionContext, spaces: &[&Subspace]) -> Result<bool> {
    let c2 = build_chain(g, 2)?;
    let s2 = c2.slice(1);
    let lam = range(ctx.n, s2.dim());
    for a in g.range(0) {
        let r = action_block(g, &c2, &s2, &SparseVec::unit(a)).submatrix(&lam, &lam);
        for s in spaces {
            if !s.is_invariant(&r)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The report for the homogeneity-one decomposition, without failing on violations.
pub fn theorem43_report(g: &GradedLieAlgebra, ctx: &TorsionContext) -> Result<Theorem43Report> {
    let total = ctx.lam_dim();
    let (im, h, l3) = (&ctx.spencer_image, &ctx.harmonic, &ctx.lambda3_0);
    let complement = h.sum(l3)?;
    let pairwise = im.is_transverse(h)? && im.is_transverse(l3)? && h.is_transverse(l3)?;
    let gamma = &ctx.maps.gamma;
    let gamma_l3 = Subspace::span(gamma.nrows(), &l3.basis().iter().map(|v| gamma.apply(v)).collect::<Vec<_>>())?;
    Ok(Theorem43Report {
        algebra_label: g.label(),
        dim_total: total,
        dim_spencer_image: im.dim(),
        dim_harmonic: h.dim(),
        dim_lambda3_0: l3.dim(),
        spencer_injective: im.dim() == ctx.spencer.ncols(),
        harmonic_in_lambda2: ctx.harmonic_contained,
        harmonic_meets_lambda3_0_trivially: h.intersect(l3)?.is_zero(),
        spencer_image_meets_complement_trivially: im.intersect(&complement)?.is_zero(),
        pairwise_transverse: pairwise,
        dims_add_up: im.dim() + h.dim() + l3.dim() == total && im.sum(&complement)?.dim() == total,
        alpha_invertible: ctx.maps.alpha.rank() == ctx.n,
        beta_invertible: ctx.maps.beta.rank() == ctx.n,
        iota_injective: ctx.maps.iota.rank() == ctx.n,
        gamma_of_spencer_is_trace: maps_into(gamma, im, &ctx.forms3_trace)?,
        gamma_vanishes_on_harmonic: h.basis().iter().all(|v| gamma.apply(v).is_zero()),
        gamma_injective_on_lambda3_0: gamma_l3.dim() == l3.dim(),
        g0_invariant: all_invariant(g, ctx, &[im, h, l3])?,
        codifferential: CODIFFERENTIAL_CONVENTION.to_string(),
    })
}

/// Verifies injectivity of `∂_S` and that `ker □ ⊕ Λ³_0` complements its image.
pub fn verify_theorem43(g: &GradedLieAlgebra) -> Result<Theorem43Report> {
    let ctx = TorsionContext::new(g)?;
    let r = theorem43_report(g, &ctx)?;
    if !r.spencer_injective {
        let k = kernel(&ctx.spencer);
        return Err(violation("∂_S injective", format!("{:?}", k.basis()[0])));
    }
    if !r.harmonic_in_lambda2 {
        return Err(violation("ker □ ⊂ Λ²g_-1* ⊗ g_-1", "harmonic vector with a g_-2 slot"));
    }
    if !r.harmonic_meets_lambda3_0_trivially {
        let w = ctx.harmonic.intersect(&ctx.lambda3_0)?;
        return Err(violation("ker □ ∩ Λ³_0 = 0", format!("{:?}", w.basis()[0])));
    }
    if !r.spencer_image_meets_complement_trivially {
        let w = ctx.spencer_image.intersect(&ctx.harmonic.sum(&ctx.lambda3_0)?)?;
        return Err(violation("im ∂_S ∩ (ker □ ⊕ Λ³_0) = 0", format!("{:?}", w.basis()[0])));
    }
    if !r.holds() {
        return Err(violation("homogeneity-one decomposition", format!("{r:?}")));
    }
    Ok(r)
}

/// `ψ = ∂_S φ + ψ₂ + ψ₃` with `ψ₂ ∈ ker □` and `ψ₃ ∈ Λ³_0 g_{-1}* ⊗ g_{-2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionDecomposition {
    pub psi: SparseVec,
    /// In `g_{-1}* ⊗ g_0`, index `x * dim g_0 + a`.
    pub phi: SparseVec,
    pub psi2: SparseVec,
    pub psi3: SparseVec,
}

/// Solvers reused across many calls of [`normalize`].
pub struct Normalizer {
    ctx: TorsionContext,
    forms: Solver,
    forms_split: usize,
    gamma_l3: Solver,
    iota: Solver,
    hodge: Solver,
    hodge_split: usize,
    alpha: Solver,
}

impl Normalizer {
    pub fn new(ctx: TorsionContext) -> Self {
        let mut fgens = ctx.forms3_0.basis().to_vec();
        let forms_split = fgens.len();
        fgens.extend(ctx.forms3_trace.basis().iter().cloned());
        let gamma_l3: Vec<SparseVec> = ctx.lambda3_0.basis().iter().map(|v| ctx.maps.gamma.apply(v)).collect();
        let mut hgens = ctx.harmonic_chain.basis().to_vec();
        let hodge_split = hgens.len();
        hgens.extend(ctx.d1.columns());
        Self {
            forms: Solver::new(&fgens),
            forms_split,
            gamma_l3: Solver::new(&gamma_l3),
            iota: Solver::new(&ctx.maps.iota.columns()),
            hodge: Solver::new(&hgens),
            hodge_split,
            alpha: Solver::new(&ctx.maps.alpha.columns()),
            ctx,
        }
    }

    pub fn context(&self) -> &TorsionContext {
        &self.ctx
    }

    pub fn normalize(&self, psi: &SparseVec) -> Result<TorsionDecomposition> {
        let ctx = &self.ctx;
        let n = ctx.n;
        let singular = |what: &str| violation("normalization solve", what.to_string());
        // ψ₃ from the tracefree part of γ(ψ)
        let g_psi = ctx.maps.gamma.apply(psi);
        let c = self.forms.solve(&g_psi).ok_or_else(|| singular("Λ³ splitting"))?;
        let tracefree = crate::linalg::vector::linear_combination(
            c.iter().filter(|(i, _)| *i < self.forms_split).map(|(i, x)| (x, &ctx.forms3_0.basis()[i])),
        );
        let y = self.gamma_l3.solve(&tracefree).ok_or_else(|| singular("γ on Λ³_0"))?;
        let psi3 = crate::linalg::vector::linear_combination(y.iter().map(|(i, x)| (x, &ctx.lambda3_0.basis()[i])));
        // ψ̃ with ι(ψ̃) = γ(ψ − ψ₃)
        let rest = psi.sub(&psi3);
        let t = self.iota.solve(&ctx.maps.gamma.apply(&rest)).ok_or_else(|| singular("ι"))?;
        // closed chain: Λ² part ψ − ψ₃, g_{-2} slot part −ψ̃
        let chi = t.neg().concat(n, &rest);
        let z = self.hodge.solve(&chi).ok_or_else(|| singular("Hodge system"))?;
        let psi2_chain = crate::linalg::vector::linear_combination(
            z.iter().filter(|(i, _)| *i < self.hodge_split).map(|(i, x)| (x, &ctx.harmonic_chain.basis()[i])),
        );
        let phi_tilde = z.window(self.hodge_split, self.hodge_split + ctx.d1.ncols());
        // correct by Z ∈ g_1 with α(Z) = the g_{-2}* ⊗ g_{-1} part of φ̃
        let zg1 = self.alpha.solve(&phi_tilde.window(0, n)).ok_or_else(|| singular("α"))?;
        let phi_full = phi_tilde.sub(&ctx.d0.apply(&zg1));
        if !phi_full.window(0, n).is_zero() {
            return Err(violation("α correction", "g_-2* component survives"));
        }
        let phi = phi_full.window(n, ctx.d1.ncols());
        let psi2 = psi2_chain.window(n, ctx.d1.nrows());
        let d = TorsionDecomposition { psi: psi.clone(), phi, psi2, psi3 };
        let sum = ctx.spencer.apply(&d.phi).add(&d.psi2).add(&d.psi3);
        if sum != *psi {
            return Err(violation("ψ = ∂_S φ + ψ₂ + ψ₃", format!("residual {:?}", sum.sub(psi))));
        }
        Ok(d)
    }
}

/// One-shot normalization; build a [`Normalizer`] for repeated use.
pub fn normalize(g: &GradedLieAlgebra, psi: &SparseVec) -> Result<TorsionDecomposition> {
    Normalizer::new(TorsionContext::new(g)?).normalize(psi)
}
