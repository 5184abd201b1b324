//! Type structure of the harmonic torsion, compared against subspaces built
//! from the recorded structure on `g_{-1}` without reference to `□`.

use serde::{Deserialize, Serialize};

use super::TorsionContext;
use crate::chains::forms_basis;
use crate::error::{Error, Result};
use crate::lie::{GradedLieAlgebra, Metadata};
use crate::linalg::elim::kernel_of_rows;
use crate::linalg::scalar::int;
use crate::linalg::{Matrix, Scalar, SparseVec, Subspace};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TypeComponent {
    pub name: String,
    /// Dimension of the independently built ambient subspace.
    pub dim_ambient: usize,
    /// Dimension of its intersection with `ker □`.
    pub dim_in_harmonic: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TypeReport {
    pub algebra_label: String,
    pub dim_harmonic: usize,
    pub components: Vec<TypeComponent>,
    /// `ker □` is the direct sum of its intersections with the components
    /// (for the complex case: equals the single component).
    pub verdict: bool,
}

/// Builds a vector of `Λ²V* ⊗ V` from its values `ψ(e_v, e_w)` on pairs `v < w`.
fn lam_vector(n: usize, value: impl Fn(usize, usize, usize) -> Scalar) -> SparseVec {
    let (pairs, _) = forms_basis(n, 2);
    let mut out = Vec::new();
    for (r, p) in pairs.iter().enumerate() {
        for c in 0..n {
            let x = value(p[0], p[1], c);
            if x != int(0) {
                out.push((r * n + c, x));
            }
        }
    }
    SparseVec::from_pairs(out)
}

fn report(g: &GradedLieAlgebra, h: &Subspace, comps: Vec<(String, Subspace)>) -> Result<TypeReport> {
    let mut sum = Subspace::zero(h.ambient());
    let mut dims = 0;
    let mut components = Vec::new();
    for (name, s) in comps {
        let inter = h.intersect(&s)?;
        dims += inter.dim();
        sum = sum.sum(&inter)?;
        components.push(TypeComponent { name, dim_ambient: s.dim(), dim_in_harmonic: inter.dim() });
    }
    let verdict = sum == *h && dims == h.dim() && components.iter().all(|c| c.dim_in_harmonic > 0);
    Ok(TypeReport { algebra_label: g.label(), dim_harmonic: h.dim(), components, verdict })
}

/// Maps with `ψ(JX, Y) = −J ψ(X, Y)`, i.e. conjugate linear in both slots.
fn conjugate_bilinear(j: &Matrix) -> Subspace {
    let n = j.nrows();
    let (pairs, _) = forms_basis(n, 2);
    // constraint coordinate (v, w, c) for ψ(J e_v, e_w) + J ψ(e_v, e_w)
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n * n];
    let jc = j.columns();
    for (r, p) in pairs.iter().enumerate() {
        for c in 0..n {
            let col = r * n + c;
            // ψ(e_p, e_q) = e_c and ψ(e_q, e_p) = −e_c
            for (first, second, s) in [(p[0], p[1], 1i64), (p[1], p[0], -1)] {
                for v in 0..n {
                    let x = j.get(first, v);
                    if x != int(0) {
                        rows[(v * n + second) * n + c].push((col, x * int(s)));
                    }
                }
                for (d, x) in jc[c].iter() {
                    rows[(first * n + second) * n + d].push((col, x * int(s)));
                }
            }
        }
    }
    let rows: Vec<SparseVec> = rows.into_iter().map(SparseVec::from_pairs).collect();
    let dim = pairs.len() * n;
    Subspace::span(dim, &kernel_of_rows(&rows, dim)).expect("kernel vectors have the ambient length")
}

/// Maps `Λ²A → B` for index sets `A`, `B` of `g_{-1}`, as a coordinate subspace.
fn block_maps(n: usize, a: &[usize], b: &[usize]) -> Subspace {
    let (pairs, _) = forms_basis(n, 2);
    let axes = pairs
        .iter()
        .enumerate()
        .filter(|(_, p)| a.contains(&p[0]) && a.contains(&p[1]))
        .flat_map(|(r, _)| b.iter().map(move |&c| r * n + c));
    Subspace::coordinate(pairs.len() * n, axes)
}

/// Solutions of linear constraints on a tensor with `len` coordinates.
fn solve_constraints(len: usize, rows: Vec<Vec<(usize, Scalar)>>) -> Vec<SparseVec> {
    let rows: Vec<SparseVec> = rows.into_iter().map(SparseVec::from_pairs).collect();
    kernel_of_rows(&rows, len)
}

/// The two tensor-shaped subspaces for `g_{-1} = E ⊗ F` with `dim E = 2`.
fn grassmannian_pieces(n_f: usize, signs: &[i64]) -> Result<(Subspace, Subspace)> {
    let n = 2 * n_f;
    let e3 = |a: usize, b: usize, e: usize| (a * 2 + b) * 2 + e;
    let f3 = |c: usize, d: usize, f: usize| (c * n_f + d) * n_f + f;
    // (S²E* ⊗ E)_0: symmetric in the slots, trace-free
    let mut rows = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for e in 0..2 {
                rows.push(vec![(e3(a, b, e), int(1)), (e3(b, a, e), int(-1))]);
            }
        }
    }
    for b in 0..2 {
        rows.push((0..2).map(|a| (e3(a, b, a), int(1))).collect());
    }
    let se = solve_constraints(8, rows);
    // (Λ²F* ⊗ F)_0: skew, trace-free, and without totally skew part after lowering by g
    let mut rows = Vec::new();
    for c in 0..n_f {
        for d in 0..n_f {
            for f in 0..n_f {
                rows.push(vec![(f3(c, d, f), int(1)), (f3(d, c, f), int(1))]);
                // L_{cdf} = l_{cd}^f g_ff; cyclic sum vanishes
                rows.push(vec![
                    (f3(c, d, f), int(signs[f])),
                    (f3(d, f, c), int(signs[c])),
                    (f3(f, c, d), int(signs[d])),
                ]);
            }
        }
    }
    for d in 0..n_f {
        rows.push((0..n_f).map(|c| (f3(c, d, c), int(1))).collect());
    }
    let lf = solve_constraints(n_f * n_f * n_f, rows);
    // S³_0 F*: totally symmetric and g-trace-free
    let mut rows = Vec::new();
    for c in 0..n_f {
        for d in 0..n_f {
            for f in 0..n_f {
                rows.push(vec![(f3(c, d, f), int(1)), (f3(d, c, f), int(-1))]);
                rows.push(vec![(f3(c, d, f), int(1)), (f3(c, f, d), int(-1))]);
            }
        }
    }
    for f in 0..n_f {
        rows.push((0..n_f).map(|c| (f3(c, c, f), int(signs[c]))).collect());
    }
    let s3 = solve_constraints(n_f * n_f * n_f, rows);
    let idx = |v: usize| (v / n_f, v % n_f);
    let mut g_gens = Vec::new();
    for s in &se {
        for l in &lf {
            g_gens.push(lam_vector(n, |v, w, out| {
                let ((a, c), (b, d), (e, f)) = (idx(v), idx(w), idx(out));
                s.get(e3(a, b, e)) * l.get(f3(c, d, f))
            }));
        }
    }
    let mut l_gens = Vec::new();
    for sig in &s3 {
        for u in 0..2 {
            l_gens.push(lam_vector(n, |v, w, out| {
                let ((a, c), (b, d), (e, f)) = (idx(v), idx(w), idx(out));
                if e != u || a == b {
                    return int(0);
                }
                // ε_ab · u_e · g^ff S_cdf
                let eps = if a < b { 1 } else { -1 };
                sig.get(f3(c, d, f)) * int(eps * signs[f])
            }));
        }
    }
    let dim = crate::chains::binomial(n, 2) * n;
    Ok((Subspace::span(dim, &l_gens)?, Subspace::span(dim, &g_gens)?))
}

/// Compares `ker □` with the subspaces predicted by the type structure of `g_{-1}`.
pub fn harmonic_type_check(g: &GradedLieAlgebra) -> Result<TypeReport> {
    let ctx = TorsionContext::new(g)?;
    let h = &ctx.harmonic;
    let n = ctx.n;
    match g.metadata() {
        Metadata::Complex { j } => {
            let cb = conjugate_bilinear(j);
            let mut r = report(g, h, vec![("conjugate-bilinear".into(), cb.clone())])?;
            r.verdict = cb == *h;
            Ok(r)
        }
        Metadata::Split { e, f } => report(
            g,
            h,
            vec![("Λ²E* ⊗ F".into(), block_maps(n, e, f)), ("Λ²F* ⊗ E".into(), block_maps(n, f, e))],
        ),
        Metadata::Tensor { n: n_f, signs } => {
            let (t_l, t_g) = grassmannian_pieces(*n_f, signs)?;
            report(
                g,
                h,
                vec![("Λ²E ⊗ E* ⊗ S³_0F*".into(), t_l), ("(S²E* ⊗ E)_0 ⊗ (Λ²F* ⊗ F)_0".into(), t_g)],
            )
        }
        _ => Err(Error::Unsupported(format!("no type structure recorded for {}", g.label()))),
    }
}
