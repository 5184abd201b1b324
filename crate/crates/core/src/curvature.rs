//! Formal curvature tensors with values in `g_0^0`, the curvatures `R_A`
//! built from `g_0^0` and the top element `ψ ∈ g_2`, and their Ricci contraction.
//!
//! Coordinates on `Λ²g_{-1}* ⊗ g_0^0`: `pair_rank * r + t` where `t` indexes
//! the canonical basis `A_t` of `g_0^0` and `r = dim g_0^0`.

use serde::{Deserialize, Serialize};

use crate::chains::{binomial, forms_basis, sort_sign, subsets};
use crate::error::{Error, Result};
use crate::lie::{special_subalgebra, GradedLieAlgebra};
use crate::linalg::elim::{determinant, kernel_of_rows};
use crate::linalg::scalar::int;
use crate::linalg::subspace::kernel;
use crate::linalg::vector::linear_combination;
use crate::linalg::{Matrix, Scalar, SparseVec, Subspace};

pub const RICCI_CONVENTIONS: [&str; 2] = ["b(Ric X, Y) = tr(Z -> R(Z, X)Y)", "b(X, Ric Y) = tr(Z -> R(Z, X)Y)"];

/// `g_0^0` with the data needed for curvature computations.
#[derive(Clone, Debug)]
pub struct SpecialPart {
    pub n: usize,
    /// Basis of `g_0^0` as vectors of `g`.
    pub basis: Vec<SparseVec>,
    pub subspace: Subspace,
    /// `ad(A_t)` on `g_{-1}`.
    pub actions: Vec<Matrix>,
}

impl SpecialPart {
    pub fn new(g: &GradedLieAlgebra) -> Result<Self> {
        let subspace = special_subalgebra(g)?;
        let basis = subspace.basis().to_vec();
        let actions = basis.iter().map(|a| g.ad_block(a, -1, -1)).collect();
        Ok(Self { n: g.range(-1).len(), basis, subspace, actions })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of `Λ²g_{-1}* ⊗ g_0^0`.
    pub fn ambient(&self) -> usize {
        binomial(self.n, 2) * self.dim()
    }

    /// Coordinates of an element of `g` lying in `g_0^0`.
    pub fn coordinates(&self, x: &SparseVec) -> Result<SparseVec> {
        self.subspace.coordinates(x).map_err(|_| Error::Precondition("element is not in g_0^0".into()))
    }

    /// `R(e_v, e_w)` acting on `g_{-1}`.
    fn value(&self, r: &SparseVec, v: usize, w: usize) -> Matrix {
        let n = self.n;
        if v == w {
            return Matrix::zeros(n, n);
        }
        let (lo, hi, s) = if v < w { (v, w, 1) } else { (w, v, -1) };
        let rank = pair_rank(n, lo, hi);
        let k = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, x) in r.window(rank * k, (rank + 1) * k).iter() {
            m = m.add(&self.actions[i].scale(&(x * int(s)))).expect("square");
        }
        m
    }
}

fn pair_rank(n: usize, v: usize, w: usize) -> usize {
    // lex rank of (v, w) among pairs of 0..n
    v * (2 * n - v - 1) / 2 + (w - v - 1)
}

/// The Bianchi map `Λ²V* ⊗ g_0^0 → Λ³V* ⊗ V`.
pub fn bianchi_matrix(sp: &SpecialPart) -> Matrix {
    let n = sp.n;
    let k = sp.dim();
    let (pairs, _) = forms_basis(n, 2);
    let (_, triple_rank) = forms_basis(n, 3);
    let action_cols: Vec<Vec<SparseVec>> = sp.actions.iter().map(Matrix::columns).collect();
    let mut cols = Vec::new();
    for p in &pairs {
        for t in 0..k {
            let mut out = Vec::new();
            for z in 0..n {
                if p.contains(&z) {
                    continue;
                }
                let mut tr = vec![p[0], p[1], z];
                tr.sort_unstable();
                let pos = tr.iter().position(|&x| x == z).unwrap();
                let sign = if pos % 2 == 0 { int(1) } else { int(-1) };
                let base = triple_rank[&tr] * n;
                out.extend(action_cols[t][z].iter().map(|(c, x)| (base + c, x * &sign)));
            }
            cols.push(SparseVec::from_pairs(out));
        }
    }
    Matrix::from_columns(binomial(n, 3) * n, &cols)
}

/// `K(g_0^0)`: tensors satisfying the first Bianchi identity.
pub fn formal_curvature_space(g: &GradedLieAlgebra) -> Result<Subspace> {
    let sp = SpecialPart::new(g)?;
    Ok(kernel(&bianchi_matrix(&sp)))
}

/// Independent count: solve Bianchi on `Λ²V* ⊗ gl(V)` by direct evaluation on
/// all ordered triples, then intersect with `Λ²V* ⊗ ad(g_0^0)`.
pub fn bianchi_oracle_dim(sp: &SpecialPart) -> Result<usize> {
    let n = sp.n;
    let nn = n * n;
    let np = binomial(n, 2);
    let dim = np * nn;
    // unknown (pair, i, j): entry (i, j) of R(e_v, e_w) for the pair (v < w)
    let coord = |v: usize, w: usize, i: usize, j: usize| -> Option<(usize, i64)> {
        if v == w {
            None
        } else if v < w {
            Some((pair_rank(n, v, w) * nn + i * n + j, 1))
        } else {
            Some((pair_rank(n, w, v) * nn + i * n + j, -1))
        }
    };
    let mut rows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for i in 0..n {
                    // component i of R(x, y)z + R(z, x)y + R(y, z)x
                    let mut row = Vec::new();
                    for (a, b, c) in [(x, y, z), (z, x, y), (y, z, x)] {
                        if let Some((k, s)) = coord(a, b, i, c) {
                            row.push((k, int(s)));
                        }
                    }
                    rows.push(SparseVec::from_pairs(row));
                }
            }
        }
    }
    let bianchi = Subspace::span(dim, &kernel_of_rows(&rows, dim))?;
    let mut gens = Vec::new();
    for p in 0..np {
        for m in &sp.actions {
            gens.push(m.flatten().shifted(p * nn));
        }
    }
    let valued = Subspace::span(dim, &gens)?;
    Ok(bianchi.intersect(&valued)?.dim())
}

/// How `R_A` is assembled from `A ∈ g_0^0` and `ψ ∈ g_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurvatureFormula {
    /// `[X, [ψ, [A, Y]]] − [Y, [ψ, [A, X]]]` alone.
    TwoTerm,
    /// The two-term expression minus `β_ψ(X, Y) A`, where `[[X, Y], ψ] = β_ψ(X, Y) E`
    /// for the grading element `E`. This is the form satisfying Bianchi.
    Corrected,
}

/// Scalar `β` with `[[X, Y], ψ] = β E`.
fn grading_coefficient(g: &GradedLieAlgebra, e: &SparseVec, x: &SparseVec) -> Result<Scalar> {
    let (i, lead) = e.leading().ok_or_else(|| Error::Precondition("grading element vanishes".into()))?;
    let beta = x.get(i) / lead;
    if x.sub(&e.scale(&beta)).is_zero() {
        Ok(beta)
    } else {
        Err(Error::Precondition(format!("[[X, Y], ψ] is not a multiple of the grading element in {}", g.label())))
    }
}

/// `R_A` as a vector of `Λ²g_{-1}* ⊗ g_0^0`.
pub fn curvature_with_psi(
    g: &GradedLieAlgebra,
    sp: &SpecialPart,
    a: &SparseVec,
    psi: &SparseVec,
    formula: CurvatureFormula,
) -> Result<SparseVec> {
    if !sp.subspace.contains(a)? {
        return Err(Error::Precondition("A must lie in g_0^0".into()));
    }
    let grading = g.grading_element().ok_or_else(|| Error::Precondition("no grading element".into()))?;
    let k = sp.dim();
    let r1 = g.range(-1);
    let e = |x: usize| SparseVec::unit(r1.start + x);
    let half = |x: usize, y: usize| g.bracket_vec(&e(x), &g.bracket_vec(psi, &g.bracket_vec(a, &e(y))));
    let mut out = SparseVec::new();
    for (rank, p) in subsets(sp.n, 2).iter().enumerate() {
        let mut val = half(p[0], p[1]).sub(&half(p[1], p[0]));
        if formula == CurvatureFormula::Corrected {
            let top = g.bracket_vec(&g.bracket_vec(&e(p[0]), &e(p[1])), psi);
            val = val.sub(&a.scale(&grading_coefficient(g, &grading, &top)?));
        }
        let c = sp.coordinates(&val)?;
        out = out.add(&c.shifted(rank * k));
    }
    Ok(out)
}

/// `R_A` with `ψ` the fixed basis vector of `g_2`.
pub fn curvature_from_element(g: &GradedLieAlgebra, a: &SparseVec) -> Result<SparseVec> {
    let sp = SpecialPart::new(g)?;
    curvature_with_psi(g, &sp, a, &SparseVec::unit(g.psi_index()), CurvatureFormula::Corrected)
}

/// `𝓡`: the span of all `R_A`.
pub fn curvature_image(
    g: &GradedLieAlgebra,
    sp: &SpecialPart,
    psi: &SparseVec,
    formula: CurvatureFormula,
) -> Result<(Matrix, Subspace)> {
    let cols: Vec<SparseVec> =
        sp.basis.iter().map(|a| curvature_with_psi(g, sp, a, psi, formula)).collect::<Result<_>>()?;
    let m = Matrix::from_columns(sp.ambient(), &cols);
    let im = Subspace::span(sp.ambient(), &cols)?;
    Ok((m, im))
}

/// Ricci-type contraction `ρ(X, Y) = tr(Z ↦ R(Z, X)Y)`, turned into an
/// endomorphism of `g_{-1}` with `b` under convention 0 or 1.
pub fn ricci_contraction(g: &GradedLieAlgebra, sp: &SpecialPart, r: &SparseVec, convention: usize) -> Result<Matrix> {
    let n = sp.n;
    let mut rho = vec![vec![int(0); n]; n];
    for z in 0..n {
        for x in 0..n {
            let m = sp.value(r, z, x);
            for (y, row) in rho[x].iter_mut().enumerate() {
                *row += m.get(z, y);
            }
        }
    }
    let rho = Matrix::from_dense(&rho);
    let b = g.bracket_form();
    let binv = b.inverse()?;
    Ok(match convention {
        // Lᵀ b = ρ
        0 => binv.transpose().mul(&rho.transpose())?,
        // b L = ρ
        1 => binv.mul(&rho)?,
        _ => return Err(Error::Precondition("Ricci convention is 0 or 1".into())),
    })
}

/// Gram matrix on `Λ²g_{-1}* ⊗ g_0^0` induced by the admissible form.
pub fn curvature_gram(g: &GradedLieAlgebra, sp: &SpecialPart) -> Result<Matrix> {
    let r1: Vec<usize> = g.range(-1).collect();
    let dual = g.gram().submatrix(&r1, &r1).inverse()?;
    let gram = g.gram();
    let k = sp.dim();
    let inner: Vec<Vec<Scalar>> = sp
        .basis
        .iter()
        .map(|a| sp.basis.iter().map(|b| gram.apply(b).dot(a)).collect())
        .collect();
    let pairs = subsets(sp.n, 2);
    let mut rows = Vec::new();
    for p in &pairs {
        let minors: Vec<Scalar> = pairs
            .iter()
            .map(|q| {
                let m = vec![
                    vec![dual.get(p[0], q[0]), dual.get(p[0], q[1])],
                    vec![dual.get(p[1], q[0]), dual.get(p[1], q[1])],
                ];
                determinant(&m)
            })
            .collect();
        for s in 0..k {
            let mut row = Vec::new();
            for (qr, d) in minors.iter().enumerate() {
                if *d == int(0) {
                    continue;
                }
                for t in 0..k {
                    row.push((qr * k + t, d * &inner[s][t]));
                }
            }
            rows.push(SparseVec::from_pairs(row));
        }
    }
    Ok(Matrix::from_rows(sp.ambient(), rows))
}

/// Action of `A ∈ g_0^0` on `Λ²g_{-1}* ⊗ g_0^0`.
pub fn special_action(g: &GradedLieAlgebra, sp: &SpecialPart, a: &SparseVec) -> Result<Matrix> {
    let n = sp.n;
    let k = sp.dim();
    let ma = g.ad_block(a, -1, -1);
    let (pairs, pr) = forms_basis(n, 2);
    let brackets: Vec<SparseVec> =
        sp.basis.iter().map(|b| sp.coordinates(&g.bracket_vec(a, b))).collect::<Result<_>>()?;
    let mut cols = Vec::new();
    for (rank, p) in pairs.iter().enumerate() {
        for t in 0..k {
            let mut out: Vec<(usize, Scalar)> = brackets[t].iter().map(|(s, x)| (rank * k + s, x.clone())).collect();
            for slot in 0..2 {
                // A · e^i = −Σ_u (M_A)_{i u} e^u
                for (u, x) in ma.row(p[slot]).iter() {
                    let mut np = p.clone();
                    np[slot] = u;
                    if let Some(sign) = sort_sign(&mut np) {
                        out.push((pr[&np] * k + t, -x * int(sign)));
                    }
                }
            }
            cols.push(SparseVec::from_pairs(out));
        }
    }
    Ok(Matrix::from_columns(sp.ambient(), &cols))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RicciOutcome {
    pub convention: String,
    /// `Ric(R_A) ∈ ad(g_0^0)` for every basis element `A`.
    pub lands_in_g00: bool,
    /// `A ↦ Ric(R_A)` has zero kernel.
    pub injective: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CurvatureSpaceReport {
    pub algebra_label: String,
    pub dim_g00: usize,
    pub dim_k: usize,
    pub dim_k_oracle: usize,
    pub dim_r: usize,
    pub dim_w: usize,
    pub r_in_k: bool,
    pub k_equals_r: bool,
    pub r_invariant: bool,
    /// Invariance of the orthogonal complement of `𝓡` in `K`; only computed when it is nonzero.
    pub w_invariant: Option<bool>,
    /// `𝓡 ∩ W = 0` and `𝓡 + W = K`.
    pub w_complements_r: bool,
    pub psi_choice: String,
    pub formula: CurvatureFormula,
    /// Whether the uncorrected two-term expression lands in `K`.
    pub two_term_in_k: bool,
    /// `𝓡` computed with `2ψ` coincides with `𝓡`.
    pub psi_scale_invariant: bool,
    pub ricci: Vec<RicciOutcome>,
    /// Canonical basis of the complement, rationals as strings.
    pub w_basis: Vec<Vec<(usize, String)>>,
}

impl CurvatureSpaceReport {
    pub fn ricci_ok(&self) -> bool {
        self.ricci.iter().any(|r| r.lands_in_g00 && r.injective)
    }
}

pub fn verify_lemma47(g: &GradedLieAlgebra) -> Result<CurvatureSpaceReport> {
    let sp = SpecialPart::new(g)?;
    let psi = SparseVec::unit(g.psi_index());
    let k_space = kernel(&bianchi_matrix(&sp));
    let dim_k_oracle = bianchi_oracle_dim(&sp)?;
    let (r_map, r_space) = curvature_image(g, &sp, &psi, CurvatureFormula::Corrected)?;
    let (_, r_twice) = curvature_image(g, &sp, &psi.scale(&int(2)), CurvatureFormula::Corrected)?;
    let (_, two_term) = curvature_image(g, &sp, &psi, CurvatureFormula::TwoTerm)?;
    let ad00 = Subspace::span(sp.n * sp.n, &sp.actions.iter().map(Matrix::flatten).collect::<Vec<_>>())?;
    let mut ricci = Vec::new();
    for (c, name) in RICCI_CONVENTIONS.iter().enumerate() {
        let mut lands = true;
        let mut images = Vec::new();
        for col in r_map.columns() {
            let l = ricci_contraction(g, &sp, &col, c)?;
            lands &= ad00.contains(&l.flatten())?;
            images.push(l.flatten());
        }
        let rank = Subspace::span(sp.n * sp.n, &images)?.dim();
        ricci.push(RicciOutcome { convention: name.to_string(), lands_in_g00: lands, injective: rank == sp.dim() });
    }
    let actions: Vec<Matrix> = sp.basis.iter().map(|a| special_action(g, &sp, a)).collect::<Result<_>>()?;
    let mut r_invariant = true;
    for m in &actions {
        r_invariant &= r_space.is_invariant(m)?;
    }
    let w = k_space.orthogonal_complement_in(&r_space, &curvature_gram(g, &sp)?)?;
    let w_invariant = if w.is_zero() {
        None
    } else {
        let mut inv = true;
        for m in &actions {
            inv &= w.is_invariant(m)?;
        }
        Some(inv)
    };
    Ok(CurvatureSpaceReport {
        algebra_label: g.label(),
        dim_g00: sp.dim(),
        dim_k: k_space.dim(),
        dim_k_oracle,
        dim_r: r_space.dim(),
        dim_w: w.dim(),
        r_in_k: k_space.contains_subspace(&r_space)?,
        k_equals_r: k_space == r_space,
        r_invariant,
        w_invariant,
        w_complements_r: r_space.is_transverse(&w)? && r_space.sum(&w)? == k_space,
        psi_choice: format!("basis vector e_{} spanning g_2", g.psi_index()),
        formula: CurvatureFormula::Corrected,
        two_term_in_k: k_space.contains_subspace(&two_term)?,
        psi_scale_invariant: r_twice == r_space,
        ricci,
        w_basis: w.to_strings(),
    })
}

/// Sum of the values of `R` over the basis of `g_0^0`, as an element of `g`.
pub fn curvature_value(sp: &SpecialPart, r: &SparseVec, rank: usize) -> SparseVec {
    let k = sp.dim();
    let w = r.window(rank * k, (rank + 1) * k);
    linear_combination(w.iter().map(|(t, x)| (x, &sp.basis[t])))
}
