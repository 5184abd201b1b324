//! Chain spaces `C^k(g_-, g) = Λ^k(g_-)* ⊗ g`, their homogeneity slices, the
//! `g_0`-action, and the inner products induced from the admissible form.
//!
//! A basis element is a pair `(I, j)` with `I` a strictly increasing tuple of
//! indices into `g_-` (which occupies basis indices `0..dim g_-` of `g`) and
//! `j` a basis index of `g`. It stands for the alternating map taking value
//! `e_j` on `(e_{i_1}, ..., e_{i_k})`. Its global index is
//! `rank(I) * dim g + j` with tuples ranked lexicographically.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::lie::{GradedLieAlgebra, LieError};
use crate::linalg::elim::determinant;
use crate::linalg::scalar::int;
use crate::linalg::{Matrix, Scalar, SparseVec, Subspace};

/// Strictly increasing `k`-tuples from `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for t in i + 1..k {
                    cur[t] = cur[t - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Sign of the permutation sorting `v` (distinct entries), or `None` on repeats.
pub fn sort_sign(v: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

#[derive(Clone, Debug)]
pub struct ChainSpace {
    k: usize,
    minus: usize,
    dim_g: usize,
    tuples: Vec<Vec<usize>>,
    rank: HashMap<Vec<usize>, usize>,
    degrees: Vec<i8>,
}

/// The homogeneity-`h` part of a chain space: global indices in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub k: usize,
    pub h: i32,
    pub elems: Vec<usize>,
    pos: HashMap<usize, usize>,
}

impl Slice {
    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn local(&self, global: usize) -> Option<usize> {
        self.pos.get(&global).copied()
    }
}

/// Builds `C^k(g_-, g)`.
pub fn build_chain(g: &GradedLieAlgebra, k: usize) -> Result<ChainSpace, LieError> {
    let minus = g.minus_dim();
    if k > minus {
        return Err(LieError::Parameter(format!("chain degree {k} exceeds dim g_- = {minus}")));
    }
    let tuples = subsets(minus, k);
    let rank = tuples.iter().cloned().enumerate().map(|(r, t)| (t, r)).collect();
    Ok(ChainSpace { k, minus, dim_g: g.dim(), tuples, rank, degrees: g.degrees().to_vec() })
}

impl ChainSpace {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.tuples.len() * self.dim_g
    }

    pub fn element(&self, idx: usize) -> (&[usize], usize) {
        (&self.tuples[idx / self.dim_g], idx % self.dim_g)
    }

    pub fn index_of(&self, tuple: &[usize], j: usize) -> Option<usize> {
        self.rank.get(tuple).map(|r| r * self.dim_g + j)
    }

    fn slot_weight(&self, tuple: &[usize]) -> i32 {
        tuple.iter().map(|&i| -(self.degrees[i] as i32)).sum()
    }

    pub fn homogeneity(&self, idx: usize) -> i32 {
        let (t, j) = self.element(idx);
        self.degrees[j] as i32 + self.slot_weight(t)
    }

    /// Homogeneities occurring in this space, ascending.
    pub fn homogeneities(&self) -> Vec<i32> {
        let mut w: Vec<i32> = self.tuples.iter().map(|t| self.slot_weight(t)).collect();
        w.sort_unstable();
        w.dedup();
        let mut hs: Vec<i32> = w.iter().flat_map(|&s| (-2..=2).map(move |d| s + d)).collect();
        hs.sort_unstable();
        hs.dedup();
        hs.retain(|&h| self.tuples.iter().any(|t| {
            let d = h - self.slot_weight(t);
            (-2..=2).contains(&d) && self.degrees.contains(&(d as i8))
        }));
        hs
    }

    pub fn slice(&self, h: i32) -> Slice {
        let mut elems = Vec::new();
        for (r, t) in self.tuples.iter().enumerate() {
            let d = h - self.slot_weight(t);
            if !(-2..=2).contains(&d) {
                continue;
            }
            let lo = self.degrees.partition_point(|&x| (x as i32) < d);
            let hi = self.degrees.partition_point(|&x| (x as i32) <= d);
            elems.extend((lo..hi).map(|j| r * self.dim_g + j));
        }
        let pos = elems.iter().enumerate().map(|(l, &g)| (g, l)).collect();
        Slice { k: self.k, h, elems, pos }
    }

    pub fn full_slice(&self) -> Slice {
        let elems: Vec<usize> = (0..self.dim()).collect();
        let pos = elems.iter().map(|&g| (g, g)).collect();
        Slice { k: self.k, h: i32::MIN, elems, pos }
    }
}

/// Image of one basis element under `∂_K`, as `(global index in C^{k+1}, coefficient)` pairs.
pub fn kostant_column(g: &GradedLieAlgebra, src: &ChainSpace, dst: &ChainSpace, idx: usize) -> SparseVec {
    let (tuple, j) = src.element(idx);
    let mut out: Vec<(usize, Scalar)> = Vec::new();
    // Σ_i (-1)^i [X_i, φ(..X̂_i..)]
    for l in 0..src.minus {
        if tuple.contains(&l) {
            continue;
        }
        let br = g.bracket(l, j);
        if br.is_zero() {
            continue;
        }
        let mut t = tuple.to_vec();
        let p = t.partition_point(|&x| x < l);
        t.insert(p, l);
        let sign = if p % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        let base = dst.index_of(&t, 0).expect("tuple in range");
        out.extend(br.iter().map(|(m, c)| (base + m, c * &sign)));
    }
    // Σ_{a<b} (-1)^{a+b} φ([X_a, X_b], ...)
    for (q, &t) in tuple.iter().enumerate() {
        let rest: Vec<usize> = tuple.iter().copied().filter(|&x| x != t).collect();
        for u in 0..src.minus {
            if rest.contains(&u) {
                continue;
            }
            for v in u + 1..src.minus {
                if rest.contains(&v) {
                    continue;
                }
                let Some(c) = g.bracket(u, v).get_ref(t) else { continue };
                let mut l = rest.clone();
                let pu = l.partition_point(|&x| x < u);
                l.insert(pu, u);
                let pv = l.partition_point(|&x| x < v);
                l.insert(pv, v);
                let e = pu + pv + q;
                let s = if e % 2 == 0 { c.clone() } else { -c.clone() };
                out.push((dst.index_of(&l, j).expect("tuple in range"), s));
            }
        }
    }
    SparseVec::from_pairs(out)
}

/// Matrix of `∂_K` from a slice of `C^k` to a slice of `C^{k+1}` (local coordinates).
pub fn kostant_block(
    g: &GradedLieAlgebra,
    src: &ChainSpace,
    src_slice: &Slice,
    dst: &ChainSpace,
    dst_slice: &Slice,
) -> Matrix {
    let cols: Vec<SparseVec> = src_slice
        .elems
        .par_iter()
        .map(|&idx| {
            let col = kostant_column(g, src, dst, idx);
            debug_assert!(col.iter().all(|(r, _)| dst_slice.local(r).is_some()));
            col.remap(|r| dst_slice.local(r))
        })
        .collect();
    Matrix::from_columns(dst_slice.dim(), &cols)
}

/// Image of one basis element under the action of `a ∈ g_0`.
pub fn action_column(g: &GradedLieAlgebra, space: &ChainSpace, a: &SparseVec, idx: usize) -> SparseVec {
    let (tuple, j) = space.element(idx);
    let base = space.index_of(tuple, 0).unwrap();
    let mut out: Vec<(usize, Scalar)> = g.bracket_vec(a, &SparseVec::unit(j)).iter().map(|(m, c)| (base + m, c.clone())).collect();
    for (s, &i) in tuple.iter().enumerate() {
        // a · e^i = -Σ_t (ad_a)_{i t} e^t
        for t in 0..space.minus {
            let coeff = g.bracket_vec(a, &SparseVec::unit(t)).get(i);
            if coeff.is_zero() {
                continue;
            }
            let mut nt = tuple.to_vec();
            nt[s] = t;
            if let Some(sign) = sort_sign(&mut nt) {
                let v = -coeff * int(sign);
                out.push((space.index_of(&nt, j).unwrap(), v));
            }
        }
    }
    SparseVec::from_pairs(out)
}

/// Matrix of the action of `a ∈ g_0` on a slice.
pub fn action_block(g: &GradedLieAlgebra, space: &ChainSpace, slice: &Slice, a: &SparseVec) -> Matrix {
    let cols: Vec<SparseVec> = slice
        .elems
        .par_iter()
        .map(|&idx| action_column(g, space, a, idx).remap(|r| slice.local(r)))
        .collect();
    Matrix::from_columns(slice.dim(), &cols)
}

/// One action matrix per basis element of `g_0`.
#[derive(Clone, Debug)]
pub struct ActionTable {
    pub k: usize,
    pub h: Option<i32>,
    pub matrices: Vec<Matrix>,
}

/// Action of the basis of `g_0` on the whole chain space.
pub fn g0_action(g: &GradedLieAlgebra, space: &ChainSpace) -> ActionTable {
    let slice = space.full_slice();
    ActionTable {
        k: space.k,
        h: None,
        matrices: g.range(0).map(|a| action_block(g, space, &slice, &SparseVec::unit(a))).collect(),
    }
}

/// Action of the basis of `g_0` on one homogeneity slice.
pub fn g0_action_slice(g: &GradedLieAlgebra, space: &ChainSpace, slice: &Slice) -> ActionTable {
    ActionTable {
        k: space.k,
        h: Some(slice.h),
        matrices: g.range(0).map(|a| action_block(g, space, slice, &SparseVec::unit(a))).collect(),
    }
}

/// Inner product on `g_-*`: the inverse of the admissible form restricted to `g_-`.
pub fn dual_minus_gram(g: &GradedLieAlgebra) -> Result<Matrix, LieError> {
    let idx: Vec<usize> = (0..g.minus_dim()).collect();
    Ok(g.gram().submatrix(&idx, &idx).inverse()?)
}

/// Gram matrix of the induced inner product `det(G*_{IJ}) G_{jl}` on a slice.
pub fn chain_gram(g: &GradedLieAlgebra, space: &ChainSpace, slice: &Slice) -> Result<Matrix, LieError> {
    let dual = dual_minus_gram(g)?;
    let diagonal = (0..dual.nrows()).all(|i| dual.row(i).iter().all(|(j, _)| j == i));
    let gram = g.gram();
    // group slice elements by tuple
    let mut by_tuple: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
    for (l, &idx) in slice.elems.iter().enumerate() {
        let (r, j) = (idx / space.dim_g, idx % space.dim_g);
        match by_tuple.last_mut() {
            Some((rr, v)) if *rr == r => v.push((j, l)),
            _ => by_tuple.push((r, vec![(j, l)])),
        }
    }
    let minor = |a: &[usize], b: &[usize]| -> Scalar {
        if diagonal {
            if a == b {
                a.iter().fold(Scalar::one(), |acc, &i| acc * dual.get(i, i))
            } else {
                Scalar::zero()
            }
        } else {
            let m: Vec<Vec<Scalar>> = a.iter().map(|&i| b.iter().map(|&j| dual.get(i, j)).collect()).collect();
            determinant(&m)
        }
    };
    let rows: Vec<SparseVec> = (0..by_tuple.len())
        .into_par_iter()
        .flat_map_iter(|ta| {
            let (ra, ref elems_a) = by_tuple[ta];
            let tup_a = &space.tuples[ra];
            let partners: Vec<(Scalar, &Vec<(usize, usize)>)> = by_tuple
                .iter()
                .filter_map(|(rb, eb)| {
                    let d = minor(tup_a, &space.tuples[*rb]);
                    (!d.is_zero()).then_some((d, eb))
                })
                .collect();
            elems_a
                .iter()
                .map(|&(ja, _)| {
                    let mut pairs = Vec::new();
                    for (d, eb) in &partners {
                        for &(jb, lb) in eb.iter() {
                            if let Some(x) = gram.row(ja).get_ref(jb) {
                                pairs.push((lb, d * x));
                            }
                        }
                    }
                    SparseVec::from_pairs(pairs)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(Matrix::from_rows(slice.dim(), rows))
}

/// Local coordinates on `Λ^p V*` for `V = g_{-1}` of dimension `2m`: `p`-subsets of `0..2m`.
pub fn forms_basis(two_m: usize, p: usize) -> (Vec<Vec<usize>>, HashMap<Vec<usize>, usize>) {
    let t = subsets(two_m, p);
    let r = t.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    (t, r)
}

/// Contraction `Λ^p V* → Λ^{p-2} V*` with the bivector `b⁻¹`.
pub fn contraction_matrix(g: &GradedLieAlgebra, p: usize) -> Result<Matrix, LieError> {
    let b = g.bracket_form();
    let two_m = b.nrows();
    let pinv = b.inverse().map_err(|_| LieError::Consistency("degenerate bracket form".into()))?;
    let (src, _) = forms_basis(two_m, p);
    let (dst, dst_rank) = forms_basis(two_m, p.saturating_sub(2));
    let cols: Vec<SparseVec> = src
        .iter()
        .map(|s| {
            let mut pairs = Vec::new();
            for pa in 0..s.len() {
                for pc in pa + 1..s.len() {
                    let (a, c) = (s[pa], s[pc]);
                    let coeff = pinv.get(a, c);
                    if coeff.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = s.iter().copied().filter(|&x| x != a && x != c).collect();
                    let sign = if (pa + pc - 1) % 2 == 0 { int(2) } else { int(-2) };
                    pairs.push((dst_rank[&rest], coeff * sign));
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    Ok(Matrix::from_columns(dst.len(), &cols))
}

/// Wedge with `b`: `Λ^{p-2} V* → Λ^p V*`, spanning the trace part.
pub fn wedge_b_matrix(g: &GradedLieAlgebra, p: usize) -> Matrix {
    let b = g.bracket_form();
    let two_m = b.nrows();
    let (src, _) = forms_basis(two_m, p - 2);
    let (dst, dst_rank) = forms_basis(two_m, p);
    let cols: Vec<SparseVec> = src
        .iter()
        .map(|s| {
            let mut pairs = Vec::new();
            for a in 0..two_m {
                for c in a + 1..two_m {
                    let coeff = b.get(a, c);
                    if coeff.is_zero() || s.contains(&a) || s.contains(&c) {
                        continue;
                    }
                    let mut t = vec![a, c];
                    t.extend(s.iter().copied());
                    let sign = sort_sign(&mut t).unwrap();
                    pairs.push((dst_rank[&t], coeff * int(sign)));
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    Matrix::from_columns(dst.len(), &cols)
}

/// Tracefree part `Λ^p_0 V*`: kernel of the contraction with `b⁻¹`.
pub fn tracefree_forms(g: &GradedLieAlgebra, p: usize) -> Result<Subspace, LieError> {
    let two_m = g.range(-1).len();
    if p < 2 {
        return Ok(Subspace::full(binomial(two_m, p)));
    }
    Ok(crate::linalg::subspace::kernel(&contraction_matrix(g, p)?))
}

/// `X ↦ b(X, ·)`, the identification `g_{-1} ≅ g_{-1}* ⊗ g_{-2}`.
pub fn bracket_iso(g: &GradedLieAlgebra) -> Matrix {
    g.bracket_form().transpose()
}

/// Coordinates on `Λ²V* ⊗ V`: `pair_rank * 2m + c`.
pub fn lam2v_index(two_m: usize, pair_rank: usize, c: usize) -> usize {
    pair_rank * two_m + c
}

/// The embedding `Λ³V* → Λ²V* ⊗ V`, `ω ↦ ψ` with `b(ψ(X, Y), Z) = ω(X, Y, Z)`.
pub fn lambda3_embedding(g: &GradedLieAlgebra) -> Result<Matrix, LieError> {
    let b = g.bracket_form();
    let two_m = b.nrows();
    // ψ(X, Y) = (bᵀ)⁻¹ ω(X, Y, ·)
    let bt_inv = b.transpose().inverse()?;
    let (triples, _) = forms_basis(two_m, 3);
    let (_, pair_rank) = forms_basis(two_m, 2);
    let cols: Vec<SparseVec> = triples
        .iter()
        .map(|t| {
            let mut pairs = Vec::new();
            // ω = e^{t0 t1 t2}; for pair (v, w) ⊂ t and remaining z, ω(e_v, e_w, e_z) = sign
            for (pz, &z) in t.iter().enumerate() {
                let vw: Vec<usize> = t.iter().copied().filter(|&x| x != z).collect();
                let sign = if (2 - pz) % 2 == 0 { int(1) } else { int(-1) };
                let pr = pair_rank[&vw];
                for c in 0..two_m {
                    let x = bt_inv.get(c, z);
                    if !x.is_zero() {
                        pairs.push((lam2v_index(two_m, pr, c), &sign * x));
                    }
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    Ok(Matrix::from_columns(binomial(two_m, 2) * two_m, &cols))
}

/// Images of `Λ³V* ⊗ g_{-2}` and `Λ³_0 V* ⊗ g_{-2}` inside `Λ²V* ⊗ V`.
pub fn embed_lambda3(g: &GradedLieAlgebra) -> Result<(Subspace, Subspace), LieError> {
    let emb = lambda3_embedding(g)?;
    let full = crate::linalg::subspace::image(&emb);
    let tf = tracefree_forms(g, 3)?;
    Ok((full, tf.map(&emb)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_lex() {
        assert_eq!(subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(binomial(14, 3), 364);
    }

    #[test]
    fn sort_signs() {
        assert_eq!(sort_sign(&mut [2, 0, 1]), Some(1));
        assert_eq!(sort_sign(&mut [1, 0, 2]), Some(-1));
        assert_eq!(sort_sign(&mut [1, 1]), None);
    }
}
