//! Split exceptional algebras in a Chevalley basis.
//!
//! `D_4` and `E_{6,7,8}` come from the Frenkel–Kac model. `G_2` and `F_4` are
//! the fixed-point subalgebras of the triality of `D_4` and the diagram flip of
//! `E_6`, generated by orbit sums of the Chevalley generators. From any set of
//! Chevalley generators the full basis is extracted by height:
//! `e_ξ = [e_i, e_{ξ-α_i}] / (p+1)` and `f_ξ = -[f_i, f_{ξ-α_i}] / (p+1)` with
//! `i` the smallest admissible index and `p` the length of the `α_i`-string
//! below `ξ - α_i`. The Chevalley involution `e_ξ ↦ -f_ξ`, `h ↦ -h` is the
//! Cartan involution of the split form.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::algebra::{GradedLieAlgebra, Metadata};
use super::roots::{frenkel_kac, height, positive_roots, simply_laced_cartan, string_down, RawAlgebra};
use super::{Family, LieError};
use crate::linalg::elim::Solver;
use crate::linalg::scalar::int;
use crate::linalg::{Matrix, Scalar, SparseVec};

/// The scalar `c` with `v = c w`, if any.
fn ratio(v: &SparseVec, w: &SparseVec) -> Option<Scalar> {
    if v.is_zero() {
        return Some(Scalar::zero());
    }
    let (i, x) = w.leading()?;
    let c = v.get(i) / x;
    (w.scale(&c) == *v).then_some(c)
}

struct Extracted {
    cartan: Vec<Vec<i64>>,
    /// Basis vectors in the ambient algebra with their roots (zero for Cartan elements).
    vectors: Vec<SparseVec>,
    roots: Vec<Vec<i64>>,
    degrees: Vec<i8>,
    /// Position of the Chevalley partner under the involution, with sign.
    partner: Vec<(usize, i64)>,
}

fn extract(raw: &RawAlgebra, e: &[SparseVec], f: &[SparseVec]) -> Result<Extracted, LieError> {
    let r = e.len();
    let bad = |s: &str| LieError::Consistency(format!("Chevalley extraction: {s}"));
    let h: Vec<SparseVec> = (0..r).map(|i| raw.bracket_vec(&e[i], &f[i])).collect();
    let mut cartan = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in 0..r {
            let c = ratio(&raw.bracket_vec(&h[i], &e[j]), &e[j]).ok_or_else(|| bad("h_i does not act diagonally"))?;
            if !c.is_integer() {
                return Err(bad("non-integral Cartan entry"));
            }
            cartan[i][j] = c.to_integer().try_into().map_err(|_| bad("Cartan entry overflow"))?;
        }
    }
    let pos = positive_roots(&cartan);
    let index: HashMap<Vec<i64>, usize> = pos.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
    let mut ev: Vec<SparseVec> = Vec::with_capacity(pos.len());
    let mut fv: Vec<SparseVec> = Vec::with_capacity(pos.len());
    for xi in &pos {
        if height(xi) == 1 {
            let i = xi.iter().position(|&x| x == 1).unwrap();
            ev.push(e[i].clone());
            fv.push(f[i].clone());
            continue;
        }
        let (i, beta) = (0..r)
            .find_map(|i| {
                let mut b = xi.clone();
                b[i] -= 1;
                index.get(&b).map(|_| (i, b))
            })
            .ok_or_else(|| bad("root without predecessor"))?;
        let p = string_down(&index, &beta, i);
        let k = index[&beta];
        let scale = Scalar::one() / int(p + 1);
        let x = raw.bracket_vec(&e[i], &ev[k]).scale(&scale);
        let y = raw.bracket_vec(&f[i], &fv[k]).scale(&-scale);
        if x.is_zero() || y.is_zero() {
            return Err(bad("vanishing root vector"));
        }
        ev.push(x);
        fv.push(y);
    }
    // Check [e_ξ, f_ξ] lies in the Cartan span with ξ([e_ξ, f_ξ]) = 2.
    let hsolver = Solver::new(&h);
    for k in 0..pos.len() {
        let hx = raw.bracket_vec(&ev[k], &fv[k]);
        if !hsolver.contains(&hx) {
            return Err(bad("[e, f] leaves the Cartan subalgebra"));
        }
        let c = ratio(&raw.bracket_vec(&hx, &ev[k]), &ev[k]).ok_or_else(|| bad("coroot does not act diagonally"))?;
        if c != int(2) {
            return Err(bad("coroot normalization"));
        }
    }
    // Grading by the coroot of the highest root.
    let top = pos.len() - 1;
    let h_theta = raw.bracket_vec(&ev[top], &fv[top]);
    let simple_eig: Vec<i64> = (0..r)
        .map(|j| {
            ratio(&raw.bracket_vec(&h_theta, &e[j]), &e[j])
                .and_then(|c| c.to_integer().try_into().ok())
                .ok_or_else(|| bad("grading eigenvalue"))
        })
        .collect::<Result<_, _>>()?;
    let eig = |xi: &[i64]| -> i64 { xi.iter().zip(&simple_eig).map(|(a, b)| a * b).sum() };

    // Collect (degree, signed height, discovery) keys.
    struct Item {
        key: (i64, i64, usize),
        vec: SparseVec,
        root: Vec<i64>,
        kind: (u8, usize),
    }
    let mut items: Vec<Item> = Vec::new();
    let np = pos.len();
    for (k, xi) in pos.iter().enumerate() {
        let d = eig(xi);
        let neg: Vec<i64> = xi.iter().map(|x| -x).collect();
        items.push(Item { key: (-d, -height(xi), k), vec: fv[k].clone(), root: neg, kind: (0, k) });
        items.push(Item { key: (d, height(xi), np + r + k), vec: ev[k].clone(), root: xi.clone(), kind: (2, k) });
    }
    for (i, hv) in h.iter().enumerate() {
        items.push(Item { key: (0, 0, np + i), vec: hv.clone(), root: vec![0; r], kind: (1, i) });
    }
    items.sort_by_key(|it| it.key);
    if items.iter().any(|it| it.key.0.abs() > 2) {
        return Err(bad("grading has more than five parts"));
    }
    let mut pos_of: HashMap<(u8, usize), usize> = HashMap::new();
    for (p, it) in items.iter().enumerate() {
        pos_of.insert(it.kind, p);
    }
    let partner = items
        .iter()
        .enumerate()
        .map(|(p, it)| match it.kind {
            (0, k) => (pos_of[&(2, k)], -1),
            (2, k) => (pos_of[&(0, k)], -1),
            _ => (p, -1),
        })
        .collect();
    Ok(Extracted {
        cartan,
        degrees: items.iter().map(|it| it.key.0 as i8).collect(),
        roots: items.iter().map(|it| it.root.clone()).collect(),
        vectors: items.into_iter().map(|it| it.vec).collect(),
        partner,
    })
}

fn assemble(family: Family, raw: &RawAlgebra, ex: Extracted) -> Result<GradedLieAlgebra, LieError> {
    let dim = ex.vectors.len();
    let solver = Solver::new(&ex.vectors);
    if solver.rank() != dim {
        return Err(LieError::Consistency("extracted basis is dependent".into()));
    }
    let brackets: Vec<Option<SparseVec>> = (0..dim * dim)
        .into_par_iter()
        .map(|ij| {
            let (i, j) = (ij / dim, ij % dim);
            if i >= j {
                return Some(SparseVec::new());
            }
            solver.solve(&raw.bracket_vec(&ex.vectors[i], &ex.vectors[j]))
        })
        .collect();
    if brackets.iter().any(|b| b.is_none()) {
        return Err(LieError::Consistency("extracted span is not a subalgebra".into()));
    }
    let brackets: Vec<SparseVec> = brackets.into_iter().map(|b| b.unwrap()).collect();
    let theta_cols: Vec<SparseVec> = ex.partner.iter().map(|&(p, s)| SparseVec::single(p, int(s))).collect();
    let theta = Matrix::from_columns(dim, &theta_cols);
    GradedLieAlgebra::from_upper(
        family,
        Vec::new(),
        ex.degrees,
        |i, j| brackets[i * dim + j].clone(),
        theta,
        Metadata::Chevalley { cartan: ex.cartan, roots: ex.roots },
    )
}

/// Split real form of `G2`, `F4`, `E6`, `E7` or `E8` with its contact grading.
pub fn construct_split(family: Family) -> Result<GradedLieAlgebra, LieError> {
    let (kind, orbits): (&str, Vec<Vec<usize>>) = match family {
        Family::SplitG2 => ("D4", vec![vec![0, 2, 3], vec![1]]),
        Family::SplitF4 => ("E6", vec![vec![1], vec![3], vec![2, 4], vec![0, 5]]),
        Family::SplitE6 => ("E6", (0..6).map(|i| vec![i]).collect()),
        Family::SplitE7 => ("E7", (0..7).map(|i| vec![i]).collect()),
        Family::SplitE8 => ("E8", (0..8).map(|i| vec![i]).collect()),
        other => return Err(LieError::Parameter(format!("{other:?} is not a split exceptional family"))),
    };
    let cartan = simply_laced_cartan(kind).expect("known type");
    let (raw, e, f) = frenkel_kac(&cartan);
    let sum = |v: &[SparseVec], orbit: &[usize]| {
        orbit.iter().fold(SparseVec::new(), |acc, &i| acc.add(&v[i]))
    };
    let ge: Vec<SparseVec> = orbits.iter().map(|o| sum(&e, o)).collect();
    let gf: Vec<SparseVec> = orbits.iter().map(|o| sum(&f, o)).collect();
    let ex = extract(&raw, &ge, &gf)?;
    assemble(family, &raw, ex)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_dims() {
        let g = construct_split(Family::SplitG2).unwrap();
        assert_eq!(g.component_dims(), [1, 4, 4, 4, 1]);
    }
}
