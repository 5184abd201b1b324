//! Cartan matrices, root enumeration, and the Frenkel–Kac model of the
//! simply-laced split algebras.

use std::collections::HashMap;

use crate::linalg::scalar::int;
use crate::linalg::SparseVec;

/// Cartan matrix `a_ij = α_j(h_i)` of `D_4` or `E_r` in Bourbaki numbering
/// (zero-based: `E` has the chain `0-2-3-4-...` with node `1` on node `3`;
/// `D_4` has center `1`).
pub fn simply_laced_cartan(kind: &str) -> Option<Vec<Vec<i64>>> {
    let (rank, edges): (usize, Vec<(usize, usize)>) = match kind {
        "D4" => (4, vec![(0, 1), (1, 2), (1, 3)]),
        "E6" | "E7" | "E8" => {
            let r: usize = kind[1..].parse().ok()?;
            let mut e = vec![(0, 2), (1, 3), (2, 3)];
            e.extend((3..r - 1).map(|i| (i, i + 1)));
            (r, e)
        }
        _ => return None,
    };
    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in edges {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    Some(a)
}

/// `β(h_i) = Σ_j β_j a_ij`.
pub fn pairing(cartan: &[Vec<i64>], beta: &[i64], i: usize) -> i64 {
    beta.iter().zip(&cartan[i]).map(|(b, a)| b * a).sum()
}

/// Positive roots in simple-root coordinates, ordered by height and then by
/// discovery (extending each root of the previous height by `α_0, α_1, ...`).
pub fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut all: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut known: HashMap<Vec<i64>, usize> = all.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
    let mut level: Vec<Vec<i64>> = all.clone();
    while !level.is_empty() {
        let mut next = Vec::new();
        for beta in &level {
            for i in 0..r {
                let p = string_down(&known, beta, i);
                let q = p - pairing(cartan, beta, i);
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains_key(&up) {
                        known.insert(up.clone(), all.len());
                        all.push(up.clone());
                        next.push(up);
                    }
                }
            }
        }
        level = next;
    }
    all
}

/// Largest `p ≥ 0` with `β - p α_i` a (positive) root.
pub fn string_down<T>(known: &HashMap<Vec<i64>, T>, beta: &[i64], i: usize) -> i64 {
    let mut p = 0;
    let mut cur = beta.to_vec();
    loop {
        cur[i] -= 1;
        if known.contains_key(&cur) {
            p += 1;
        } else {
            return p;
        }
    }
}

pub fn height(root: &[i64]) -> i64 {
    root.iter().sum()
}

/// An algebra given only by its bracket table, without grading data.
#[derive(Clone, Debug)]
pub struct RawAlgebra {
    pub dim: usize,
    pub table: Vec<SparseVec>,
}

impl RawAlgebra {
    pub fn bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
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
}

/// Frenkel–Kac construction for a simply-laced Cartan matrix.
///
/// Basis: `h_0..h_{r-1}`, then `E_α` for positive roots, then `E_{-α}`.
/// Brackets: `[h_i, E_α] = (α_i|α) E_α`, `[E_α, E_{-α}] = -α`, and
/// `[E_α, E_β] = ε(α, β) E_{α+β}` with the bimultiplicative sign
/// `ε(α_i, α_j) = -1` for `i = j` or (`i < j` and `a_ij = -1`).
///
/// Returns the algebra with the Chevalley generators `e_i = E_{α_i}`,
/// `f_i = -E_{-α_i}`.
pub fn frenkel_kac(cartan: &[Vec<i64>]) -> (RawAlgebra, Vec<SparseVec>, Vec<SparseVec>) {
    let r = cartan.len();
    let pos = positive_roots(cartan);
    let np = pos.len();
    let dim = r + 2 * np;
    let mut roots: Vec<Vec<i64>> = vec![vec![0; r]; r];
    roots.extend(pos.iter().cloned());
    roots.extend(pos.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
    let index: HashMap<Vec<i64>, usize> = roots.iter().enumerate().skip(r).map(|(k, v)| (v.clone(), k)).collect();
    let eps = |a: &[i64], b: &[i64]| -> i64 {
        let mut e = 0i64;
        for i in 0..r {
            for j in i..r {
                let m = if i == j { 1 } else { cartan[i][j].rem_euclid(2) };
                e += a[i] * m * b[j];
            }
        }
        if e.rem_euclid(2) == 0 { 1 } else { -1 }
    };
    let form = |a: &[i64], i: usize| -> i64 { pairing(cartan, a, i) };
    let mut table = vec![SparseVec::new(); dim * dim];
    for x in 0..dim {
        for y in 0..dim {
            let v = match (x < r, y < r) {
                (true, true) => SparseVec::new(),
                (true, false) => SparseVec::single(y, int(form(&roots[y], x))),
                (false, true) => SparseVec::single(x, int(-form(&roots[x], y))),
                (false, false) => {
                    let sum: Vec<i64> = roots[x].iter().zip(&roots[y]).map(|(a, b)| a + b).collect();
                    if sum.iter().all(|&s| s == 0) {
                        SparseVec::from_pairs(
                            roots[x].iter().enumerate().map(|(i, &a)| (i, int(-a))).collect(),
                        )
                    } else if let Some(&k) = index.get(&sum) {
                        SparseVec::single(k, int(eps(&roots[x], &roots[y])))
                    } else {
                        SparseVec::new()
                    }
                }
            };
            table[x * dim + y] = v;
        }
    }
    let e = (0..r).map(|i| SparseVec::unit(r + i)).collect();
    let f = (0..r).map(|i| SparseVec::single(r + np + i, int(-1))).collect();
    (RawAlgebra { dim, table }, e, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (k, n) in [("D4", 12), ("E6", 36), ("E7", 63), ("E8", 120)] {
            assert_eq!(positive_roots(&simply_laced_cartan(k).unwrap()).len(), n, "{k}");
        }
        let g2 = vec![vec![2, -1], vec![-3, 2]];
        assert_eq!(positive_roots(&g2).len(), 6);
        let f4 = vec![vec![2, -1, 0, 0], vec![-1, 2, -1, 0], vec![0, -2, 2, -1], vec![0, 0, -1, 2]];
        assert_eq!(positive_roots(&f4).len(), 24);
    }
}
