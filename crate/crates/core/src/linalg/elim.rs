//! Gaussian elimination kernels.
//!
//! Every entry point first splits its input into connected components of the
//! "shares a coordinate" relation and eliminates each component on its own.
//! The chain spaces built on weight bases decompose into many small blocks,
//! which is what keeps the exact computations tractable.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::scalar::Scalar;
use super::vector::{linear_combination, SparseVec};

struct UnionFind {
    parent: HashMap<usize, usize>,
}

impl UnionFind {
    fn new() -> Self {
        Self { parent: HashMap::new() }
    }

    fn find(&mut self, x: usize) -> usize {
        let p = *self.parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.parent.insert(x, r);
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent.insert(ra.max(rb), ra.min(rb));
        }
    }
}

/// Groups vector indices into components whose coordinate supports are disjoint.
/// Zero vectors are omitted.
pub fn components(vectors: &[SparseVec]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new();
    for v in vectors {
        let mut it = v.iter().map(|(i, _)| i);
        if let Some(first) = it.next() {
            uf.find(first);
            for i in it {
                uf.union(first, i);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for (k, v) in vectors.iter().enumerate() {
        if let Some((first, _)) = v.leading() {
            groups.entry(uf.find(first)).or_default().push(k);
        }
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|g| g[0]);
    out
}

/// Fully reduced echelon rows for one component, optionally tracking the
/// combination of generators producing each row.
struct Echelon {
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivots: HashMap<usize, usize>,
    tracked: bool,
}

impl Echelon {
    fn new(tracked: bool) -> Self {
        Self { rows: Vec::new(), combos: Vec::new(), pivots: HashMap::new(), tracked }
    }

    fn reduce_pair(&self, v: &SparseVec, combo: &SparseVec) -> (SparseVec, SparseVec) {
        let hits: Vec<(&Scalar, usize)> = v
            .iter()
            .filter_map(|(i, x)| self.pivots.get(&i).map(|&r| (x, r)))
            .collect();
        if hits.is_empty() {
            return (v.clone(), combo.clone());
        }
        let neg: Vec<Scalar> = hits.iter().map(|(x, _)| -(*x)).collect();
        let one = Scalar::one();
        let mut terms: Vec<(&Scalar, &SparseVec)> = vec![(&one, v)];
        terms.extend(neg.iter().zip(hits.iter()).map(|(c, (_, r))| (c, &self.rows[*r])));
        let reduced = linear_combination(terms);
        let new_combo = if self.tracked {
            let mut cterms: Vec<(&Scalar, &SparseVec)> = vec![(&one, combo)];
            cterms.extend(neg.iter().zip(hits.iter()).map(|(c, (_, r))| (c, &self.combos[*r])));
            linear_combination(cterms)
        } else {
            SparseVec::new()
        };
        (reduced, new_combo)
    }

    fn insert(&mut self, v: &SparseVec, combo: SparseVec) {
        let (mut w, mut wc) = self.reduce_pair(v, &combo);
        let Some((p, lead)) = w.leading() else { return };
        let inv = lead.recip();
        w.scale_mut(&inv);
        if self.tracked {
            wc.scale_mut(&inv);
        }
        for r in 0..self.rows.len() {
            if let Some(x) = self.rows[r].get_ref(p) {
                let c = -x.clone();
                self.rows[r] = self.rows[r].axpy(&c, &w);
                if self.tracked {
                    self.combos[r] = self.combos[r].axpy(&c, &wc);
                }
            }
        }
        self.pivots.insert(p, self.rows.len());
        self.rows.push(w);
        self.combos.push(wc);
    }
}

fn eliminate_component(vectors: &[SparseVec], members: &[usize], tracked: bool) -> Echelon {
    let mut e = Echelon::new(tracked);
    for &k in members {
        let combo = if tracked { SparseVec::unit(k) } else { SparseVec::new() };
        e.insert(&vectors[k], combo);
    }
    e
}

fn eliminate_all(vectors: &[SparseVec], tracked: bool) -> Vec<Echelon> {
    let comps = components(vectors);
    comps
        .par_iter()
        .map(|members| eliminate_component(vectors, members, tracked))
        .collect()
}

/// Canonical reduced row-echelon basis of the span of `vectors`, sorted by pivot.
pub fn rref(vectors: &[SparseVec]) -> Vec<SparseVec> {
    let mut rows: Vec<SparseVec> = eliminate_all(vectors, false)
        .into_iter()
        .flat_map(|e| e.rows)
        .collect();
    rows.sort_by_key(|r| r.leading().map(|(i, _)| i));
    rows
}

/// Reduced echelon data with the generator combination behind every row;
/// answers membership and coordinate queries against a fixed generating list.
#[derive(Clone, Debug)]
pub struct Solver {
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivots: HashMap<usize, usize>,
    generators: usize,
}

impl Solver {
    pub fn new(generators: &[SparseVec]) -> Self {
        let mut rows = Vec::new();
        let mut combos = Vec::new();
        for e in eliminate_all(generators, true) {
            rows.extend(e.rows);
            combos.extend(e.combos);
        }
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&r| rows[r].leading().map(|(i, _)| i));
        let rows: Vec<SparseVec> = order.iter().map(|&r| rows[r].clone()).collect();
        let combos: Vec<SparseVec> = order.iter().map(|&r| combos[r].clone()).collect();
        let pivots = rows
            .iter()
            .enumerate()
            .map(|(r, v)| (v.leading().unwrap().0, r))
            .collect();
        Self { rows, combos, pivots, generators: generators.len() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Remainder of `v` after eliminating all pivot coordinates.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(Scalar, usize)> = v
            .iter()
            .filter_map(|(i, x)| self.pivots.get(&i).map(|&r| (-x.clone(), r)))
            .collect();
        if hits.is_empty() {
            return v.clone();
        }
        let one = Scalar::one();
        let mut terms: Vec<(&Scalar, &SparseVec)> = vec![(&one, v)];
        terms.extend(hits.iter().map(|(c, r)| (c, &self.rows[*r])));
        linear_combination(terms)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coefficients `c` with `sum c_i * generator_i == v`, if `v` is in the span.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        if !self.contains(v) {
            return None;
        }
        Some(linear_combination(
            v.iter()
                .filter_map(|(i, x)| self.pivots.get(&i).map(|&r| (x, &self.combos[r]))),
        ))
    }

    /// Coefficient vectors spanning the relations among the generators.
    pub fn relations(&self, generators: &[SparseVec]) -> Vec<SparseVec> {
        // Every generator not used as a pivot source yields one relation.
        let mut out = Vec::new();
        let used: Vec<SparseVec> = self.combos.clone();
        let span = Solver::new(&used);
        for k in 0..self.generators {
            let unit = SparseVec::unit(k);
            if span.contains(&unit) {
                continue;
            }
            let c = self.solve(&generators[k]).expect("generator lies in its own span");
            let rel = c.sub(&unit);
            if !rel.is_zero() {
                out.push(rel);
            }
        }
        rref(&out)
    }
}

/// Canonical kernel basis of the matrix with the given rows and `cols` columns.
pub fn kernel_of_rows(rows: &[SparseVec], cols: usize) -> Vec<SparseVec> {
    let ech = rref(rows);
    let mut pivot_of_col: HashMap<usize, usize> = HashMap::new();
    let mut entries_in_col: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
    for r in &ech {
        let p = r.leading().unwrap().0;
        pivot_of_col.insert(p, p);
        for (c, x) in r.iter().skip(1) {
            entries_in_col.entry(c).or_default().push((p, x.clone()));
        }
    }
    let mut basis = Vec::new();
    for f in 0..cols {
        if pivot_of_col.contains_key(&f) {
            continue;
        }
        let mut pairs = vec![(f, Scalar::one())];
        if let Some(list) = entries_in_col.get(&f) {
            pairs.extend(list.iter().map(|(p, x)| (*p, -x.clone())));
        }
        basis.push(SparseVec::from_pairs(pairs));
    }
    rref(&basis)
}

fn clear_denominators(v: &[Scalar]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| (x * Scalar::from_integer(l.clone())).to_integer()).collect()
}

/// Fraction-free (Bareiss) elimination on an integer matrix; returns the rank
/// and, for square input, the determinant.
pub fn bareiss(mut a: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let n = a.len();
    if n == 0 {
        return (0, BigInt::one());
    }
    let m = a[0].len();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..m {
        if row == n {
            break;
        }
        let Some(piv) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        if piv != row {
            a.swap(piv, row);
            sign = -sign;
        }
        for r in row + 1..n {
            for c in col + 1..m {
                let v = &a[row][col] * &a[r][c] - &a[r][col] * &a[row][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        row += 1;
        rank += 1;
    }
    let det = if n == m && rank == n { sign * prev } else { BigInt::zero() };
    (rank, det)
}

/// Rank by fraction-free elimination on each component.
pub fn rank_of_rows(rows: &[SparseVec]) -> usize {
    components(rows)
        .par_iter()
        .map(|members| {
            let mut cols: Vec<usize> = members
                .iter()
                .flat_map(|&k| rows[k].iter().map(|(i, _)| i))
                .collect();
            cols.sort_unstable();
            cols.dedup();
            let index: HashMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
            let dense: Vec<Vec<BigInt>> = members
                .iter()
                .map(|&k| {
                    let mut d = vec![Scalar::zero(); cols.len()];
                    for (i, x) in rows[k].iter() {
                        d[index[&i]] = x.clone();
                    }
                    clear_denominators(&d)
                })
                .collect();
            bareiss(dense).0
        })
        .sum()
}

/// Determinant of a dense square rational matrix.
pub fn determinant(rows: &[Vec<Scalar>]) -> Scalar {
    if rows.is_empty() {
        return Scalar::one();
    }
    let mut scale = Scalar::one();
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale /= Scalar::from_integer(l.clone());
            r.iter().map(|x| (x * Scalar::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let (_, det) = bareiss(ints);
    Scalar::from_integer(det) * scale
}

/// True when the symmetric matrix (given by rows) is positive definite,
/// decided by the signs of the elimination pivots in each block.
pub fn is_positive_definite(rows: &[SparseVec], n: usize) -> bool {
    for members in components(rows) {
        let mut idx: Vec<usize> = members.clone();
        idx.sort_unstable();
        let dense: Vec<Vec<Scalar>> = idx
            .iter()
            .map(|&r| idx.iter().map(|&c| rows[r].get(c)).collect())
            .collect();
        for k in 1..=dense.len() {
            let minor: Vec<Vec<Scalar>> = dense[..k].iter().map(|r| r[..k].to_vec()).collect();
            if !determinant(&minor).is_positive() {
                return false;
            }
        }
    }
    // zero rows would make the form degenerate
    rows.iter().filter(|r| !r.is_zero()).count() == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    fn v(pairs: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_pairs(pairs.iter().map(|&(i, x)| (i, int(x))).collect())
    }

    #[test]
    fn rref_is_canonical() {
        let a = rref(&[v(&[(0, 2), (1, 4)]), v(&[(0, 1), (2, 1)])]);
        let b = rref(&[v(&[(1, 2), (2, -1)]), v(&[(0, 3), (1, 6)])]);
        assert_eq!(a, b);
        assert_eq!(a[0].leading().unwrap().0, 0);
    }

    #[test]
    fn solver_coordinates() {
        let gens = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1)]), v(&[(0, 2), (1, 3)])];
        let s = Solver::new(&gens);
        assert_eq!(s.rank(), 2);
        let target = v(&[(0, 3), (1, 5)]);
        let c = s.solve(&target).unwrap();
        let back = linear_combination(c.iter().map(|(k, x)| (x, &gens[k])));
        assert_eq!(back, target);
        assert!(s.solve(&v(&[(2, 1)])).is_none());
        assert_eq!(s.relations(&gens).len(), 1);
    }

    #[test]
    fn bareiss_det() {
        let m = vec![
            vec![int(2), int(0), int(1)],
            vec![int(1), int(3), int(2)],
            vec![int(1), int(1), int(2)],
        ];
        assert_eq!(determinant(&m), int(6));
    }

    #[test]
    fn kernel_small() {
        let k = kernel_of_rows(&[v(&[(0, 1), (1, 1)])], 3);
        assert_eq!(k.len(), 2);
        for b in &k {
            assert!(v(&[(0, 1), (1, 1)]).dot(b).is_zero());
        }
    }
}
