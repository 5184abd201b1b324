//! Probabilistic check that `g_0` is maximal among `g_0`-invariant subspaces
//! of `csp(g_{-1})` containing it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::lie::{GradedLieAlgebra, LieError, Metadata};
use crate::linalg::scalar::int;
use crate::sampling::Lcg;
use crate::linalg::modular::{ModEchelon, ModMatrix};
use crate::linalg::{Matrix, Scalar, SparseVec, Subspace};

/// `csp(g_{-1}, b) = sp ⊕ R·id` inside `gl(g_{-1})`, flattened row-major.
pub fn csp_subspace(g: &GradedLieAlgebra) -> Result<Subspace, LieError> {
    crate::spencer::csp_of_form(&g.bracket_form()).map_err(|e| LieError::Consistency(e.to_string()))
}

/// `ad(g_0)` restricted to `g_{-1}`, one matrix per basis element.
pub fn g0_in_gl(g: &GradedLieAlgebra) -> Vec<Matrix> {
    g.range(0).map(|a| g.ad_block(&SparseVec::unit(a), -1, -1)).collect()
}

/// Rank modulo `P` of the same closure, or `None` if some entry does not reduce.
/// A full rank here proves the exact closure is full as well.
fn closure_rank_mod(actions: &[ModMatrix], base: &[SparseVec], extra: &SparseVec, n: usize, cap: usize) -> Option<usize> {
    let mut ech = ModEchelon::new(n * n);
    for b in base {
        ech.insert(&ModMatrix::from_flat(b, n)?.data);
    }
    let extra = ModMatrix::from_flat(extra, n)?;
    let mut frontier = if ech.insert(&extra.data) { vec![extra] } else { Vec::new() };
    while let Some(w) = frontier.pop() {
        if ech.rank() >= cap {
            break;
        }
        for a in actions {
            let c = a.commutator(&w);
            if ech.insert(&c.data) {
                frontier.push(c);
            }
        }
    }
    Some(ech.rank())
}

/// Reduced row echelon form grown one vector at a time.
struct Echelon {
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    fn new() -> Self {
        Self { rows: Vec::new(), pivots: BTreeMap::new() }
    }

    /// Adds `v` if it is independent of the rows so far.
    fn insert(&mut self, v: &SparseVec) -> bool {
        // rows are zero at every other pivot, so one pass clears all pivots
        let hits: Vec<(usize, Scalar)> =
            v.iter().filter_map(|(i, x)| self.pivots.get(&i).map(|&r| (r, x.clone()))).collect();
        let mut v = v.clone();
        for (r, x) in hits {
            v = v.axpy(&-x, &self.rows[r]);
        }
        let Some((lead, c)) = v.leading().map(|(i, c)| (i, c.clone())) else { return false };
        let v = v.scale(&c.recip());
        for row in &mut self.rows {
            let x = row.get(lead);
            if x != Scalar::from_integer(0.into()) {
                *row = row.axpy(&-x, &v);
            }
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(v);
        true
    }
}

/// `g_0`-invariant subspace generated by the invariant `base` and `extra`,
/// grown until it is closed or reaches `cap` dimensions.
fn closure(actions: &[Matrix], base: &[SparseVec], extra: &SparseVec, n: usize, cap: usize) -> Result<Vec<SparseVec>, LieError> {
    let mut ech = Echelon::new();
    for b in base {
        ech.insert(b);
    }
    let mut frontier: Vec<SparseVec> = if ech.insert(extra) { vec![extra.clone()] } else { Vec::new() };
    while let Some(w) = frontier.pop() {
        if ech.rows.len() >= cap {
            break;
        }
        let w = Matrix::from_flat(&w, n, n);
        for a in actions {
            let c = a.commutator(&w)?.flatten();
            if ech.insert(&c) {
                frontier.push(c);
            }
        }
    }
    Ok(ech.rows)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Probe {
    /// `random:<trial>`, `complement:<i>`, or `preserve-E:<i>` / `preserve-F:<i>`.
    pub source: String,
    pub closure_dim: usize,
    pub reaches_csp: bool,
    /// `modular-rank`: rank modulo a large prime already equals `dim csp`,
    /// a lower bound for the exact rank. `exact`: rational elimination.
    pub method: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MaximalityReport {
    pub seed: u64,
    pub trials: usize,
    pub csp_dim: usize,
    pub g0_dim: usize,
    pub probes: Vec<Probe>,
    /// Every probe generated all of `csp`.
    pub maximal: bool,
    /// Random sampling cannot prove maximality; it only fails to find a witness.
    pub probabilistic: bool,
}

/// Probes for the two subalgebras of `csp` preserving one Lagrangian summand.
fn split_probes(csp: &Subspace, g0: &Subspace, e: &[usize], f: &[usize], n: usize) -> Result<Vec<(String, SparseVec)>, LieError> {
    let mut out = Vec::new();
    for (label, keep) in [("preserve-E", e), ("preserve-F", f)] {
        // M(keep) ⊂ keep: entries (r, c) with c ∈ keep and r ∉ keep vanish
        let axes = (0..n * n).filter(|i| !(keep.contains(&(i % n)) && !keep.contains(&(i / n))));
        let p = csp.intersect(&Subspace::coordinate(n * n, axes))?;
        let mut i = 0;
        for v in p.basis() {
            if !g0.contains(v)? {
                out.push((format!("{label}:{i}"), v.clone()));
                i += 1;
            }
        }
    }
    Ok(out)
}

pub fn maximality_check(g: &GradedLieAlgebra, trials: usize, seed: u64) -> Result<MaximalityReport, LieError> {
    if trials == 0 {
        return Err(LieError::Parameter("maximality needs at least one trial".into()));
    }
    let n = g.range(-1).len();
    let csp = csp_subspace(g)?;
    let actions = g0_in_gl(g);
    let g0 = Subspace::span(n * n, &actions.iter().map(Matrix::flatten).collect::<Vec<_>>())?;
    if !csp.contains_subspace(&g0)? {
        return Err(LieError::Consistency("ad(g_0) is not inside csp".into()));
    }
    let mut candidates: Vec<(String, SparseVec)> = Vec::new();
    let mut rng = Lcg::new(seed);
    for t in 0..trials {
        let mut v = SparseVec::new();
        for _ in 0..64 {
            let coeffs: Vec<i64> = csp.basis().iter().map(|_| rng.small(3)).collect();
            v = csp.basis().iter().zip(&coeffs).fold(SparseVec::new(), |acc, (b, &c)| acc.axpy(&int(c), b));
            if !g0.contains(&v)? {
                break;
            }
        }
        if g0.contains(&v)? {
            return Err(LieError::Consistency("sampling stayed inside g_0".into()));
        }
        candidates.push((format!("random:{t}"), v));
    }
    // a fixed complement of g_0 in csp, built greedily from the canonical basis
    let mut acc = g0.clone();
    let mut idx = 0;
    for v in csp.basis() {
        if !acc.contains(v)? {
            acc = acc.sum(&Subspace::span(n * n, std::slice::from_ref(v))?)?;
            candidates.push((format!("complement:{idx}"), v.clone()));
            idx += 1;
        }
    }
    if let Metadata::Split { e, f } = g.metadata() {
        candidates.extend(split_probes(&csp, &g0, e, f, n)?);
    }
    let actions_mod: Option<Vec<ModMatrix>> = actions.iter().map(ModMatrix::from_matrix).collect();
    let probes: Vec<Probe> = candidates
        .into_par_iter()
        .map(|(source, v)| {
            // the closure stays inside csp, so reaching its dimension means equality
            if let Some(ref am) = actions_mod {
                if closure_rank_mod(am, g0.basis(), &v, n, csp.dim()) == Some(csp.dim()) {
                    return Ok(Probe { source, closure_dim: csp.dim(), reaches_csp: true, method: "modular-rank".into() });
                }
            }
            let c = closure(&actions, g0.basis(), &v, n, csp.dim())?;
            let reaches_csp = c.len() == csp.dim() && csp.contains_subspace(&Subspace::span(n * n, &c)?)?;
            Ok(Probe { source, closure_dim: c.len(), reaches_csp, method: "exact".into() })
        })
        .collect::<Result<_, LieError>>()?;
    Ok(MaximalityReport {
        seed,
        trials,
        csp_dim: csp.dim(),
        g0_dim: g0.dim(),
        maximal: probes.iter().all(|p| p.reaches_csp),
        probes,
        probabilistic: true,
    })
}
