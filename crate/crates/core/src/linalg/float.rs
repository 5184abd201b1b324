//! Floating-point rank for chain spaces too large for exact elimination.
//!
//! Each connected block is converted to `f64` and its rank is read off the
//! singular values with a relative cutoff. Results from this path are
//! approximate and callers must label them as such.

use nalgebra::DMatrix;
use rayon::prelude::*;
use std::collections::HashMap;

use super::elim::components;
use super::matrix::Matrix;
use super::scalar::to_f64;

pub const DEFAULT_THRESHOLD: usize = 20_000;
pub const DEFAULT_REL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
#[derive(Default)]
pub enum Mode {
    #[default]
    Exact,
    FloatFallback { threshold: usize },
}


impl Mode {
    /// Whether a space with `cols` coordinates should use the float path.
    pub fn use_float(&self, cols: usize) -> bool {
        matches!(self, Mode::FloatFallback { threshold } if cols > *threshold)
    }
}

/// Numerical rank with singular values below `rel_tol * sigma_max` discarded.
pub fn float_rank(m: &Matrix, rel_tol: f64) -> usize {
    components(m.rows())
        .par_iter()
        .map(|members| {
            let mut cols: Vec<usize> = members.iter().flat_map(|&r| m.row(r).iter().map(|(i, _)| i)).collect();
            cols.sort_unstable();
            cols.dedup();
            let pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
            let mut d = DMatrix::<f64>::zeros(members.len(), cols.len());
            for (a, &r) in members.iter().enumerate() {
                for (i, x) in m.row(r).iter() {
                    d[(a, pos[&i])] = to_f64(x);
                }
            }
            let sv = d.singular_values();
            let max = sv.iter().cloned().fold(0.0, f64::max);
            if max == 0.0 {
                return 0;
            }
            sv.iter().filter(|&&s| s > rel_tol * max).count()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_exact_on_small_input() {
        let m = Matrix::from_i64(&[vec![1, 2, 0], vec![2, 4, 0], vec![0, 0, 3]]);
        assert_eq!(float_rank(&m, DEFAULT_REL_TOL), m.rank());
        assert!(Mode::FloatFallback { threshold: 2 }.use_float(3));
        assert!(!Mode::Exact.use_float(1_000_000));
    }
}
