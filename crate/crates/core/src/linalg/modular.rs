//! Arithmetic modulo the Mersenne prime `2^61 − 1`.
//!
//! Reduction is a ring homomorphism on rationals whose denominators avoid `P`,
//! so the rank of reduced vectors is a lower bound for the rank over `Q`.
//! Callers use it only in that direction.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Matrix, Scalar};

pub const P: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    (a + b) % P
}

fn neg(a: u64) -> u64 {
    (P - a) % P
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn reduce_int(x: &BigInt) -> u64 {
    let m = BigInt::from(P);
    let r = ((x % &m) + &m) % &m;
    r.to_u64().expect("residue fits in u64")
}

/// Image of `x`, or `None` when `P` divides its denominator.
pub fn reduce(x: &Scalar) -> Option<u64> {
    let d = reduce_int(x.denom());
    (d != 0).then(|| mul(reduce_int(x.numer()), inv(d)))
}

/// Dense row-major image of a square matrix.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    pub n: usize,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn from_matrix(m: &Matrix) -> Option<Self> {
        let n = m.nrows();
        let mut data = vec![0; n * n];
        for (i, row) in m.rows().iter().enumerate() {
            for (j, x) in row.iter() {
                data[i * n + j] = reduce(x)?;
            }
        }
        Some(Self { n, data })
    }

    /// Image of a flattened (row-major) `n × n` matrix.
    pub fn from_flat(v: &super::SparseVec, n: usize) -> Option<Self> {
        let mut data = vec![0; n * n];
        for (i, x) in v.iter() {
            data[i] = reduce(x)?;
        }
        Some(Self { n, data })
    }

    /// `self · other − other · self`.
    pub fn commutator(&self, other: &ModMatrix) -> ModMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let (a, b) = (self.data[i * n + k], other.data[i * n + k]);
                if a == 0 && b == 0 {
                    continue;
                }
                for j in 0..n {
                    let e = &mut data[i * n + j];
                    if a != 0 {
                        *e = add(*e, mul(a, other.data[k * n + j]));
                    }
                    if b != 0 {
                        *e = add(*e, neg(mul(b, self.data[k * n + j])));
                    }
                }
            }
        }
        ModMatrix { n, data }
    }
}

/// Reduced row echelon form over `Z/P`, grown one dense vector at a time.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    len: usize,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<Option<usize>>,
}

impl ModEchelon {
    pub fn new(len: usize) -> Self {
        Self { len, rows: Vec::new(), pivot_row: vec![None; len] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the rows so far.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.len, "vector length");
        let mut v = v.to_vec();
        for i in 0..self.len {
            if v[i] == 0 {
                continue;
            }
            if let Some(r) = self.pivot_row[i] {
                let c = neg(v[i]);
                for (x, y) in v.iter_mut().zip(&self.rows[r]) {
                    if *y != 0 {
                        *x = add(*x, mul(c, *y));
                    }
                }
            }
        }
        let Some(lead) = v.iter().position(|x| *x != 0) else { return false };
        let s = inv(v[lead]);
        v.iter_mut().for_each(|x| *x = mul(*x, s));
        for row in &mut self.rows {
            let c = row[lead];
            if c != 0 {
                let c = neg(c);
                for (x, y) in row.iter_mut().zip(&v) {
                    if *y != 0 {
                        *x = add(*x, mul(c, *y));
                    }
                }
            }
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(v);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{frac, int};

    #[test]
    fn reduction_is_a_homomorphism() {
        let (a, b) = (frac(3, 7), frac(-5, 11));
        let (ra, rb) = (reduce(&a).unwrap(), reduce(&b).unwrap());
        assert_eq!(reduce(&(&a * &b)).unwrap(), mul(ra, rb));
        assert_eq!(reduce(&(&a + &b)).unwrap(), add(ra, rb));
        assert_eq!(reduce(&int(-1)).unwrap(), P - 1);
        assert!(reduce(&Scalar::new(1.into(), BigInt::from(P))).is_none());
    }

    #[test]
    fn echelon_rank() {
        let mut e = ModEchelon::new(3);
        assert!(e.insert(&[1, 2, 3]));
        assert!(e.insert(&[0, 1, 1]));
        assert!(!e.insert(&[2, 5, 7]));
        assert!(!e.insert(&[0, 0, 0]));
        assert_eq!(e.rank(), 2);
    }
}
