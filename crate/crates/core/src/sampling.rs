//! Fixed-seed linear congruential stream used wherever a reproducible
//! sample of small integer vectors is needed.

use crate::linalg::scalar::int;
use crate::linalg::SparseVec;

#[derive(Clone, Debug)]
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    /// Uniform in `-r..=r`.
    pub fn small(&mut self, r: i64) -> i64 {
        (self.next_u64() % (2 * r as u64 + 1)) as i64 - r
    }

    /// A vector of length `n` with entries in `-r..=r`.
    pub fn vector(&mut self, n: usize, r: i64) -> SparseVec {
        SparseVec::from_pairs((0..n).map(|i| (i, int(self.small(r)))).collect())
    }
}
