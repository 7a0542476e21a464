//! Lattice point enumeration in dilates `nP` by coordinate-wise scanning.
//!
//! For each prefix length `k`, the projection of `P` onto the first `k`
//! coordinates is itself a polytope whose facets give the exact real
//! interval of coordinate `k` over a fixed prefix. Scanning therefore never
//! enters a prefix that has no real continuation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::polytope::HalfSpace;
use crate::scalar::{div_ceil, div_floor};
use crate::LatticePoint;

/// Per-level constraints: the facets of the projection onto the first
/// `level + 1` coordinates that involve coordinate `level`.
#[derive(Debug, Clone)]
pub(crate) struct Scanner {
    levels: Vec<Vec<HalfSpace>>,
}

impl Scanner {
    pub(crate) fn new(projections: &[Vec<HalfSpace>]) -> Self {
        let levels = projections
            .iter()
            .enumerate()
            .map(|(k, fs)| {
                fs.iter()
                    .filter(|h| !h.normal()[k].is_zero())
                    .cloned()
                    .collect()
            })
            .collect();
        Scanner { levels }
    }

    fn dim(&self) -> usize {
        self.levels.len()
    }

    /// Integer range of coordinate `k` given `prefix` (length `k`) in `nP`.
    fn range(&self, k: usize, prefix: &[BigInt], n: &BigInt) -> Option<(BigInt, BigInt)> {
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for h in &self.levels[k] {
            let a = h.normal().coords();
            let mut rhs = n * h.offset();
            for (ai, xi) in a[..k].iter().zip(prefix) {
                if !ai.is_zero() {
                    rhs -= ai * xi;
                }
            }
            let ak = &a[k];
            if ak.is_positive() {
                let b = div_floor(&rhs, ak);
                if hi.as_ref().is_none_or(|h| &b < h) {
                    hi = Some(b);
                }
            } else {
                let b = div_ceil(&rhs, ak);
                if lo.as_ref().is_none_or(|l| &b > l) {
                    lo = Some(b);
                }
            }
        }
        let (lo, hi) = (lo.expect("bounded below"), hi.expect("bounded above"));
        (lo <= hi).then_some((lo, hi))
    }

    /// `|nP ∩ ℤ^d|`.
    pub(crate) fn count(&self, n: u64) -> BigInt {
        let n = BigInt::from(n);
        let mut prefix = Vec::with_capacity(self.dim());
        self.count_rec(&mut prefix, &n)
    }

    fn count_rec(&self, prefix: &mut Vec<BigInt>, n: &BigInt) -> BigInt {
        let k = prefix.len();
        let Some((lo, hi)) = self.range(k, prefix, n) else {
            return BigInt::zero();
        };
        if k + 1 == self.dim() {
            return hi - lo + BigInt::one();
        }
        let mut total = BigInt::zero();
        let mut t = lo;
        while t <= hi {
            prefix.push(t.clone());
            total += self.count_rec(prefix, n);
            prefix.pop();
            t += 1;
        }
        total
    }

    /// Every lattice point of `nP`, in lexicographic order.
    pub(crate) fn points(&self, n: u64) -> Vec<LatticePoint> {
        let n = BigInt::from(n);
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.dim());
        self.points_rec(&mut prefix, &n, &mut out);
        out
    }

    fn points_rec(&self, prefix: &mut Vec<BigInt>, n: &BigInt, out: &mut Vec<LatticePoint>) {
        let k = prefix.len();
        let Some((lo, hi)) = self.range(k, prefix, n) else {
            return;
        };
        let mut t = lo;
        while t <= hi {
            prefix.push(t.clone());
            if k + 1 == self.dim() {
                out.push(LatticePoint::new(prefix.clone()));
            } else {
                self.points_rec(prefix, n, out);
            }
            prefix.pop();
            t += 1;
        }
    }
}
