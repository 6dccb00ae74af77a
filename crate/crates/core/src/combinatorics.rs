//! Binomials, powers and colexicographic ranking of k-subsets.
//!
//! A k-subset `s_0 < s_1 < ... < s_{k-1}` of `{0..n-1}` has colex rank
//! `sum_i C(s_i, i + 1)`. Colex rank does not depend on `n`, which lets the
//! subset enumerator below hand out consecutive ranks without recomputing
//! any binomials.

/// `C(n, k)`, or `None` if it does not fit in a `u64`.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc = C(n, i) here, and C(n, i) is increasing for i <= n/2.
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let exp = u32::try_from(exp).ok()?;
    base.checked_pow(exp)
}

/// Colex rank of a strictly increasing subset.
///
/// Only valid for subsets whose rank fits in a `u64`, which holds for every
/// subset of a validated `Params`.
pub fn colex_rank(subset: &[usize]) -> u64 {
    subset
        .iter()
        .enumerate()
        .map(|(i, &s)| binomial(s as u64, i as u64 + 1).expect("rank bounded by C(n,k)"))
        .sum()
}

/// Inverse of [`colex_rank`] for k-subsets of `{0..n-1}`.
pub fn colex_unrank(mut rank: u64, n: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0usize; k];
    let mut upper = n as u64; // exclusive bound on the next element
    for i in (1..=k).rev() {
        // largest c < upper with C(c, i) <= rank
        let (mut lo, mut hi) = (i as u64 - 1, upper - 1);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            match binomial(mid, i as u64) {
                Some(c) if c <= rank => lo = mid,
                _ => hi = mid - 1,
            }
        }
        out[i - 1] = lo as usize;
        rank -= binomial(lo, i as u64).expect("bounded");
        upper = lo;
    }
    out
}

/// Enumerates the k-subsets of `{0..n-1}` in colex order, so the i-th
/// subset visited has colex rank i.
#[derive(Debug, Clone)]
pub struct ColexSubsets {
    n: usize,
    current: Vec<usize>,
    exhausted: bool,
}

impl ColexSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (0..k).collect(),
            exhausted: k > n,
        }
    }

    /// The subset under the cursor, or `None` once every subset was visited.
    pub fn current(&self) -> Option<&[usize]> {
        (!self.exhausted).then_some(self.current.as_slice())
    }

    /// Moves to the colex successor.
    pub fn advance(&mut self) {
        if self.exhausted {
            return;
        }
        let k = self.current.len();
        for j in 0..k {
            let next_limit = if j + 1 < k {
                self.current[j + 1]
            } else {
                self.n
            };
            if self.current[j] + 1 < next_limit {
                self.current[j] += 1;
                for (i, slot) in self.current[..j].iter_mut().enumerate() {
                    *slot = i;
                }
                return;
            }
        }
        self.exhausted = true;
    }
}
