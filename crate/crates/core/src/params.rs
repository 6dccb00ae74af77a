use std::fmt;

use crate::combinatorics::{binomial, checked_pow};
use crate::error::{Error, Result};

/// The problem triple: `n` total users, `k` active users, alphabet size `q`.
///
/// Construction fails unless `1 <= k <= n`, `q >= 2` and the pattern count
/// `C(n,k) * q^k` fits in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    n: usize,
    k: usize,
    q: u32,
    subsets: u64,
    messages: u64,
}

impl Params {
    pub fn new(n: usize, k: usize, q: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        if k > n {
            return Err(Error::InvalidParams(format!("k > n ({k} > {n})")));
        }
        if q < 2 {
            return Err(Error::InvalidParams(format!(
                "q must be at least 2, got {q}"
            )));
        }
        let overflow = Error::PatternSpaceOverflow { n, k, q };
        let subsets = binomial(n as u64, k as u64).ok_or_else(|| overflow.clone())?;
        let messages = checked_pow(u64::from(q), k).ok_or_else(|| overflow.clone())?;
        subsets.checked_mul(messages).ok_or(overflow)?;
        Ok(Self {
            n,
            k,
            q,
            subsets,
            messages,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `C(n, k)`: the number of possible active sets.
    pub fn active_sets(&self) -> u64 {
        self.subsets
    }

    /// `q^k`: the number of message combinations per active set.
    pub fn message_combinations(&self) -> u64 {
        self.messages
    }

    /// `U0 = C(n,k) * q^k`.
    pub fn total_patterns(&self) -> u64 {
        self.subsets * self.messages
    }

    /// Net payload `k * log2(q)` in bits.
    pub fn payload_bits(&self) -> f64 {
        self.k as f64 * f64::from(self.q).log2()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, k={}, q={})", self.n, self.k, self.q)
    }
}

/// `C(n,k) * q^k`, the number of (active set, messages) patterns.
pub fn total_patterns(params: &Params) -> u64 {
    params.total_patterns()
}
