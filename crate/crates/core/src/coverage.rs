//! Uncovered-pattern bookkeeping during covering-array construction.

use crate::combinatorics::ColexSubsets;
use crate::error::{Error, Result};
use crate::params::Params;
use crate::pattern::{pattern_unrank, Pattern, Row};

/// Default cap on the dense pattern table: 2^31 patterns (256 MiB of flags).
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 31;

/// One flag per pattern rank, set while the pattern is still uncovered.
#[derive(Debug, Clone)]
pub struct CoverageTracker {
    params: Params,
    uncovered: Vec<u64>,
    remaining: u64,
}

impl CoverageTracker {
    pub fn new(params: Params) -> Result<Self> {
        Self::with_budget(params, DEFAULT_MEMORY_BUDGET)
    }

    /// Like [`CoverageTracker::new`] but with an explicit cap on `U0`.
    pub fn with_budget(params: Params, budget: u64) -> Result<Self> {
        let total = params.total_patterns();
        if total > budget || usize::try_from(total).is_err() {
            return Err(Error::MemoryBudgetExceeded {
                patterns: total,
                budget,
            });
        }
        let words = (total as usize).div_ceil(64);
        let mut uncovered = vec![u64::MAX; words];
        let tail = (total % 64) as u32;
        if tail != 0 {
            *uncovered.last_mut().unwrap() = (1u64 << tail) - 1;
        }
        Ok(Self {
            params,
            uncovered,
            remaining: total,
        })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Current number of uncovered patterns, `U_m`.
    pub fn remaining(&self) -> u64 {
        self.remaining
    }

    pub fn is_uncovered(&self, rank: u64) -> bool {
        let rank = rank as usize;
        self.uncovered[rank / 64] >> (rank % 64) & 1 == 1
    }

    /// Uncovered patterns among ranks `start..start + len`.
    pub(crate) fn count_uncovered(&self, start: u64, len: u64) -> u64 {
        let (start, end) = (start as usize, (start + len) as usize);
        if start >= end {
            return 0;
        }
        let (first, last) = (start / 64, (end - 1) / 64);
        let low = u64::MAX << (start % 64);
        let high = u64::MAX >> (63 - (end - 1) % 64);
        if first == last {
            return u64::from((self.uncovered[first] & low & high).count_ones());
        }
        let middle: u32 = self.uncovered[first + 1..last]
            .iter()
            .map(|w| w.count_ones())
            .sum();
        u64::from((self.uncovered[first] & low).count_ones())
            + u64::from(middle)
            + u64::from((self.uncovered[last] & high).count_ones())
    }

    fn clear(&mut self, rank: u64) -> bool {
        let rank = rank as usize;
        let (word, bit) = (rank / 64, rank % 64);
        let was_set = self.uncovered[word] >> bit & 1 == 1;
        self.uncovered[word] &= !(1u64 << bit);
        was_set
    }

    fn check_row(&self, row: &Row) -> Result<()> {
        if row.len() != self.params.n() {
            return Err(Error::DimensionMismatch {
                row: row.len(),
                n: self.params.n(),
            });
        }
        Ok(())
    }

    /// Calls `f` with the rank of each of the `C(n,k)` patterns `row` covers.
    pub(crate) fn for_each_induced_rank(&self, row: &Row, mut f: impl FnMut(u64)) {
        let q = u64::from(self.params.q());
        let per_set = self.params.message_combinations();
        let symbols = row.symbols();
        let mut subsets = ColexSubsets::new(self.params.n(), self.params.k());
        let mut set_rank = 0u64;
        while let Some(cols) = subsets.current() {
            let msg = cols
                .iter()
                .fold(0u64, |acc, &c| acc * q + u64::from(symbols[c]));
            f(set_rank * per_set + msg);
            set_rank += 1;
            subsets.advance();
        }
    }

    /// `n(v)`: how many still-uncovered patterns `row` would cover.
    pub fn newly_covered(&self, row: &Row) -> Result<u64> {
        self.check_row(row)?;
        if self.remaining == 0 {
            return Ok(0);
        }
        let mut count = 0;
        self.for_each_induced_rank(row, |rank| {
            if self.is_uncovered(rank) {
                count += 1;
            }
        });
        Ok(count)
    }

    /// Marks every pattern covered by `row`; returns how many were new.
    pub fn add_row(&mut self, row: &Row) -> Result<u64> {
        self.check_row(row)?;
        let mut ranks = Vec::new();
        self.for_each_induced_rank(row, |rank| ranks.push(rank));
        let cleared = ranks.into_iter().filter(|&r| self.clear(r)).count() as u64;
        self.remaining -= cleared;
        Ok(cleared)
    }

    /// Lowest-ranked uncovered pattern.
    pub fn first_uncovered_rank(&self) -> Option<u64> {
        self.uncovered
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i as u64 * 64 + u64::from(w.trailing_zeros()))
    }

    /// The lowest-ranked uncovered pattern, as a witness.
    pub fn uncovered_example(&self) -> Option<Pattern> {
        self.first_uncovered_rank()
            .map(|r| pattern_unrank(r, &self.params).expect("rank below U0"))
    }
}
