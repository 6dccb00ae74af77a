//! Exhaustive greedy row selection.
//!
//! `n(v)` is a sum of k-local indicator terms, one per uncovered pattern
//! `(S, w)`: `n(v) = sum [v_S = w]`. Writing each factor `[v_i = a]` in the
//! per-coordinate basis `{[x = 0], ..., [x = q-2], 1}` (with
//! `[x = q-1] = 1 - sum_{a < q-1} [x = a]`) turns `n` into a coefficient
//! table over `Q^n`, where digit `q-1` at a coordinate stands for the
//! constant function. Evaluating that expansion at every `v` is a separable
//! transform: for each coordinate, add the constant slot into the other
//! `q-1` slots. That costs `n q^n` additions per step instead of the
//! `q^n C(n,k)` lookups of scanning every candidate.

use crate::combinatorics::ColexSubsets;
use crate::coverage::CoverageTracker;
use crate::error::{Error, Result};
use crate::params::Params;
use crate::pattern::Row;

/// Largest candidate space `q^n` exhaustive greedy accepts.
pub const GREEDY_CANDIDATE_LIMIT: u64 = 1 << 24;

pub(super) fn check_gate(params: &Params) -> Result<()> {
    let candidates = (u128::from(params.q())).checked_pow(params.n() as u32);
    match candidates {
        Some(c) if c <= u128::from(GREEDY_CANDIDATE_LIMIT) => Ok(()),
        c => Err(Error::CandidateSpaceExceeded {
            candidates: c.unwrap_or(u128::MAX),
            limit: GREEDY_CANDIDATE_LIMIT,
        }),
    }
}

pub(super) struct GreedySearch {
    params: Params,
    /// `q^(n-1-i)`: lexicographic weight of column `i`.
    strides: Vec<usize>,
    table: Vec<i64>,
    chosen: Vec<bool>,
}

impl GreedySearch {
    pub(super) fn new(params: &Params) -> Self {
        let q = params.q() as usize;
        let n = params.n();
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * q;
        }
        let size = strides.first().map_or(1, |s| s * q);
        Self {
            params: *params,
            strides,
            table: vec![0; size],
            chosen: vec![false; size],
        }
    }

    /// The lexicographically smallest row maximizing `n(v)`, with its gain.
    pub(super) fn next_row(&mut self, tracker: &CoverageTracker) -> (Row, u64) {
        self.expand(tracker);
        self.transform();
        let mut best: Option<(usize, i64)> = None;
        for (idx, &value) in self.table.iter().enumerate() {
            if self.chosen[idx] {
                continue;
            }
            if best.is_none_or(|(_, b)| value > b) {
                best = Some((idx, value));
            }
        }
        let (idx, gain) = best.expect("candidate space exhausted");
        self.chosen[idx] = true;
        (Row::from_lex_index(&self.params, idx as u64), gain as u64)
    }

    /// Fills the coefficient table from the currently uncovered patterns.
    fn expand(&mut self, tracker: &CoverageTracker) {
        self.table.iter_mut().for_each(|c| *c = 0);
        let q = self.params.q();
        let per_set = self.params.message_combinations();
        let k = self.params.k();
        let base = self.table.len() - 1; // every digit q-1: the constant term
        let mut terms: Vec<(usize, i64)> = Vec::new();
        let mut next_terms: Vec<(usize, i64)> = Vec::new();
        let mut message = vec![0u32; k];
        let mut subsets = ColexSubsets::new(self.params.n(), k);
        let mut set_rank = 0u64;
        while let Some(cols) = subsets.current() {
            for value in 0..per_set {
                if !tracker.is_uncovered(set_rank * per_set + value) {
                    continue;
                }
                let mut v = value;
                for slot in message.iter_mut().rev() {
                    *slot = (v % u64::from(q)) as u32;
                    v /= u64::from(q);
                }
                terms.clear();
                terms.push((base, 1));
                for (&col, &w) in cols.iter().zip(&message) {
                    let stride = self.strides[col];
                    let top = (q - 1) as usize;
                    next_terms.clear();
                    for &(idx, sign) in &terms {
                        if (w as usize) < top {
                            next_terms.push((idx - (top - w as usize) * stride, sign));
                        } else {
                            next_terms.push((idx, sign));
                            for a in 0..top {
                                next_terms.push((idx - (top - a) * stride, -sign));
                            }
                        }
                    }
                    std::mem::swap(&mut terms, &mut next_terms);
                }
                for &(idx, sign) in &terms {
                    self.table[idx] += sign;
                }
            }
            set_rank += 1;
            subsets.advance();
        }
    }

    /// Evaluates the expansion at every row, in place.
    fn transform(&mut self) {
        let q = self.params.q() as usize;
        for &stride in &self.strides {
            let block = stride * q;
            for start in (0..self.table.len()).step_by(block) {
                let (lower, upper) =
                    self.table[start..start + block].split_at_mut((q - 1) * stride);
                for chunk in lower.chunks_exact_mut(stride) {
                    for (dst, src) in chunk.iter_mut().zip(upper.iter()) {
                        *dst += *src;
                    }
                }
            }
        }
    }
}
