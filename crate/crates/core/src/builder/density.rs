//! Density row construction.
//!
//! Columns are fixed left to right. Before column `j` is fixed, the expected
//! number of newly covered patterns (undecided columns uniform over `Q`) is
//! `sum over uncovered (S, w) consistent with the fixed prefix of
//! q^-(undecided columns of S)`. Only sets containing `j` distinguish the
//! candidate symbols, so those are the only ones scored. Scores are kept as
//! integers scaled by `q^k`, which makes ties exact.

use crate::combinatorics::{colex_rank, ColexSubsets};
use crate::coverage::CoverageTracker;
use crate::pattern::Row;

pub(super) fn next_row(tracker: &CoverageTracker) -> Row {
    let params = tracker.params();
    let (n, k) = (params.n(), params.k());
    let q = u64::from(params.q());
    let per_set = params.message_combinations();
    let mut row = vec![0u32; n];
    let mut scores = vec![0u128; q as usize];
    let mut set = vec![0usize; k];

    for j in 0..n {
        scores.iter_mut().for_each(|s| *s = 0);
        // The other k-1 members of S, drawn from the n-1 columns besides j.
        let mut others = ColexSubsets::new(n - 1, k - 1);
        while let Some(rest) = others.current() {
            let pos = rest.iter().filter(|&&c| c < j).count();
            // Merge: rest below j, then j, then rest above j (shifted by one).
            for (i, &c) in rest.iter().enumerate() {
                if i < pos {
                    set[i] = c;
                } else {
                    set[i + 1] = c + 1;
                }
            }
            set[pos] = j;
            let after = k - 1 - pos;
            let free = q.pow(after as u32);
            let weight = u128::from(q.pow((k - after) as u32));
            let prefix = set[..pos]
                .iter()
                .fold(0u64, |acc, &c| acc * q + u64::from(row[c]));
            let base = colex_rank(&set) * per_set;
            for (symbol, score) in scores.iter_mut().enumerate() {
                let head = (prefix * q + symbol as u64) * free;
                *score += u128::from(tracker.count_uncovered(base + head, free)) * weight;
            }
            others.advance();
        }
        let mut best = 0;
        for (symbol, &score) in scores.iter().enumerate() {
            if score > scores[best] {
                best = symbol;
            }
        }
        row[j] = best as u32;
    }
    Row::from_symbols_unchecked(row)
}
