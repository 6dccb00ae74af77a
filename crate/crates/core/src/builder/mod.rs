//! Covering-array construction and row-count bounds.
//!
//! Both builders add one row at a time to a [`CoverageTracker`] until no
//! pattern is left uncovered. Every row they add covers at least
//! `ceil(U_m / q^k)` new patterns, so the uncovered count obeys
//! `U_{m+1} <= U_m (1 - q^-k)` and the number of rows stays within
//! [`row_count_upper_bound`].

mod density;
mod greedy;

use crate::array::{Construction, CoveringArray};
use crate::coverage::{CoverageTracker, DEFAULT_MEMORY_BUDGET};
use crate::error::{Error, Result};
use crate::params::Params;
use crate::pattern::Pattern;

pub use greedy::GREEDY_CANDIDATE_LIMIT;

/// Which row-selection rule to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Exhaustive argmax of `n(v)` over all of `Q^n`.
    Greedy,
    /// Column-by-column choice maximizing expected new coverage.
    Density,
}

impl Algorithm {
    pub fn construction(self) -> Construction {
        match self {
            Algorithm::Greedy => Construction::Greedy,
            Algorithm::Density => Construction::Density,
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "greedy" => Ok(Algorithm::Greedy),
            "density" => Ok(Algorithm::Density),
            other => Err(format!("unknown algorithm {other:?}")),
        }
    }
}

/// A finished build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildReport {
    pub array: CoveringArray,
    /// `U_{m-1} - U_m` for `m = 1..=M`.
    pub per_row_gain: Vec<u64>,
    pub algorithm: Algorithm,
}

impl BuildReport {
    pub fn decay(&self) -> &[u64] {
        self.array.decay()
    }

    pub fn rows(&self) -> usize {
        self.array.len()
    }
}

pub fn build(params: &Params, algorithm: Algorithm) -> Result<BuildReport> {
    build_with_budget(params, algorithm, DEFAULT_MEMORY_BUDGET)
}

/// [`build`] with an explicit cap on the pattern table size.
pub fn build_with_budget(
    params: &Params,
    algorithm: Algorithm,
    budget: u64,
) -> Result<BuildReport> {
    if algorithm == Algorithm::Greedy {
        greedy::check_gate(params)?;
    }
    let mut tracker = CoverageTracker::with_budget(*params, budget)?;
    let mut rows = Vec::new();
    let mut decay = vec![tracker.remaining()];
    let mut gains = Vec::new();
    let mut greedy_state = match algorithm {
        Algorithm::Greedy => Some(greedy::GreedySearch::new(params)),
        Algorithm::Density => None,
    };
    while tracker.remaining() > 0 {
        let (row, expected) = match greedy_state.as_mut() {
            Some(search) => {
                let (row, gain) = search.next_row(&tracker);
                (row, Some(gain))
            }
            None => (density::next_row(&tracker), None),
        };
        let before = tracker.remaining();
        let gain = tracker.add_row(&row)?;
        if let Some(expected) = expected {
            debug_assert_eq!(gain, expected);
        }
        // A row covering at least the average can never come up empty.
        assert!(
            gain * params.message_combinations() >= before,
            "row gain {gain} below the average of {before} / q^k"
        );
        rows.push(row);
        gains.push(gain);
        decay.push(tracker.remaining());
    }
    Ok(BuildReport {
        array: CoveringArray::from_parts(*params, rows, decay, algorithm.construction()),
        per_row_gain: gains,
        algorithm,
    })
}

pub fn build_greedy(params: &Params) -> Result<BuildReport> {
    build(params, Algorithm::Greedy)
}

pub fn build_density(params: &Params) -> Result<BuildReport> {
    build(params, Algorithm::Density)
}

/// Replays the rows into a fresh tracker. Returns `None` if the array
/// covers everything, else the lowest-ranked uncovered pattern.
pub fn verify(array: &CoveringArray) -> Result<Option<Pattern>> {
    let mut tracker = CoverageTracker::new(*array.params())?;
    for row in array.rows() {
        tracker.add_row(row)?;
    }
    Ok(tracker.uncovered_example())
}

/// `ceil((log2 C(n,k) + k log2 q) / log2(1 / (1 - q^-k)))`.
pub fn row_count_upper_bound(params: &Params) -> u64 {
    let numerator = (params.active_sets() as f64).log2() + params.payload_bits();
    let per_row = -(1.0 - (params.message_combinations() as f64).recip()).log2();
    (numerator / per_row).ceil() as u64
}

/// Smallest `M` with `q^M > n`. Only meaningful for `k >= 2`, where a
/// covering array cannot have two identical columns.
pub fn row_count_lower_bound(params: &Params) -> Result<u64> {
    if params.k() < 2 {
        return Err(Error::LowerBoundNotApplicable);
    }
    let (q, n) = (u128::from(params.q()), params.n() as u128);
    let mut m = 0;
    let mut power = 1u128;
    while power <= n {
        power *= q;
        m += 1;
    }
    Ok(m)
}
