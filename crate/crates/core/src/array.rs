use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::coverage::{CoverageTracker, DEFAULT_MEMORY_BUDGET};
use crate::error::{Error, Result};
use crate::params::Params;
use crate::pattern::Row;

/// How an array's rows were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    Greedy,
    Density,
    /// Imported verbatim; the decay is recomputed from the row order.
    External,
}

impl Construction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Construction::Greedy => "greedy",
            Construction::Density => "density",
            Construction::External => "external",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Construction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.strip_prefix("algo=").unwrap_or(s) {
            "greedy" => Ok(Construction::Greedy),
            "density" => Ok(Construction::Density),
            "external" => Ok(Construction::External),
            other => Err(format!("unknown construction {other:?}")),
        }
    }
}

/// An ordered list of rows together with its uncovered-count decay
/// `U_0, U_1, ..., U_M`.
///
/// Row order matters: the encoder picks the first covering row, so the decay
/// (and the index distribution derived from it) is a property of the
/// sequence, not of the row set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringArray {
    params: Params,
    rows: Vec<Row>,
    decay: Vec<u64>,
    construction: Construction,
}

impl CoveringArray {
    /// Replays `rows` in order to compute the decay. Rows must be distinct;
    /// the array need not be complete.
    pub fn from_rows(params: Params, rows: Vec<Row>, construction: Construction) -> Result<Self> {
        Self::from_rows_with_budget(params, rows, construction, DEFAULT_MEMORY_BUDGET)
    }

    pub fn from_rows_with_budget(
        params: Params,
        rows: Vec<Row>,
        construction: Construction,
        budget: u64,
    ) -> Result<Self> {
        let mut seen = HashSet::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != params.n() {
                return Err(Error::DimensionMismatch {
                    row: row.len(),
                    n: params.n(),
                });
            }
            Row::new(&params, row.symbols().to_vec())?;
            if !seen.insert(row) {
                return Err(Error::DuplicateRow(i + 1));
            }
        }
        let mut tracker = CoverageTracker::with_budget(params, budget)?;
        let mut decay = Vec::with_capacity(rows.len() + 1);
        decay.push(tracker.remaining());
        for row in &rows {
            tracker.add_row(row)?;
            decay.push(tracker.remaining());
        }
        Ok(Self {
            params,
            rows,
            decay,
            construction,
        })
    }

    pub(crate) fn from_parts(
        params: Params,
        rows: Vec<Row>,
        decay: Vec<u64>,
        construction: Construction,
    ) -> Self {
        debug_assert_eq!(decay.len(), rows.len() + 1);
        Self {
            params,
            rows,
            decay,
            construction,
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Row `m`, 1-based.
    pub fn row(&self, m: usize) -> Option<&Row> {
        m.checked_sub(1).and_then(|i| self.rows.get(i))
    }

    /// `M`, the number of rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn decay(&self) -> &[u64] {
        &self.decay
    }

    /// Newly covered count of each row, `U_{m-1} - U_m`.
    pub fn gains(&self) -> Vec<u64> {
        self.decay.windows(2).map(|w| w[0] - w[1]).collect()
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    /// Every pattern is covered.
    pub fn is_complete(&self) -> bool {
        self.decay.last() == Some(&0)
    }

    /// True if two columns carry the same symbol in every row. A complete
    /// array with `k >= 2` never has this.
    pub fn has_identical_columns(&self) -> bool {
        let n = self.params.n();
        let columns: HashSet<Vec<u32>> = (0..n)
            .map(|c| self.rows.iter().map(|r| r.symbols()[c]).collect())
            .collect();
        columns.len() < n
    }
}
