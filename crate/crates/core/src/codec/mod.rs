//! The codebook encoder and decoders.
//!
//! The base station sends the codeword of the first row covering the
//! pattern. Each active user decodes that codeword to a row index and reads
//! its own column. Many patterns share an index; that is the point.

mod bitwise;
mod prefix;

use crate::analysis::{index_distribution, IndexDistribution};
use crate::array::CoveringArray;
use crate::coverage::CoverageTracker;
use crate::error::{Error, Result};
use crate::pattern::{pattern_rank, Pattern};

/// Largest `U0` for which a [`Codebook`] keeps a rank-to-index table.
/// Above it, frames are encoded by scanning the rows.
pub const INDEX_TABLE_LIMIT: u64 = 1 << 26;

pub use bitwise::{bitwise_scheme, BitPlaneCodec, JOINT_OUTCOME_LIMIT};
pub use prefix::{
    code_for, fixed_length_code, huffman_code, shannon_code, BitString, CodeKind, Codeword,
    PrefixCode, MAX_CODEWORD_LEN,
};

/// 1-based index of the first row covering `pattern`.
pub fn encode_index(array: &CoveringArray, pattern: &Pattern) -> Result<usize> {
    for (i, row) in array.rows().iter().enumerate() {
        if row.covers(pattern)? {
            return Ok(i + 1);
        }
    }
    Err(Error::NoCoveringRow)
}

/// Symbol at 1-based `position` of row `m`.
pub fn decode_message(array: &CoveringArray, m: usize, position: usize) -> Result<u32> {
    let row = array.row(m).ok_or(Error::IndexOutOfRange {
        index: m,
        rows: array.len(),
    })?;
    let n = array.params().n();
    if position == 0 || position > n {
        return Err(Error::PositionOutOfRange { position, n });
    }
    Ok(row.symbols()[position - 1])
}

/// A complete covering array with its index distribution and index code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    array: CoveringArray,
    code: PrefixCode,
    distribution: IndexDistribution,
    /// First covering row per pattern rank.
    first_row: Option<Vec<u32>>,
}

fn first_row_table(array: &CoveringArray) -> Result<Option<Vec<u32>>> {
    let params = *array.params();
    let total = params.total_patterns();
    if total > INDEX_TABLE_LIMIT || u32::try_from(array.len()).is_err() {
        return Ok(None);
    }
    let tracker = CoverageTracker::with_budget(params, INDEX_TABLE_LIMIT)?;
    let mut table = vec![0u32; total as usize];
    for (i, row) in array.rows().iter().enumerate() {
        tracker.for_each_induced_rank(row, |r| {
            let slot = &mut table[r as usize];
            if *slot == 0 {
                *slot = i as u32 + 1;
            }
        });
    }
    Ok(Some(table))
}

impl Codebook {
    /// For an incomplete array the code is fit to the patterns it covers;
    /// the others fail to encode.
    pub fn new(array: CoveringArray, kind: CodeKind) -> Result<Self> {
        let left = array.decay().last().copied().unwrap_or(0);
        let covered: Vec<u64> = array.decay().iter().map(|u| u - left).collect();
        let distribution = index_distribution(&covered)?;
        let code = code_for(kind, &distribution)?;
        let first_row = first_row_table(&array)?;
        Ok(Self {
            array,
            code,
            distribution,
            first_row,
        })
    }

    pub fn array(&self) -> &CoveringArray {
        &self.array
    }

    pub fn code(&self) -> &PrefixCode {
        &self.code
    }

    pub fn distribution(&self) -> &IndexDistribution {
        &self.distribution
    }

    /// Same result as [`encode_index`], by table lookup when available.
    pub fn index_of(&self, pattern: &Pattern) -> Result<usize> {
        let params = self.array.params();
        match &self.first_row {
            Some(table) => {
                Pattern::from_columns(
                    params,
                    pattern.columns().to_vec(),
                    pattern.messages().to_vec(),
                )?;
                match table[pattern_rank(pattern, params) as usize] {
                    0 => Err(Error::NoCoveringRow),
                    m => Ok(m as usize),
                }
            }
            None => encode_index(&self.array, pattern),
        }
    }

    /// The codeword of the first covering row.
    pub fn encode_frame(&self, pattern: &Pattern) -> Result<BitString> {
        let m = self.index_of(pattern)?;
        Ok(self.code.codeword(m)?.into())
    }

    /// The message for 1-based `position`, assuming that user was active.
    pub fn decode_frame(&self, bits: &BitString, position: usize) -> Result<u32> {
        let m = self.code.decode(bits)?;
        decode_message(&self.array, m, position)
    }
}
