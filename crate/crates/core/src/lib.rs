//! Covering-array codebooks for downlink massive random access.
//!
//! A base station wants to reach `k` active users out of `n`, each with a
//! message from `{0..q-1}`, without naming who is active. Every user knows a
//! shared list of length-`n` rows. The station sends the index of the first
//! row that carries each active user's message in that user's column; each
//! active user decodes the index and reads its own column.
//!
//! If the rows form a covering array, every pattern has such a row. Building
//! the array greedily makes the uncovered count shrink geometrically, so the
//! index distribution is skewed toward small indices and an entropy code on
//! the index costs less than `k log2 q + 1 + log2 e` bits on average, no
//! matter how large `n` is.
//!
//! ```
//! use dmra::{build_density, overhead, CodeKind, Params};
//!
//! let params = Params::new(30, 2, 2)?;
//! let report = build_density(&params)?;
//! let stats = overhead(&report.array)?;
//! assert!(stats.length(CodeKind::Huffman).bits < stats.theorem_bound_bits);
//! # Ok::<(), dmra::Error>(())
//! ```

pub mod analysis;
pub mod array;
pub mod builder;
pub mod codec;
pub mod combinatorics;
pub mod coverage;
mod error;
pub mod params;
pub mod pattern;

pub use analysis::{
    entropy, expected_index, geometric_entropy, index_distribution, overhead, theorem_bound,
    IndexDistribution, OverheadReport,
};
pub use array::{Construction, CoveringArray};
pub use builder::{
    build, build_density, build_greedy, row_count_lower_bound, row_count_upper_bound, verify,
    Algorithm, BuildReport,
};
pub use codec::{
    bitwise_scheme, decode_message, encode_index, fixed_length_code, huffman_code, shannon_code,
    BitPlaneCodec, BitString, CodeKind, Codebook, PrefixCode,
};
pub use coverage::CoverageTracker;
pub use error::{Error, Result};
pub use params::{total_patterns, Params};
pub use pattern::{covers, pattern_rank, pattern_unrank, Pattern, Row};

// The guide's code listings run as doctests.
#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/patterns.md")]
    mod patterns {}
    #[doc = include_str!("../../../book/src/coverage.md")]
    mod coverage {}
    #[doc = include_str!("../../../book/src/construction.md")]
    mod construction {}
    #[doc = include_str!("../../../book/src/coding.md")]
    mod coding {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/bit-planes.md")]
    mod bit_planes {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
