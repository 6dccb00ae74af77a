//! Canonical binary prefix codes over row indices `1..=M`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::analysis::IndexDistribution;
use crate::error::{Error, Result};

/// Longest codeword the canonical assignment can represent.
pub const MAX_CODEWORD_LEN: u32 = 127;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeKind {
    Shannon,
    Huffman,
    Fixed,
}

impl CodeKind {
    pub const ALL: [CodeKind; 3] = [CodeKind::Huffman, CodeKind::Shannon, CodeKind::Fixed];

    pub fn as_str(&self) -> &'static str {
        match self {
            CodeKind::Shannon => "shannon",
            CodeKind::Huffman => "huffman",
            CodeKind::Fixed => "fixed",
        }
    }
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CodeKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "shannon" => Ok(CodeKind::Shannon),
            "huffman" => Ok(CodeKind::Huffman),
            "fixed" => Ok(CodeKind::Fixed),
            other => Err(format!("unknown code {other:?}")),
        }
    }
}

/// A sequence of bits, most significant first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn push_codeword(&mut self, word: Codeword) {
        for i in (0..word.len).rev() {
            self.0.push(word.bits >> i & 1 == 1);
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidCodeword(format!(
                    "unexpected character {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }
}

impl From<Codeword> for BitString {
    fn from(word: Codeword) -> Self {
        let mut out = BitString::new();
        out.push_codeword(word);
        out
    }
}

/// A codeword: the low `len` bits of `bits`, most significant first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Codeword {
    pub bits: u128,
    pub len: u32,
}

impl Codeword {
    /// True if `self` is a prefix of `other` (or equal to it).
    pub fn is_prefix_of(&self, other: &Codeword) -> bool {
        self.len <= other.len && other.bits >> (other.len - self.len) == self.bits
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        BitString::from(*self).fmt(f)
    }
}

/// A canonical prefix code: codewords are handed out in `(length, index)`
/// order, each one the previous plus one, shifted left to the new length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCode {
    kind: CodeKind,
    lengths: Vec<u32>,
    codewords: Vec<Codeword>,
    lookup: HashMap<Codeword, usize>,
    max_len: u32,
}

impl PrefixCode {
    pub fn from_lengths(kind: CodeKind, lengths: Vec<u32>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        if let Some(&bad) = lengths.iter().find(|&&l| l == 0 || l > MAX_CODEWORD_LEN) {
            return Err(Error::CodewordTooLong(bad));
        }
        if !kraft_holds(&lengths) {
            return Err(Error::KraftViolation);
        }
        let mut order: Vec<usize> = (0..lengths.len()).collect();
        order.sort_by_key(|&i| (lengths[i], i));
        let mut codewords = vec![Codeword { bits: 0, len: 0 }; lengths.len()];
        let mut next = 0u128;
        let mut prev_len = lengths[order[0]];
        for (pos, &i) in order.iter().enumerate() {
            let len = lengths[i];
            if pos > 0 {
                next = (next + 1) << (len - prev_len);
            }
            codewords[i] = Codeword { bits: next, len };
            prev_len = len;
        }
        let lookup = codewords
            .iter()
            .enumerate()
            .map(|(i, &w)| (w, i + 1))
            .collect();
        Ok(Self {
            kind,
            max_len: lengths[order[order.len() - 1]],
            lengths,
            codewords,
            lookup,
        })
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    /// Number of codewords, `M`.
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn codewords(&self) -> &[Codeword] {
        &self.codewords
    }

    /// Codeword of 1-based index `m`.
    pub fn codeword(&self, m: usize) -> Result<Codeword> {
        m.checked_sub(1)
            .and_then(|i| self.codewords.get(i).copied())
            .ok_or(Error::IndexOutOfRange {
                index: m,
                rows: self.len(),
            })
    }

    /// `sum 2^-l(m)` as an exact fraction.
    pub fn kraft_sum(&self) -> Ratio<u128> {
        let max = self.max_len;
        let num: u128 = self.lengths.iter().map(|&l| 1u128 << (max - l)).sum();
        Ratio::new(num, 1u128 << max)
    }

    /// Structural check that no codeword is a prefix of another.
    pub fn is_prefix_free(&self) -> bool {
        let mut sorted = self.codewords.clone();
        sorted.sort_by_key(|w| (w.len, w.bits));
        // A prefix of w would be a shorter word; compare every pair of
        // distinct lengths.
        for (i, a) in sorted.iter().enumerate() {
            for b in &sorted[i + 1..] {
                if a.is_prefix_of(b) {
                    return false;
                }
            }
        }
        true
    }

    /// `sum w(m) l(m) / total` for integer weights.
    pub fn expected_length(&self, weights: &[u128], total: u128) -> Ratio<u128> {
        let num: u128 = weights
            .iter()
            .zip(&self.lengths)
            .map(|(&w, &l)| w * u128::from(l))
            .sum();
        Ratio::new(num, total)
    }

    /// Reads one codeword starting at bit `start`; returns the 1-based index
    /// and the number of bits consumed.
    pub fn decode_prefix(&self, bits: &BitString, start: usize) -> Result<(usize, usize)> {
        let max = self.max_len;
        let mut word = Codeword { bits: 0, len: 0 };
        for &b in bits.bits().iter().skip(start) {
            word.bits = word.bits << 1 | u128::from(b);
            word.len += 1;
            if let Some(&m) = self.lookup.get(&word) {
                return Ok((m, word.len as usize));
            }
            if word.len >= max {
                break;
            }
        }
        Err(Error::InvalidCodeword(format!(
            "no codeword matches the bits from offset {start}"
        )))
    }

    /// Decodes a bit string that must be exactly one codeword.
    pub fn decode(&self, bits: &BitString) -> Result<usize> {
        let (m, used) = self.decode_prefix(bits, 0)?;
        if used != bits.len() {
            return Err(Error::InvalidCodeword(format!(
                "{} trailing bits after the codeword",
                bits.len() - used
            )));
        }
        Ok(m)
    }
}

fn kraft_holds(lengths: &[u32]) -> bool {
    let max = *lengths.iter().max().unwrap();
    let mut sum = 0u128;
    for &l in lengths {
        sum += 1u128 << (max - l);
        if sum > 1u128 << max {
            return false;
        }
    }
    true
}

/// Shannon lengths `ceil(log2(total / w))`, computed without floating
/// point, floored at one bit.
pub(crate) fn shannon_lengths(weights: &[u128], total: u128) -> Result<Vec<u32>> {
    weights
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            if w == 0 {
                return Err(Error::ZeroProbability(i + 1));
            }
            // smallest l with w * 2^l >= total
            let mut l = 0u32;
            while w.checked_shl(l).is_some_and(|v| v >> l == w && v < total) {
                l += 1;
            }
            Ok(l.max(1))
        })
        .collect()
}

/// Huffman code lengths. Merges the two lightest nodes first; equal weights
/// go to the node created earliest (leaves in index order, then merged
/// nodes in creation order). A single symbol gets one bit.
pub(crate) fn huffman_lengths(weights: &[u128]) -> Result<Vec<u32>> {
    if weights.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    if let Some(i) = weights.iter().position(|&w| w == 0) {
        return Err(Error::ZeroProbability(i + 1));
    }
    let m = weights.len();
    if m == 1 {
        return Ok(vec![1]);
    }
    let mut parent = vec![usize::MAX; 2 * m - 1];
    let mut heap: BinaryHeap<Reverse<(u128, usize)>> = weights
        .iter()
        .enumerate()
        .map(|(i, &w)| Reverse((w, i)))
        .collect();
    let mut next_id = m;
    while heap.len() > 1 {
        let Reverse((wa, a)) = heap.pop().unwrap();
        let Reverse((wb, b)) = heap.pop().unwrap();
        parent[a] = next_id;
        parent[b] = next_id;
        heap.push(Reverse((wa + wb, next_id)));
        next_id += 1;
    }
    let root = next_id - 1;
    let mut depth = vec![0u32; 2 * m - 1];
    for id in (0..root).rev() {
        depth[id] = depth[parent[id]] + 1;
    }
    Ok(depth[..m].to_vec())
}

/// `ceil(log2 M)`, at least one bit.
pub(crate) fn fixed_length(m: usize) -> u32 {
    let bits = usize::BITS - m.saturating_sub(1).leading_zeros();
    bits.max(1)
}

/// Shannon code for the index distribution.
pub fn shannon_code(dist: &IndexDistribution) -> Result<PrefixCode> {
    let lengths = shannon_lengths(&dist.weights(), u128::from(dist.total()))?;
    PrefixCode::from_lengths(CodeKind::Shannon, lengths)
}

/// Huffman code for the index distribution.
pub fn huffman_code(dist: &IndexDistribution) -> Result<PrefixCode> {
    let lengths = huffman_lengths(&dist.weights())?;
    PrefixCode::from_lengths(CodeKind::Huffman, lengths)
}

/// Fixed-length code over `M` indices.
pub fn fixed_length_code(m: usize) -> Result<PrefixCode> {
    if m == 0 {
        return Err(Error::EmptyDistribution);
    }
    PrefixCode::from_lengths(CodeKind::Fixed, vec![fixed_length(m); m])
}

/// Builds the code of the requested kind.
pub fn code_for(kind: CodeKind, dist: &IndexDistribution) -> Result<PrefixCode> {
    match kind {
        CodeKind::Shannon => shannon_code(dist),
        CodeKind::Huffman => huffman_code(dist),
        CodeKind::Fixed => fixed_length_code(dist.len()),
    }
}
