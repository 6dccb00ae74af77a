//! Source patterns, codebook rows, and the dense pattern ranking.
//!
//! User positions are 1-based at the public boundary (`Pattern::new`,
//! `Pattern::users`) and 0-based columns internally. Inactive users carry no
//! symbol at all; a pattern only stores the messages of its active users.

use std::fmt;

use crate::combinatorics::{colex_rank, colex_unrank};
use crate::error::{Error, Result};
use crate::params::Params;

/// One realization of (active set, messages).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    columns: Vec<usize>,
    messages: Vec<u32>,
}

impl Pattern {
    /// Builds a pattern from 1-based user positions and their messages.
    pub fn new(params: &Params, users: &[usize], messages: &[u32]) -> Result<Self> {
        if users.contains(&0) {
            return Err(Error::InvalidPattern("user positions are 1-based".into()));
        }
        let columns: Vec<usize> = users.iter().map(|u| u - 1).collect();
        Self::from_columns(params, columns, messages.to_vec())
    }

    /// Builds a pattern from 0-based columns.
    pub fn from_columns(params: &Params, columns: Vec<usize>, messages: Vec<u32>) -> Result<Self> {
        if columns.len() != params.k() {
            return Err(Error::InvalidPattern(format!(
                "expected {} active users, got {}",
                params.k(),
                columns.len()
            )));
        }
        if messages.len() != columns.len() {
            return Err(Error::InvalidPattern(format!(
                "{} active users but {} messages",
                columns.len(),
                messages.len()
            )));
        }
        if columns.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPattern(
                "active users must be distinct and increasing".into(),
            ));
        }
        if let Some(&c) = columns.last() {
            if c >= params.n() {
                return Err(Error::InvalidPattern(format!(
                    "user {} exceeds n = {}",
                    c + 1,
                    params.n()
                )));
            }
        }
        if let Some(&w) = messages.iter().find(|&&w| w >= params.q()) {
            return Err(Error::InvalidPattern(format!(
                "message {w} is not below q = {}",
                params.q()
            )));
        }
        Ok(Self { columns, messages })
    }

    /// 0-based column indices of the active users, increasing.
    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    /// 1-based active user positions, increasing.
    pub fn users(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c + 1).collect()
    }

    pub fn messages(&self) -> &[u32] {
        &self.messages
    }

    /// The message intended for 1-based `user`, or `None` if inactive.
    pub fn message_for(&self, user: usize) -> Option<u32> {
        let column = user.checked_sub(1)?;
        self.columns
            .binary_search(&column)
            .ok()
            .map(|i| self.messages[i])
    }

    /// X-notation over `n` positions, e.g. `1X0X`. Symbols above 9 are
    /// written in brackets.
    pub fn notation(&self, n: usize) -> String {
        let mut out = String::with_capacity(n);
        let mut next = self.columns.iter().zip(&self.messages).peekable();
        for col in 0..n {
            match next.peek() {
                Some((&c, &w)) if c == col => {
                    if w < 10 {
                        out.push(char::from_digit(w, 10).unwrap());
                    } else {
                        out.push_str(&format!("[{w}]"));
                    }
                    next.next();
                }
                _ => out.push('X'),
            }
        }
        out
    }
}

/// A length-n codebook row over `{0..q-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row(Vec<u32>);

impl Row {
    pub fn new(params: &Params, symbols: Vec<u32>) -> Result<Self> {
        if symbols.len() != params.n() {
            return Err(Error::DimensionMismatch {
                row: symbols.len(),
                n: params.n(),
            });
        }
        if let Some(&s) = symbols.iter().find(|&&s| s >= params.q()) {
            return Err(Error::InvalidRow(format!(
                "symbol {s} is not below q = {}",
                params.q()
            )));
        }
        Ok(Self(symbols))
    }

    pub(crate) fn from_symbols_unchecked(symbols: Vec<u32>) -> Self {
        Self(symbols)
    }

    /// The `index`-th row of `Q^n` in lexicographic order (position 1 is the
    /// most significant digit).
    pub fn from_lex_index(params: &Params, mut index: u64) -> Self {
        let q = u64::from(params.q());
        let mut symbols = vec![0u32; params.n()];
        for slot in symbols.iter_mut().rev() {
            *slot = (index % q) as u32;
            index /= q;
        }
        Self(symbols)
    }

    /// Position of this row in lexicographic order, if it fits in a `u64`.
    pub fn lex_index(&self, q: u32) -> Option<u64> {
        self.0.iter().try_fold(0u64, |acc, &s| {
            acc.checked_mul(u64::from(q))?.checked_add(u64::from(s))
        })
    }

    pub fn symbols(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True iff this row carries the pattern's message at every active
    /// position.
    pub fn covers(&self, pattern: &Pattern) -> Result<bool> {
        covers(self, pattern)
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

/// True iff `row` matches `pattern` at every active position.
pub fn covers(row: &Row, pattern: &Pattern) -> Result<bool> {
    if let Some(&c) = pattern.columns.last() {
        if c >= row.len() {
            return Err(Error::DimensionMismatch {
                row: row.len(),
                n: c + 1,
            });
        }
    }
    Ok(pattern
        .columns
        .iter()
        .zip(&pattern.messages)
        .all(|(&c, &w)| row.0[c] == w))
}

/// Big-endian base-q value of a message vector.
pub(crate) fn message_value(messages: impl IntoIterator<Item = u32>, q: u64) -> u64 {
    messages
        .into_iter()
        .fold(0u64, |acc, w| acc * q + u64::from(w))
}

/// Dense rank in `[0, U0)`: `colex(active) * q^k + base_q(messages)`.
pub fn pattern_rank(pattern: &Pattern, params: &Params) -> u64 {
    colex_rank(&pattern.columns) * params.message_combinations()
        + message_value(pattern.messages.iter().copied(), u64::from(params.q()))
}

/// Inverse of [`pattern_rank`].
pub fn pattern_unrank(rank: u64, params: &Params) -> Result<Pattern> {
    let total = params.total_patterns();
    if rank >= total {
        return Err(Error::RankOutOfRange { rank, total });
    }
    let per_set = params.message_combinations();
    let columns = colex_unrank(rank / per_set, params.n(), params.k());
    let q = u64::from(params.q());
    let mut value = rank % per_set;
    let mut messages = vec![0u32; params.k()];
    for slot in messages.iter_mut().rev() {
        *slot = (value % q) as u32;
        value /= q;
    }
    Ok(Pattern { columns, messages })
}
