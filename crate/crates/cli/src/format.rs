//! Line-oriented text format for covering arrays.
//!
//! ```text
//! DMRA-CA v1
//! 4 2 2 5 greedy
//! 0 0 0 0
//! 1 1 1 0
//! ...
//! decay: 24 18 12 7 3 0
//! ```
//!
//! Line 2 is `n k q M algo`; `algo` is `greedy`, `density` or `external`
//! (`algo=external` is accepted too). The decay line is required except for
//! external arrays, and is always checked against a replay of the rows.
//! Blank lines and lines starting with `#` are ignored.

use dmra::{Construction, CoveringArray, Params, Row};
use thiserror::Error;

pub const MAGIC: &str = "DMRA-CA";
pub const VERSION: &str = "v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// A parsed array file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrayFile {
    pub array: CoveringArray,
}

impl ArrayFile {
    pub fn new(array: CoveringArray) -> Self {
        Self { array }
    }

    pub fn render(&self) -> String {
        let a = &self.array;
        let p = a.params();
        let mut out = format!("{MAGIC} {VERSION}\n");
        out.push_str(&format!(
            "{} {} {} {} {}\n",
            p.n(),
            p.k(),
            p.q(),
            a.len(),
            a.construction()
        ));
        for row in a.rows() {
            out.push_str(&join(row.symbols()));
            out.push('\n');
        }
        out.push_str("decay: ");
        out.push_str(&join(a.decay()));
        out.push('\n');
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Self::parse_with_budget(text, dmra::coverage::DEFAULT_MEMORY_BUDGET)
    }

    /// [`ArrayFile::parse`] with an explicit cap on the pattern table.
    pub fn parse_with_budget(text: &str, budget: u64) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let last_line = text.lines().count().max(1);

        let (ln, magic) = lines.next().ok_or_else(|| err(1, "empty file"))?;
        if magic != format!("{MAGIC} {VERSION}") {
            return Err(err(
                ln,
                format!("expected {MAGIC:?} {VERSION:?} header, found {magic:?}"),
            ));
        }

        let (ln, header) = lines
            .next()
            .ok_or_else(|| err(last_line, "missing `n k q M algo` line"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(err(ln, "expected `n k q M algo`"));
        }
        let number = |s: &str, what: &str| {
            s.parse::<u64>()
                .map_err(|_| err(ln, format!("{what} is not a number: {s:?}")))
        };
        let n = number(fields[0], "n")? as usize;
        let k = number(fields[1], "k")? as usize;
        let q = u32::try_from(number(fields[2], "q")?).map_err(|_| err(ln, "q too large"))?;
        let m = number(fields[3], "M")? as usize;
        let construction: Construction = fields[4].parse().map_err(|e: String| err(ln, e))?;
        let params = Params::new(n, k, q).map_err(|e| err(ln, e.to_string()))?;

        let mut rows = Vec::with_capacity(m);
        let mut row_lines = Vec::with_capacity(m);
        for i in 0..m {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| err(last_line, format!("expected {m} rows, found {i}")))?;
            if line.starts_with("decay:") {
                return Err(err(ln, format!("expected {m} rows, found {i}")));
            }
            let symbols = line
                .split_whitespace()
                .map(|s| {
                    s.parse::<u32>()
                        .map_err(|_| err(ln, format!("bad symbol {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(Row::new(&params, symbols).map_err(|e| err(ln, e.to_string()))?);
            row_lines.push(ln);
        }

        let decay_line = lines.next();
        let array = CoveringArray::from_rows_with_budget(params, rows, construction, budget)
            .map_err(|e| {
                let at = match e {
                    dmra::Error::DuplicateRow(i) => row_lines[i - 1],
                    _ => ln,
                };
                err(at, e.to_string())
            })?;

        match decay_line {
            Some((ln, line)) => {
                let rest = line
                    .strip_prefix("decay:")
                    .ok_or_else(|| err(ln, "expected `decay:` line after the rows"))?;
                let decay = rest
                    .split_whitespace()
                    .map(|s| {
                        s.parse::<u64>()
                            .map_err(|_| err(ln, format!("bad count {s:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if decay != array.decay() {
                    return Err(err(
                        ln,
                        format!(
                            "decay {} does not match the rows, which give {}",
                            join(&decay),
                            join(array.decay())
                        ),
                    ));
                }
                if let Some((ln, _)) = lines.next() {
                    return Err(err(ln, "unexpected content after the decay line"));
                }
            }
            None if construction == Construction::External => {}
            None => return Err(err(last_line, "missing `decay:` line")),
        }
        Ok(Self { array })
    }
}

fn join<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
