//! Subcommand implementations. Each writes its report to `out` and returns
//! the process exit status, or a [`CliError`] that maps to one.

use std::fs;
use std::io::Write;
use std::path::Path;

use dmra::{analysis, builder, verify, Algorithm, BitString, CodeKind, Codebook, Params, Pattern};
use thiserror::Error;

use crate::format::ArrayFile;
use crate::sweep::{self, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

pub const MEMORY_BUDGET_VAR: &str = "DMRA_MEMORY_BUDGET";

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or flag values.
    #[error("{0}")]
    Usage(String),
    /// Malformed or non-covering array file, undecodable bits.
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<dmra::Error> for CliError {
    fn from(e: dmra::Error) -> Self {
        use dmra::Error::*;
        match e {
            InvalidParams(_)
            | PatternSpaceOverflow { .. }
            | InvalidPattern(_)
            | PositionOutOfRange { .. }
            | CandidateSpaceExceeded { .. }
            | MemoryBudgetExceeded { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn write_out(out: &mut dyn Write, text: std::fmt::Arguments) -> Result<(), CliError> {
    out.write_fmt(text)
        .map_err(|e| CliError::Io(format!("writing output: {e}")))
}

/// Pattern-table cap from `DMRA_MEMORY_BUDGET`, else the library default.
pub fn memory_budget() -> Result<u64, CliError> {
    match std::env::var(MEMORY_BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Usage(format!("{MEMORY_BUDGET_VAR} must be an integer, got {v:?}"))
        }),
        Err(_) => Ok(dmra::coverage::DEFAULT_MEMORY_BUDGET),
    }
}

pub fn load(path: &Path) -> Result<ArrayFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    ArrayFile::parse_with_budget(&text, memory_budget()?)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Usage(format!("bad {what} entry {s:?}")))
        })
        .collect()
}

pub fn cmd_build(
    n: usize,
    k: usize,
    q: u32,
    algorithm: Algorithm,
    path: &Path,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let params = Params::new(n, k, q)?;
    let report = builder::build_with_budget(&params, algorithm, memory_budget()?)?;
    let file = ArrayFile::new(report.array);
    fs::write(path, file.render()).map_err(|e| io_error(path, e))?;
    let decay: Vec<String> = file.array.decay().iter().map(u64::to_string).collect();
    write_out(
        out,
        format_args!(
            "built {} rows for {} with {} algorithm\nM={} bound={}\ndecay: {}\n",
            file.array.len(),
            params,
            file.array.construction(),
            file.array.len(),
            builder::row_count_upper_bound(&params),
            decay.join(" ")
        ),
    )?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(path: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let file = load(path)?;
    let array = &file.array;
    match verify(array)? {
        None => {
            write_out(
                out,
                format_args!(
                    "ok: {} rows cover all {} patterns of {}\n",
                    array.len(),
                    array.params().total_patterns(),
                    array.params()
                ),
            )?;
            Ok(EXIT_OK)
        }
        Some(witness) => {
            let users: Vec<String> = witness.users().iter().map(usize::to_string).collect();
            let messages: Vec<String> = witness.messages().iter().map(u32::to_string).collect();
            write_out(
                out,
                format_args!(
                    "not a covering array: {} patterns uncovered\nwitness: {} (users {}, messages {})\n",
                    array.decay().last().copied().unwrap_or(0),
                    witness.notation(array.params().n()),
                    users.join(","),
                    messages.join(",")
                ),
            )?;
            Ok(EXIT_INVALID)
        }
    }
}

pub fn cmd_encode(
    path: &Path,
    active: &str,
    messages: &str,
    code: CodeKind,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let file = load(path)?;
    let users: Vec<usize> = parse_list(active, "--active")?;
    let messages: Vec<u32> = parse_list(messages, "--messages")?;
    let params = *file.array.params();
    if users.len() != messages.len() {
        return Err(CliError::Usage(format!(
            "arity mismatch: {} active users but {} messages",
            users.len(),
            messages.len()
        )));
    }
    let pattern = Pattern::new(&params, &users, &messages)?;
    let m = dmra::encode_index(&file.array, &pattern)?;
    let book = Codebook::new(file.array, code)?;
    let word = book.code().codeword(m)?;
    write_out(
        out,
        format_args!("index={m} len={} bits={word}\n", word.len),
    )?;
    Ok(EXIT_OK)
}

pub fn cmd_decode(
    path: &Path,
    bits: &str,
    position: usize,
    code: CodeKind,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let file = load(path)?;
    let bits: BitString = bits.trim().parse()?;
    let book = Codebook::new(file.array, code)?;
    let symbol = book.decode_frame(&bits, position)?;
    write_out(out, format_args!("{symbol}\n"))?;
    Ok(EXIT_OK)
}

pub fn cmd_analyze(
    path: &Path,
    csv_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let file = load(path)?;
    let report = analysis::overhead(&file.array)?;
    let p = report.params;
    let qk = p.message_combinations();
    let e_index = &report.expected_index;
    let within = report.expected_index_within_bound();

    let mut lines: Vec<(String, String)> = vec![
        ("parameters".into(), p.to_string()),
        ("rows M".into(), report.rows.to_string()),
        ("payload (bits)".into(), format!("{:.2}", p.payload_bits())),
        (
            "entropy (bits)".into(),
            format!("{:.2}", report.entropy_bits),
        ),
    ];
    for l in &report.lengths {
        lines.push((
            format!("{} length (bits)", l.kind),
            format!(
                "{:.2}  [{}]  overhead {:.2}",
                l.bits, l.expected, l.overhead_bits
            ),
        ));
    }
    lines.extend([
        (
            "expected index".into(),
            format!(
                "{e_index} = {:.4} <= q^k = {qk}: {}",
                *e_index.numer() as f64 / *e_index.denom() as f64,
                if within { "PASS" } else { "FAIL" }
            ),
        ),
        (
            "geometric entropy (bits)".into(),
            format!("{:.2}", report.geo_entropy_bits),
        ),
        (
            "length bound (bits)".into(),
            format!("{:.2}", report.theorem_bound_bits),
        ),
        (
            "explicit identities (bits)".into(),
            format!(
                "{:.2} overhead, {:.2} total",
                report.explicit_identity_overhead_bits,
                report.explicit_identity_overhead_bits + p.payload_bits()
            ),
        ),
    ]);
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (key, value) in &lines {
        write_out(out, format_args!("{key:<width$}  {value}\n"))?;
    }

    if let Some(csv_path) = csv_path {
        let row = sweep::SweepRow {
            n: p.n(),
            k: p.k(),
            q: p.q(),
            result: Ok(sweep::SweepMetrics {
                rows: report.rows,
                entropy_bits: report.entropy_bits,
                huffman_len_bits: report.length(CodeKind::Huffman).bits,
                shannon_len_bits: report.length(CodeKind::Shannon).bits,
                fixed_len_bits: report.length(CodeKind::Fixed).bits,
                geo_entropy_bits: report.geo_entropy_bits,
                theorem_bound_bits: report.theorem_bound_bits,
                overhead_bits: report.length(CodeKind::Huffman).overhead_bits,
                build_time_ms: 0.0,
            }),
        };
        let f = fs::File::create(csv_path).map_err(|e| io_error(csv_path, e))?;
        sweep::write_csv(&[row], f).map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(if within { EXIT_OK } else { EXIT_INVALID })
}

pub fn cmd_sweep(
    mut config: SweepConfig,
    csv_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if config.n_step == 0 {
        return Err(CliError::Usage("--n-step must be positive".into()));
    }
    if config.n_min > config.n_max {
        return Err(CliError::Usage("--n-min exceeds --n-max".into()));
    }
    config.memory_budget = memory_budget()?;
    let rows = sweep::run_sweep(&config);
    match csv_path {
        Some(path) => {
            let f = fs::File::create(path).map_err(|e| io_error(path, e))?;
            sweep::write_csv(&rows, f).map_err(|e| CliError::Io(e.to_string()))?;
            let failed = rows.iter().filter(|r| r.result.is_err()).count();
            write_out(
                out,
                format_args!(
                    "wrote {} rows ({failed} failed) to {}\n",
                    rows.len(),
                    path.display()
                ),
            )?;
        }
        None => sweep::write_csv(&rows, out).map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(EXIT_OK)
}
