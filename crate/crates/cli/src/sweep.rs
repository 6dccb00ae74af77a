//! Expected codeword length as a function of `n`, one CSV row per `n`.

use std::io::Write;
use std::time::Instant;

use dmra::{analysis, Algorithm, CodeKind, Params};
use rayon::prelude::*;

/// Column order of the sweep CSV. Do not reorder.
pub const HEADER: [&str; 13] = [
    "n",
    "k",
    "q",
    "M",
    "entropy_bits",
    "huffman_len_bits",
    "shannon_len_bits",
    "fixed_len_bits",
    "geo_entropy_bits",
    "theorem_bound_bits",
    "overhead_bits",
    "build_time_ms",
    "error",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub k: usize,
    pub q: u32,
    pub n_min: usize,
    pub n_max: usize,
    pub n_step: usize,
    pub algorithm: Algorithm,
    /// Record wall-clock build times. Off gives byte-identical output
    /// across runs.
    pub timing: bool,
    pub memory_budget: u64,
}

/// Measured quantities for one `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepMetrics {
    pub rows: usize,
    pub entropy_bits: f64,
    pub huffman_len_bits: f64,
    pub shannon_len_bits: f64,
    pub fixed_len_bits: f64,
    pub geo_entropy_bits: f64,
    pub theorem_bound_bits: f64,
    /// Huffman length minus `k log2 q`.
    pub overhead_bits: f64,
    pub build_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub result: Result<SweepMetrics, String>,
}

pub fn sweep_point(n: usize, config: &SweepConfig) -> SweepRow {
    let result = (|| {
        let params = Params::new(n, config.k, config.q).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let report =
            dmra::builder::build_with_budget(&params, config.algorithm, config.memory_budget)
                .map_err(|e| e.to_string())?;
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let stats = analysis::overhead(&report.array).map_err(|e| e.to_string())?;
        Ok(SweepMetrics {
            rows: stats.rows,
            entropy_bits: stats.entropy_bits,
            huffman_len_bits: stats.length(CodeKind::Huffman).bits,
            shannon_len_bits: stats.length(CodeKind::Shannon).bits,
            fixed_len_bits: stats.length(CodeKind::Fixed).bits,
            geo_entropy_bits: stats.geo_entropy_bits,
            theorem_bound_bits: stats.theorem_bound_bits,
            overhead_bits: stats.length(CodeKind::Huffman).overhead_bits,
            build_time_ms: if config.timing { elapsed } else { 0.0 },
        })
    })();
    SweepRow {
        n,
        k: config.k,
        q: config.q,
        result,
    }
}

/// Runs every `n` in `n_min..=n_max` (step `n_step`), in parallel, and
/// returns rows in increasing `n`.
pub fn run_sweep(config: &SweepConfig) -> Vec<SweepRow> {
    let ns: Vec<usize> = (config.n_min..=config.n_max)
        .step_by(config.n_step.max(1))
        .collect();
    ns.into_par_iter().map(|n| sweep_point(n, config)).collect()
}

fn full(x: f64) -> String {
    format!("{x:.15}")
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(HEADER)?;
    for row in rows {
        let mut record = vec![row.n.to_string(), row.k.to_string(), row.q.to_string()];
        match &row.result {
            Ok(m) => {
                record.push(m.rows.to_string());
                record.extend(
                    [
                        m.entropy_bits,
                        m.huffman_len_bits,
                        m.shannon_len_bits,
                        m.fixed_len_bits,
                        m.geo_entropy_bits,
                        m.theorem_bound_bits,
                        m.overhead_bits,
                    ]
                    .map(full),
                );
                record.push(format!("{:.3}", m.build_time_ms));
                record.push(String::new());
            }
            Err(e) => {
                record.extend(std::iter::repeat_n(String::new(), 9));
                record.push(e.clone());
            }
        }
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}
