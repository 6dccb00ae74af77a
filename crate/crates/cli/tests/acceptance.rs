//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero on any failure not listed in `KNOWN_UNATTAINABLE`.
//!
//! Set `DMRA_ACCEPTANCE_FULL=1` to run criterion 8 over every `(n, k, q)`
//! with `U0 <= 2^16` instead of the default `n, q <= 16` slice.

use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use dmra::analysis::{entropy, expected_index, expected_index_direct};
use dmra::{
    build, build_greedy, encode_index, geometric_entropy, index_distribution, overhead,
    pattern_unrank, row_count_upper_bound, theorem_bound, verify, Algorithm, BuildReport, CodeKind,
    Codebook, Construction, CoverageTracker, CoveringArray, Error, Params, Pattern, Row,
};
use num_rational::Ratio;

/// Criteria that cannot hold as written; the line still prints FAIL.
/// C1: the stated entropy 2.2806 contradicts the stated distribution
/// {1/4, 1/4, 5/24, 1/6, 1/8}, whose entropy is 2.277293.
const KNOWN_UNATTAINABLE: &[&str] = &["C1"];

struct Outcome {
    id: &'static str,
    title: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
    elapsed: Duration,
}

fn run(
    id: &'static str,
    title: &'static str,
    limit: Duration,
    f: impl FnOnce(&mut Vec<String>, &mut Vec<String>),
) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    f(&mut failures, &mut notes);
    let elapsed = start.elapsed();
    if elapsed > limit {
        failures.push(format!("runtime {elapsed:.2?} exceeds {limit:?}"));
    }
    Outcome {
        id,
        title,
        failures,
        notes,
        elapsed,
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn array(p: Params, rows: &[&str]) -> CoveringArray {
    let rows = rows
        .iter()
        .map(|s| Row::new(&p, s.bytes().map(|b| u32::from(b - b'0')).collect()).unwrap())
        .collect();
    CoveringArray::from_rows(p, rows, Construction::External).unwrap()
}

struct GridPoint {
    params: Params,
    algorithm: Algorithm,
    report: Result<BuildReport, Error>,
}

/// Every build over k in {2,3}, q = 2, n in 5..=60, for both algorithms.
/// Greedy points above the candidate gate come back as errors.
fn grid() -> &'static (Vec<GridPoint>, Duration) {
    static GRID: OnceLock<(Vec<GridPoint>, Duration)> = OnceLock::new();
    GRID.get_or_init(|| {
        let start = Instant::now();
        let mut points = Vec::new();
        for k in [2, 3] {
            for n in 5..=60 {
                let params = Params::new(n, k, 2).unwrap();
                for algorithm in [Algorithm::Greedy, Algorithm::Density] {
                    points.push(GridPoint {
                        params,
                        algorithm,
                        report: build(&params, algorithm),
                    });
                }
            }
        }
        (points, start.elapsed())
    })
}

fn built() -> impl Iterator<Item = (&'static GridPoint, &'static BuildReport)> {
    grid()
        .0
        .iter()
        .filter_map(|g| g.report.as_ref().ok().map(|r| (g, r)))
}

fn grid_note(notes: &mut Vec<String>) {
    let (points, _) = grid();
    let gated = points
        .iter()
        .filter(|g| matches!(g.report, Err(Error::CandidateSpaceExceeded { .. })))
        .count();
    notes.push(format!(
        "{} builds ({} greedy points above the q^n <= 2^24 gate)",
        points.len() - gated,
        gated
    ));
}

fn c1() -> Outcome {
    run(
        "C1",
        "reference array reproduction",
        Duration::from_secs(1),
        |fail, notes| {
            let p = Params::new(4, 2, 2).unwrap();
            let a = array(p, &["0000", "1110", "1101", "1011", "0111"]);
            check(fail, a.gains() == [6, 6, 5, 4, 3], || {
                format!("gains {:?}", a.gains())
            });
            let dist = index_distribution(a.decay()).unwrap();
            let want = [
                Ratio::new(1, 4),
                Ratio::new(1, 4),
                Ratio::new(5, 24),
                Ratio::new(1, 6),
                Ratio::new(1, 8),
            ];
            check(fail, dist.probabilities() == want, || {
                format!("distribution {:?}", dist.probabilities())
            });
            let h = entropy(&dist);
            notes.push(format!("entropy {h:.6}"));
            check(fail, (h - 2.2806).abs() <= 0.001, || {
                format!("entropy {h:.6} not within 2.2806 +- 0.001")
            });
            let l = overhead(&a).unwrap().length(CodeKind::Huffman).expected;
            check(fail, l == Ratio::new(55, 24), || {
                format!("huffman length {l}")
            });
        },
    )
}

fn c2() -> Outcome {
    run(
        "C2",
        "search example",
        Duration::from_millis(100),
        |fail, _| {
            let p = Params::new(4, 2, 2).unwrap();
            let a = array(p, &["0000", "1111", "0101", "1010", "1100"]);
            let pat = Pattern::new(&p, &[1, 3], &[1, 0]).unwrap();
            let m = encode_index(&a, &pat);
            check(fail, m == Ok(5), || format!("index {m:?}"));
        },
    )
}

fn c3() -> Outcome {
    run(
        "C3",
        "recursion invariant",
        Duration::from_secs(300),
        |fail, notes| {
            let (_, elapsed) = grid();
            for (g, r) in built() {
                let q_k = u128::from(g.params.message_combinations());
                for w in r.decay().windows(2) {
                    // U_{m+1} <= U_m (1 - q^-k), cross-multiplied
                    let ok = u128::from(w[1]) * q_k <= u128::from(w[0]) * (q_k - 1);
                    check(fail, ok, || {
                        format!("{} {:?}: {} -> {}", g.params, g.algorithm, w[0], w[1])
                    });
                }
                check(fail, r.per_row_gain.iter().all(|&x| x >= 1), || {
                    format!("{} {:?}: zero gain", g.params, g.algorithm)
                });
                check(fail, r.array.is_complete(), || {
                    format!("{} {:?}: incomplete", g.params, g.algorithm)
                });
            }
            grid_note(notes);
            notes.push(format!("grid built in {elapsed:.2?}"));
            check(fail, *elapsed < Duration::from_secs(300), || {
                format!("grid took {elapsed:.2?}")
            });
        },
    )
}

fn c4() -> Outcome {
    run(
        "C4",
        "length and expected-index bounds",
        Duration::from_secs(300),
        |fail, notes| {
            let mut worst: f64 = f64::NEG_INFINITY;
            for (g, r) in built() {
                let report = overhead(&r.array).unwrap();
                let bound = theorem_bound(&g.params);
                for kind in [CodeKind::Shannon, CodeKind::Huffman] {
                    let bits = report.length(kind).bits;
                    worst = worst.max(bits - bound);
                    check(fail, bits < bound, || {
                        format!("{} {:?} {kind}: {bits} >= {bound}", g.params, g.algorithm)
                    });
                }
                let dist = index_distribution(r.decay()).unwrap();
                let e = expected_index_direct(&dist);
                let cap = Ratio::from_integer(u128::from(g.params.message_combinations()));
                check(fail, e <= cap && expected_index(&dist) == e, || {
                    format!("{} {:?}: E[g] = {e}", g.params, g.algorithm)
                });
            }
            notes.push(format!("largest length minus bound {worst:.4} bits"));
        },
    )
}

fn c5() -> Outcome {
    run(
        "C5",
        "overhead band and flat trend (density, q = 2)",
        Duration::from_secs(300),
        |fail, notes| {
            for (k, cap) in [(2usize, 1.45), (3, 1.5)] {
                let mut xs = Vec::new();
                let mut ys = Vec::new();
                let mut max_over: f64 = 0.0;
                for (g, r) in built() {
                    let n = g.params.n();
                    if g.algorithm != Algorithm::Density || g.params.k() != k || n < 40 {
                        continue;
                    }
                    let report = overhead(&r.array).unwrap();
                    let huff = report.length(CodeKind::Huffman);
                    max_over = max_over.max(huff.overhead_bits);
                    check(
                        fail,
                        huff.overhead_bits > 0.0 && huff.overhead_bits <= cap,
                        || format!("k={k} n={n}: overhead {:.4}", huff.overhead_bits),
                    );
                    xs.push(n as f64);
                    ys.push(huff.bits);
                }
                let mx = xs.iter().sum::<f64>() / xs.len() as f64;
                let my = ys.iter().sum::<f64>() / ys.len() as f64;
                let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
                let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
                let slope = sxy / sxx;
                notes.push(format!(
                    "k={k}: max overhead {max_over:.4}, slope {slope:.5}"
                ));
                check(fail, xs.len() == 21, || {
                    format!("k={k}: {} points", xs.len())
                });
                check(fail, slope.abs() < 0.01, || {
                    format!("k={k}: slope {slope:.5}")
                });
            }
        },
    )
}

fn c6() -> Outcome {
    run(
        "C6",
        "row-count bounds",
        Duration::from_secs(300),
        |fail, notes| {
            for (g, r) in built() {
                let p = g.params;
                let m = r.array.len();
                check(fail, m as u64 <= row_count_upper_bound(&p), || {
                    format!(
                        "{p} {:?}: M = {m} > {}",
                        g.algorithm,
                        row_count_upper_bound(&p)
                    )
                });
                if p.k() >= 2 {
                    let q_m = u64::from(p.q()).checked_pow(m as u32).unwrap_or(u64::MAX);
                    check(fail, q_m > p.n() as u64, || {
                        format!("{p} {:?}: q^M = {q_m} <= n", g.algorithm)
                    });
                }
            }
            grid_note(notes);
        },
    )
}

/// Independent brute force over all q^n rows and all patterns.
fn words(n: usize, q: u32) -> Vec<Vec<u32>> {
    (0..q.pow(n as u32))
        .map(|mut i| {
            let mut w = vec![0; n];
            for s in w.iter_mut().rev() {
                *s = i % q;
                i /= q;
            }
            w
        })
        .collect()
}

fn naive_patterns(n: usize, k: usize, q: u32) -> Vec<(Vec<usize>, Vec<u32>)> {
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != k {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|c| mask >> c & 1 == 1).collect();
        for msgs in words(k, q) {
            out.push((cols.clone(), msgs));
        }
    }
    out
}

fn hit(row: &[u32], cols: &[usize], msgs: &[u32]) -> bool {
    cols.iter().zip(msgs).all(|(&c, &m)| row[c] == m)
}

fn c7() -> Outcome {
    run(
        "C7",
        "brute-force oracle equivalence",
        Duration::from_secs(30),
        |fail, _| {
            for (n, k, q) in [(4, 2, 2), (5, 2, 2), (4, 3, 2), (4, 2, 3)] {
                let p = Params::new(n, k, q).unwrap();
                let patterns = naive_patterns(n, k, q);
                let report = build_greedy(&p).unwrap();
                let mut chosen: Vec<Vec<u32>> = Vec::new();
                for (step, gain) in report.per_row_gain.iter().enumerate() {
                    let best = words(n, q)
                        .iter()
                        .filter(|w| !chosen.contains(w))
                        .map(|w| {
                            patterns
                                .iter()
                                .filter(|(c, m)| {
                                    hit(w, c, m) && !chosen.iter().any(|r| hit(r, c, m))
                                })
                                .count() as u64
                        })
                        .max()
                        .unwrap();
                    check(fail, *gain == best, || {
                        format!("{p} step {}: gain {gain}, scan max {best}", step + 1)
                    });
                    chosen.push(report.array.rows()[step].symbols().to_vec());
                }
                for cut in 0..=report.array.len() {
                    let rows = report.array.rows()[..cut].to_vec();
                    let a = CoveringArray::from_rows(p, rows, Construction::External).unwrap();
                    let naive_ok = patterns
                        .iter()
                        .all(|(c, m)| chosen[..cut].iter().any(|r| hit(r, c, m)));
                    let got = verify(&a).unwrap();
                    check(fail, got.is_none() == naive_ok, || {
                        format!("{p} first {cut} rows: verify {got:?}")
                    });
                }
            }
        },
    )
}

/// Every `(n, k, q)` with `U0 <= 2^16`, optionally capped in `n` and `q`.
fn roundtrip_domain(cap: Option<usize>) -> Vec<Params> {
    const LIMIT: u64 = 1 << 16;
    let mut out = Vec::new();
    for n in 1..=cap.unwrap_or(LIMIT as usize) {
        for k in 1..=n {
            for q in 2..=cap.map_or(LIMIT as u32, |c| c as u32) {
                match Params::new(n, k, q) {
                    Ok(p) if p.total_patterns() <= LIMIT => out.push(p),
                    _ => break,
                }
            }
        }
    }
    out
}

fn c8() -> Outcome {
    let full = std::env::var_os("DMRA_ACCEPTANCE_FULL").is_some();
    let limit = Duration::from_secs(if full { u64::MAX / 4 } else { 60 });
    run("C8", "end-to-end roundtrip", limit, |fail, notes| {
        let domain = roundtrip_domain(if full { None } else { Some(16) });
        let mut patterns = 0u64;
        for p in &domain {
            let a = build(p, Algorithm::Density).unwrap().array;
            for kind in CodeKind::ALL {
                let book = Codebook::new(a.clone(), kind).unwrap();
                for rank in 0..p.total_patterns() {
                    let pat = pattern_unrank(rank, p).unwrap();
                    let frame = match book.encode_frame(&pat) {
                        Ok(f) => f,
                        Err(e) => {
                            fail.push(format!("{p} {kind} rank {rank}: {e}"));
                            continue;
                        }
                    };
                    for user in pat.users() {
                        let got = book.decode_frame(&frame, user).ok();
                        check(fail, got == pat.message_for(user), || {
                            format!("{p} {kind} {} user {user}: {got:?}", pat.notation(p.n()))
                        });
                    }
                    patterns += 1;
                }
            }
        }
        notes.push(format!(
            "{} parameter sets ({}), {patterns} pattern encodings",
            domain.len(),
            if full {
                "all with U0 <= 2^16"
            } else {
                "U0 <= 2^16, n <= 16, q <= 16"
            }
        ));
    })
}

fn c9() -> Outcome {
    run(
        "C9",
        "geometric reference",
        Duration::from_secs(300),
        |fail, notes| {
            let geo = geometric_entropy(&Params::new(4, 2, 2).unwrap());
            notes.push(format!("geometric entropy {geo:.6}"));
            check(fail, (geo - 3.2451).abs() <= 0.0005, || {
                format!("geometric entropy {geo}")
            });
            for (g, r) in built() {
                let h = entropy(&index_distribution(r.decay()).unwrap());
                let cap = geometric_entropy(&g.params) + 1e-9;
                check(fail, h <= cap, || {
                    format!("{} {:?}: entropy {h}", g.params, g.algorithm)
                });
            }
            // the tracker-side count agrees with the decay it produced
            let p = Params::new(6, 2, 2).unwrap();
            let t = CoverageTracker::new(p).unwrap();
            check(fail, t.remaining() == p.total_patterns(), || {
                "tracker start".into()
            });
        },
    )
}

fn main() -> ExitCode {
    let outcomes = [c1(), c2(), c3(), c4(), c5(), c6(), c7(), c8(), c9()];
    let mut unexpected = 0;
    println!();
    for o in &outcomes {
        let pass = o.failures.is_empty();
        let known = KNOWN_UNATTAINABLE.contains(&o.id);
        let status = if pass { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {} {} [{:.2?}]", o.id, o.title, o.elapsed);
        if !o.notes.is_empty() {
            line.push_str(&format!(": {}", o.notes.join("; ")));
        }
        println!("{line}");
        for f in o.failures.iter().take(5) {
            println!("    {f}");
        }
        if o.failures.len() > 5 {
            println!("    ... {} more", o.failures.len() - 5);
        }
        if !pass && known {
            println!("    (unattainable as stated; see KNOWN_UNATTAINABLE)");
        }
        if pass == known {
            unexpected += 1;
        }
    }
    let passed = outcomes.iter().filter(|o| o.failures.is_empty()).count();
    println!("acceptance: {passed}/{} criteria pass", outcomes.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
