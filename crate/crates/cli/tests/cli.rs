use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const REFERENCE_ARRAY: &str = "DMRA-CA v1\n4 2 2 5 external\n0 0 0 0\n1 1 1 0\n1 1 0 1\n1 0 1 1\n0 1 1 1\ndecay: 24 18 12 7 3 0\n";
const SEARCH_BOOK: &str =
    "DMRA-CA v1\n4 2 2 5 external\n0 0 0 0\n1 1 1 1\n0 1 0 1\n1 0 1 0\n1 1 0 0\n";

fn dmra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmra"))
        .args(args)
        .output()
        .expect("run dmra")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_verify_analyze() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("a.txt");
    for algo in ["greedy", "density"] {
        let o = dmra(&[
            "build",
            "--n",
            "4",
            "--k",
            "2",
            "--q",
            "2",
            "--algo",
            algo,
            "--out",
            s(&out),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(stdout(&o).contains("decay: 24 18"));
        let m: usize = stdout(&o)
            .split_whitespace()
            .find_map(|w| w.strip_prefix("M="))
            .unwrap()
            .parse()
            .unwrap();
        assert!(m <= 12);
        assert_eq!(dmra(&["verify", s(&out)]).status.code(), Some(0));
        let o = dmra(&["analyze", s(&out)]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("PASS"));
    }
}

#[test]
fn build_rejects_bad_parameters() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("a.txt");
    let o = dmra(&[
        "build",
        "--n",
        "3",
        "--k",
        "4",
        "--q",
        "2",
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("k > n"));
    let o = dmra(&[
        "build",
        "--n",
        "25",
        "--k",
        "2",
        "--q",
        "2",
        "--algo",
        "greedy",
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
    let o = dmra(&[
        "build",
        "--n",
        "4",
        "--k",
        "2",
        "--q",
        "2",
        "--out",
        "/nonexistent/dir/a.txt",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(dmra(&["build", "--n", "4"]).status.code(), Some(2));
}

#[test]
fn verify_reports_a_witness() {
    let dir = TempDir::new().unwrap();
    let full = write(&dir, "ref.txt", REFERENCE_ARRAY);
    assert_eq!(dmra(&["verify", s(&full)]).status.code(), Some(0));

    let partial = write(
        &dir,
        "ref-4.txt",
        "DMRA-CA v1\n4 2 2 4 external\n0 0 0 0\n1 1 1 0\n1 1 0 1\n1 0 1 1\n",
    );
    let o = dmra(&["verify", s(&partial)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: 01XX"), "{}", stdout(&o));

    let truncated = write(&dir, "bad.txt", "DMRA-CA v1\n4 2 2 5 external\n0 0 0 0\n");
    let o = dmra(&["verify", s(&truncated)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line "));

    let o = dmra(&["verify", s(&dir.path().join("missing.txt"))]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn encode_examples() {
    let dir = TempDir::new().unwrap();
    let reference = write(&dir, "ref.txt", REFERENCE_ARRAY);
    let o = dmra(&[
        "encode",
        s(&reference),
        "--active",
        "1,2",
        "--messages",
        "0,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("index=5 len=3 bits="),
        "{}",
        stdout(&o)
    );

    let book = write(&dir, "book.txt", SEARCH_BOOK);
    for code in ["huffman", "shannon", "fixed"] {
        let o = dmra(&[
            "encode",
            s(&book),
            "--active",
            "1,3",
            "--messages",
            "1,0",
            "--code",
            code,
        ]);
        assert!(stdout(&o).starts_with("index=5 "), "{}", stdout(&o));
    }

    let o = dmra(&[
        "encode",
        s(&reference),
        "--active",
        "1",
        "--messages",
        "0,1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("arity"));
    let o = dmra(&[
        "encode",
        s(&reference),
        "--active",
        "1,2",
        "--messages",
        "0,2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = dmra(&[
        "encode",
        s(&reference),
        "--active",
        "1,2",
        "--messages",
        "0,x",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn encode_decode_roundtrip() {
    let dir = TempDir::new().unwrap();
    let reference = write(&dir, "ref.txt", REFERENCE_ARRAY);
    for code in ["huffman", "shannon", "fixed"] {
        for (active, messages) in [
            ("1,2", "0,1"),
            ("2,4", "1,1"),
            ("1,3", "1,0"),
            ("3,4", "0,0"),
        ] {
            let o = dmra(&[
                "encode",
                s(&reference),
                "--active",
                active,
                "--messages",
                messages,
                "--code",
                code,
            ]);
            let bits = stdout(&o)
                .trim()
                .rsplit("bits=")
                .next()
                .unwrap()
                .to_string();
            for (user, message) in active.split(',').zip(messages.split(',')) {
                let o = dmra(&[
                    "decode",
                    s(&reference),
                    "--bits",
                    &bits,
                    "--position",
                    user,
                    "--code",
                    code,
                ]);
                assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
                assert_eq!(stdout(&o).trim(), message);
            }
        }
    }
}

#[test]
fn decode_errors() {
    let dir = TempDir::new().unwrap();
    let reference = write(&dir, "ref.txt", REFERENCE_ARRAY);
    let o = dmra(&[
        "encode",
        s(&reference),
        "--active",
        "1,2",
        "--messages",
        "0,1",
    ]);
    let bits = stdout(&o)
        .trim()
        .rsplit("bits=")
        .next()
        .unwrap()
        .to_string();
    let o = dmra(&["decode", s(&reference), "--bits", &bits, "--position", "2"]);
    assert_eq!(stdout(&o).trim(), "1");

    let padded = format!("{bits}0");
    assert_eq!(
        dmra(&[
            "decode",
            s(&reference),
            "--bits",
            &padded,
            "--position",
            "2"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        dmra(&["decode", s(&reference), "--bits", "01a", "--position", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        dmra(&["decode", s(&reference), "--bits", &bits, "--position", "9"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn analyze_reference_array() {
    let dir = TempDir::new().unwrap();
    let reference = write(&dir, "ref.txt", REFERENCE_ARRAY);
    let csv = dir.path().join("ref.csv");
    let o = dmra(&["analyze", s(&reference), "--csv", s(&csv)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("entropy (bits)"));
    assert!(text.contains("2.28"));
    assert!(
        text.contains("huffman length (bits)       2.29  [55/24]"),
        "{text}"
    );
    assert!(text.contains("<= q^k = 4: PASS"));

    let csv = fs::read_to_string(csv).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(
        lines[1].starts_with("4,2,2,5,2.277292584668"),
        "{}",
        lines[1]
    );
    assert!(lines[1].contains(",2.291666666666667,"));

    let all = write(
        &dir,
        "all.txt",
        "DMRA-CA v1\n2 2 2 4 external\n0 0\n0 1\n1 0\n1 1\n",
    );
    let o = dmra(&["analyze", s(&all)]);
    assert!(
        stdout(&o).contains("entropy (bits)              2.00"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn sweep_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |out: &Path| {
        dmra(&[
            "sweep",
            "--k",
            "2",
            "--q",
            "2",
            "--n-min",
            "5",
            "--n-max",
            "40",
            "--n-step",
            "5",
            "--no-timing",
            "--out",
            s(out),
        ])
    };
    assert_eq!(args(&a).status.code(), Some(0));
    assert_eq!(args(&b).status.code(), Some(0));
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0][0], "n");
    assert_eq!(rows.len(), 9);
    for row in &rows[1..] {
        let huffman: f64 = row[5].parse().unwrap();
        let bound: f64 = row[9].parse().unwrap();
        assert!(huffman < bound);
        assert!((bound - 4.4427).abs() < 1e-4);
    }

    let o = dmra(&[
        "sweep",
        "--k",
        "3",
        "--q",
        "2",
        "--n-min",
        "2",
        "--n-max",
        "4",
        "--no-timing",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.lines().nth(1).unwrap().ends_with("k > n (3 > 2)") || text.contains("k > n"),
        "{text}"
    );
}

#[test]
fn memory_budget_override() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("a.txt");
    let o = Command::new(env!("CARGO_BIN_EXE_dmra"))
        .args([
            "build",
            "--n",
            "10",
            "--k",
            "2",
            "--q",
            "2",
            "--out",
            s(&out),
        ])
        .env("DMRA_MEMORY_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("180"), "{}", stderr(&o));
}
