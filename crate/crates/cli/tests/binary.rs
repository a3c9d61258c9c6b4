use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use jacquet_cli::corpus::DEFAULT_DIR;
use jacquet_cli::{run_job, JobConfig};

fn jacquet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacquet"))
        .args(args)
        .env_remove("JACQUET_TRUNC_DEFAULT")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verma_text_matches_table_row() {
    let o = jacquet(&["--family", "verma", "--k", "-4", "--psi", "trivial"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("H^0 J_P = chi_{-4} psi delta_P\n"), "{s}");
    assert!(s.contains("H^1 J_P = chi_{2} psi^w\n"), "{s}");
}

#[test]
fn json_output_equals_in_process_report() {
    let o = jacquet(&[
        "jacquet",
        "--family",
        "dualverma",
        "--k",
        "4",
        "--json",
        "--p",
        "5",
    ]);
    assert_eq!(code(&o), 0);
    let cfg = JobConfig::from_text("command = jacquet\nfamily = dualverma\nk = 4\np = 5").unwrap();
    assert_eq!(stdout(&o), run_job(&cfg).unwrap().to_json());
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 7] = [
        (&["kostant", "--k", "6"], 0),
        (&["bgg-check", "--k", "2"], 0),
        (&["les-check", "--k", "2"], 0),
        (&["jacquet", "--family", "verma", "--k", "3"], 2),
        (
            &["jacquet", "--family", "verma", "--k", "8", "--trunc", "4"],
            3,
        ),
        (
            &[
                "ext-bound",
                "--k",
                "-4",
                "--ell",
                "2",
                "--psi",
                "label=a",
                "--phi",
                "label=b",
            ],
            4,
        ),
        (&["corpus", "run", "--dir", "/nonexistent/corpus"], 6),
    ];
    for (args, expected) in cases {
        let o = jacquet(args);
        assert_eq!(
            code(&o),
            expected,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn json_validation_error_prints_error_document() {
    let o = jacquet(&["--family", "verma", "--k", "3", "--json"]);
    assert_eq!(code(&o), 2);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["error"]["exit_code"], 2);
    assert_eq!(doc["error"]["kind"], "validation");
}

#[test]
fn ext_bound_off_line_is_trivial() {
    let o = jacquet(&[
        "ext-bound",
        "--k",
        "-4",
        "--ell",
        "4",
        "--psi",
        "trivial",
        "--phi",
        "trivial",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"verdict\": \"Trivial\""));
}

#[test]
fn relations_resolve_undecidable_case() {
    let o = jacquet(&[
        "ext-bound",
        "--k",
        "-4",
        "--ell",
        "2",
        "--psi",
        "label=a",
        "--phi",
        "label=b",
        "--relation",
        "psi-ne-phi",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdict: Trivial"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.cfg");
    fs::write(&path, "command = jacquet\nfamily = verma\nk = 2\n").unwrap();
    let p = path.to_str().unwrap();
    let o = jacquet(&["--config", p, "--json"]);
    assert!(stdout(&o).contains("\"k\": 2"));
    let o = jacquet(&["--config", p, "--k", "-2", "--json"]);
    assert!(stdout(&o).contains("\"k\": -2"));
}

#[test]
fn env_var_sets_default_truncation() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_jacquet"));
        c.args(["--family", "verma", "--k", "2", "--json"]);
        match env {
            Some(v) => c.env("JACQUET_TRUNC_DEFAULT", v),
            None => c.env_remove("JACQUET_TRUNC_DEFAULT"),
        };
        c.output().unwrap()
    };
    assert!(stdout(&run(None)).contains("\"truncation\": 18"));
    assert!(stdout(&run(Some("40"))).contains("\"truncation\": 40"));
    // explicit flag wins over the environment
    let mut c = Command::new(env!("CARGO_BIN_EXE_jacquet"));
    let o = c
        .args(["--family", "verma", "--k", "2", "--json", "--trunc", "30"])
        .env("JACQUET_TRUNC_DEFAULT", "40")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("\"truncation\": 30"));
    assert_eq!(code(&run(Some("lots"))), 2);
    // too small for the certificate
    assert_eq!(code(&run(Some("2"))), 3);
}

fn copy_corpus(to: &Path) {
    for e in fs::read_dir(DEFAULT_DIR).unwrap() {
        let p = e.unwrap().path();
        fs::copy(&p, to.join(p.file_name().unwrap())).unwrap();
    }
}

#[test]
fn edited_golden_fails_naming_the_fixture() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    let golden = dir.path().join("jacquet_verma_k2.json");
    let text = fs::read_to_string(&golden).unwrap();
    fs::write(
        &golden,
        text.replacen("\"weight\": -4", "\"weight\": -6", 1),
    )
    .unwrap();
    let o = jacquet(&["corpus", "run", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 5);
    let s = stdout(&o);
    let fail: Vec<&str> = s.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fail.len(), 1, "{s}");
    assert!(
        fail[0].starts_with("FAIL jacquet_verma_k2: first divergence at $.result.degrees[1]"),
        "{}",
        fail[0]
    );
}

#[test]
fn missing_golden_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    fs::remove_file(dir.path().join("kostant_k4.json")).unwrap();
    let o = jacquet(&[
        "corpus",
        "run",
        "--dir",
        dir.path().to_str().unwrap(),
        "--sequential",
    ]);
    assert_eq!(code(&o), 5);
    assert!(stdout(&o).contains("FAIL kostant_k4: missing golden"));
}

#[test]
fn untouched_corpus_passes() {
    let o = jacquet(&["corpus", "run"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}
