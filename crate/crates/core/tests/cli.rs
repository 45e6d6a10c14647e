use std::path::Path;
use std::process::{Command, Output};

fn zetacorr(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetacorr"))
        .args(args)
        .env("ZPC_CACHE_DIR", cache)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn zeros_writes_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = zetacorr(dir.path(), &["zeros", "--t-max", "100"]);
    assert!(out.status.success());
    let bytes = std::fs::read(dir.path().join("zeros.zpc")).unwrap();
    assert_eq!(&bytes[..4], b"ZPC1");
    assert_eq!(u64::from_le_bytes(bytes[4..12].try_into().unwrap()), 29);
    // one metadata line on stderr
    let meta = String::from_utf8(out.stderr).unwrap();
    assert_eq!(meta.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(meta.trim()).unwrap();
    assert_eq!(v["count"], 29);
}

#[test]
fn zeros_ingest_two_lines() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("z.txt");
    std::fs::write(&table, "14.134725142\n21.022039639\n").unwrap();
    let out = zetacorr(dir.path(), &["zeros", "--ingest", table.to_str().unwrap()]);
    assert!(out.status.success());
    let bytes = std::fs::read(dir.path().join("zeros.zpc")).unwrap();
    assert_eq!(u64::from_le_bytes(bytes[4..12].try_into().unwrap()), 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(zetacorr(dir.path(), &["zeros", "--t-max", "5"]).status.code(), Some(3));
    assert_eq!(zetacorr(dir.path(), &["zeros"]).status.code(), Some(2));
    assert_eq!(zetacorr(dir.path(), &["nonsense"]).status.code(), Some(2));
    // no cache yet
    let missing = zetacorr(dir.path(), &["fcorr", "--x", "5", "--t", "100"]);
    assert_eq!(missing.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("zero cache"));
}

#[test]
fn fcorr_methods_agree_and_lemma2_vanishes_at_one() {
    let dir = tempfile::tempdir().unwrap();
    assert!(zetacorr(dir.path(), &["zeros", "--t-max", "100"]).status.success());
    let out = zetacorr(
        dir.path(),
        &[
            "fcorr",
            "--x",
            "5",
            "--t",
            "100",
            "--beta",
            "1",
            "--method",
            "both",
            "--check-lemma2",
        ],
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "x,T,beta,method,value,err_estimate,lemma2_residual"
    );
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 2);
    let v = |r: &Vec<String>, i: usize| r[i].parse::<f64>().unwrap();
    assert!((v(&rows[0], 4) - v(&rows[1], 4)).abs() <= v(&rows[0], 5) + v(&rows[1], 5));
    assert!(rows.iter().all(|r| v(r, 6) == 0.0));
}

#[test]
fn explicit_and_psi_reports() {
    let dir = tempfile::tempdir().unwrap();
    assert!(zetacorr(dir.path(), &["zeros", "--t-max", "1000"]).status.success());
    let out = zetacorr(dir.path(), &["explicit", "--x", "100.5", "--y", "1000"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("x,Y,truncated_psi,psi,error,envelope_constant\n"));
    assert_eq!(text.lines().count(), 2);
    assert_eq!(
        zetacorr(dir.path(), &["explicit", "--x", "100", "--y", "1000"])
            .status
            .code(),
        Some(3)
    );

    let psi = zetacorr(dir.path(), &["psi", "--x-max", "100000", "--report-von-koch"]);
    assert!(psi.status.success());
    let meta: serde_json::Value = serde_json::from_str(String::from_utf8(psi.stderr).unwrap().trim()).unwrap();
    assert!(meta["von_koch"]["max_ratio"].as_f64().unwrap() < 2.0);
}

#[test]
fn out_and_meta_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("m.csv");
    let meta = dir.path().join("m.json");
    let out = zetacorr(
        dir.path(),
        &[
            "scan",
            "--m-of-x",
            "--x",
            "1e4,1e8",
            "--out",
            csv.to_str().unwrap(),
            "--meta",
            meta.to_str().unwrap(),
        ],
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty() && out.stderr.is_empty());
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 3);
    let m: serde_json::Value = serde_json::from_str(std::fs::read_to_string(&meta).unwrap().trim()).unwrap();
    assert_eq!(m["config"]["command"]["scan"]["m_of_x"], true);
}
