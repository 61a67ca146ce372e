use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bfpc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bfpc"))
        .args(args)
        .output()
        .expect("failed to run bfpc")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn sample_text() -> Vec<u8> {
    let mut s = Vec::new();
    for i in 0..400u32 {
        s.extend_from_slice(b"the cat sat on the mat; ");
        s.extend_from_slice(i.to_string().as_bytes());
        s.push(if i % 7 == 0 { b'\n' } else { b' ' });
    }
    s
}

#[test]
fn compress_decompress_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    fs::write(&input, sample_text()).unwrap();
    for order in ["h0", "h1"] {
        for baseline in [false, true] {
            let archive = dir.path().join("a.bfpc");
            let restored = dir.path().join("out.txt");
            let mut args = vec![
                "compress",
                path(&input),
                path(&archive),
                "--order",
                order,
                "--m",
                "3",
            ];
            if baseline {
                args.push("--baseline");
            }
            let out = bfpc(&args);
            assert!(
                out.status.success(),
                "{}",
                String::from_utf8_lossy(&out.stderr)
            );
            let report = String::from_utf8(out.stdout).unwrap();
            assert!(report
                .starts_with("file,variant,m,parsing,n,phrases,total_bps,string_bps,dict_bps"));
            let out = bfpc(&["decompress", path(&archive), path(&restored)]);
            assert!(out.status.success());
            assert_eq!(fs::read(&restored).unwrap(), sample_text());
        }
    }
}

#[test]
fn empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty");
    let archive = dir.path().join("empty.bfpc");
    let restored = dir.path().join("restored");
    fs::write(&input, b"").unwrap();
    assert!(bfpc(&["compress", path(&input), path(&archive)])
        .status
        .success());
    assert!(fs::metadata(&archive).unwrap().len() < 16);
    assert!(bfpc(&["decompress", path(&archive), path(&restored)])
        .status
        .success());
    assert_eq!(fs::read(&restored).unwrap(), b"");
}

#[test]
fn analyze_formats_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    fs::write(&input, sample_text()).unwrap();
    let csv = bfpc(&["analyze", path(&input), "--m", "2,4"]);
    assert!(csv.status.success());
    let text = String::from_utf8(csv.stdout.clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(
        lines[0],
        "file,variant,m,b_bps,b_avg_len,b_sigma,b_pairs,b_offset,a_bps,a_avg_len,a_sigma,a_pairs,mean_entropy_bps"
    );
    assert_eq!(
        bfpc(&["analyze", path(&input), "--m", "2,4"]).stdout,
        csv.stdout
    );

    let json = bfpc(&[
        "analyze",
        path(&input),
        "--order",
        "h1",
        "--m",
        "2",
        "--format",
        "json",
        "--name",
        "x",
    ]);
    assert!(json.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(rows[0]["file"], "x");
    assert_eq!(rows[0]["variant"], "H1");
    assert!(
        rows[0]["algorithm"]["bps"].as_f64().unwrap()
            <= rows[0]["baseline"]["bps"].as_f64().unwrap() + 0.5
    );
}

#[test]
fn access_bench_reports_and_saves() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    let saved = dir.path().join("in.rax");
    fs::write(&input, sample_text()).unwrap();
    let out = bfpc(&[
        "access-bench",
        path(&input),
        "--m",
        "4",
        "--queries",
        "1000",
        "--blocks",
        "5",
        "--block-size",
        "100",
        "--format",
        "json",
        "--save",
        path(&saved),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["d"], 8);
    assert_eq!(report["failures"], 0);
    assert!(report["tr_seconds"].as_f64().is_some());
    assert!(report["size"]["delta_bps"].as_f64().unwrap() > 0.0);
    assert!(saved.exists());

    let quiet = bfpc(&[
        "access-bench",
        path(&input),
        "--queries",
        "0",
        "--blocks",
        "0",
    ]);
    assert!(quiet.status.success());
    let text = String::from_utf8(quiet.stdout).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    // tr_seconds and tb_seconds stay empty without a workload
    assert_eq!(row[14], "");
    assert_eq!(row[17], "");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing");
    let junk = dir.path().join("junk");
    fs::write(&junk, b"definitely not an archive").unwrap();
    let out_path = dir.path().join("out");

    assert_eq!(bfpc(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bfpc(&["compress"]).status.code(), Some(1));
    assert_eq!(
        bfpc(&["analyze", path(&junk), "--m", "0"]).status.code(),
        Some(1)
    );
    assert_eq!(
        bfpc(&["decompress", path(&missing), path(&out_path)])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bfpc(&["decompress", path(&junk), path(&out_path)])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(bfpc(&["--help"]).status.code(), Some(0));
}
