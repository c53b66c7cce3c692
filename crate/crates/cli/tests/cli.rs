use std::path::Path;
use std::process::{Command, Output};

fn histcic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_histcic")).args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn gen(dir: &Path, extra: &[&str]) -> String {
    let out = dir.join("lot.csv");
    let p = out.to_str().unwrap().to_string();
    let mut args = vec!["gen", "--out", &p, "--seed", "3"];
    args.extend_from_slice(extra);
    let o = histcic(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

#[test]
fn iris_prints_confusion_table() {
    let o = histcic(&["iris", "--type", "setosa", "--seed", "3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for label in ["TP", "FP", "TN", "FN", "Accuracy%", "Kappa"] {
        assert!(s.lines().any(|l| l.starts_with(label)), "missing {label}\n{s}");
    }
}

#[test]
fn rank_puts_planted_columns_first() {
    let dir = tempfile::tempdir().unwrap();
    let lot = gen(dir.path(), &[]);
    let o = histcic(&["rank", &lot]);
    assert!(o.status.success());
    let s = stdout(&o);
    let mut top: Vec<u32> = s.lines().skip(1).take(4).map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap()).collect();
    top.sort_unstable();
    assert_eq!(top, vec![8, 20, 31, 43]);
}

#[test]
fn classify_writes_reports_and_plot_data_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let lot = gen(dir.path(), &[]);
    let run = |tag: &str| {
        let plots = dir.path().join(format!("plots_{tag}"));
        let rep = dir.path().join(format!("rep_{tag}"));
        let o = histcic(&["classify", &lot, "--seed", "5", "--emit-plots", plots.to_str().unwrap(), "--report-dir", rep.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        (plots, rep, stdout(&o))
    };
    let (p1, r1, s1) = run("a");
    let (p2, r2, s2) = run("b");
    assert_eq!(s1, s2);
    for f in ["report.txt", "report.kv"] {
        assert_eq!(std::fs::read(r1.join(f)).unwrap(), std::fs::read(r2.join(f)).unwrap());
    }
    for f in ["sats.csv", "cutoffs.csv", "histpanel_8.csv"] {
        assert_eq!(std::fs::read(p1.join(f)).unwrap(), std::fs::read(p2.join(f)).unwrap(), "{f}");
    }
    let sats = std::fs::read_to_string(p1.join("sats.csv")).unwrap();
    let labels: Vec<&str> = sats.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    let first_neg = labels.iter().position(|&l| l == "0").unwrap();
    assert!(labels[first_neg..].iter().all(|&l| l == "0"));
    let kv = std::fs::read_to_string(r1.join("report.kv")).unwrap();
    assert!(kv.contains("cic_cols=8,20,31,43\n"), "{kv}");
}

#[test]
fn no_cics_is_a_nonzero_exit() {
    let dir = tempfile::tempdir().unwrap();
    let lot = gen(dir.path(), &["--preset", "null", "--m", "2000"]);
    let o = histcic(&["classify", &lot, "--bpos", "0.9"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("no candidate indicator columns"));
}

#[test]
fn export_then_import_cics() {
    let dir = tempfile::tempdir().unwrap();
    let lot = gen(dir.path(), &[]);
    let cics = dir.path().join("cics.csv");
    let a = histcic(&["classify", &lot, "--export-cics", cics.to_str().unwrap()]);
    assert!(a.status.success());
    let b = histcic(&["classify", &lot, "--import-cics", cics.to_str().unwrap()]);
    assert!(b.status.success());
    let table = |s: String| s.lines().skip_while(|l| !l.starts_with("TP ")).collect::<Vec<_>>().join("\n");
    assert_eq!(table(stdout(&a)), table(stdout(&b)));
}

#[test]
fn union_batch_and_autocics_run() {
    let dir = tempfile::tempdir().unwrap();
    let lot = gen(dir.path(), &["--preset", "separable"]);
    let u = histcic(&["union", &lot, "--seed", "2"]);
    assert!(u.status.success(), "{}", String::from_utf8_lossy(&u.stderr));
    assert!(stdout(&u).contains("Kappa"));
    let b = histcic(&["batch", &lot, "--batch-size", "1000"]);
    assert!(b.status.success());
    assert!(stdout(&b).contains("#Batches with kappa=1.0"));
    let a = histcic(&["autocics", &lot, "--t", "4"]);
    assert!(a.status.success());
    assert!(stdout(&a).contains("cics: 4"));
    assert!(!histcic(&["batch", &lot]).status.success());
}

#[test]
fn steps_and_pass_values() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("steps.csv");
    let mut text = String::from("S1:a,S1:b,S2:c,state\n");
    for i in 0..200 {
        let pos = i % 10 == 0;
        let a = if pos { 9.0 } else { (i % 17) as f64 * 0.1 };
        text.push_str(&format!("{a},{},{},{}\n", (i % 13) as f64, (i % 7) as f64, if pos { "E7" } else { "0" }));
    }
    std::fs::write(&p, text).unwrap();
    let o = histcic(&["classify", p.to_str().unwrap(), "--label-col", "state", "--steps", "S1", "--nb", "50", "--train-pos", "50%", "--train-neg", "20%"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("col    1 a"));
    let bad = histcic(&["classify", p.to_str().unwrap(), "--label-col", "state", "--steps", "S9"]);
    assert!(!bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("unknown step"));
}

#[test]
fn bad_csv_reports_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.csv");
    std::fs::write(&p, "a,label\n1,0\nx,1\n").unwrap();
    let o = histcic(&["classify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let e = String::from_utf8_lossy(&o.stderr);
    assert!(e.contains("row 3") && e.contains("column a"), "{e}");
}
