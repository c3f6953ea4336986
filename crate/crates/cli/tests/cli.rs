//! End-to-end runs of the `stein-shrink` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use stein_shrink_cli::table;

/// Runs the binary with a whitespace-separated argument line.
fn bin(line: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stein-shrink"))
        .args(line.split_whitespace())
        .output()
        .expect("binary runs")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    table::parse(&std::fs::read_to_string(path).unwrap())
}

struct Scratch {
    dir: tempfile::TempDir,
}

impl Scratch {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

#[test]
fn risk_curve_example() {
    let s = Scratch::new();
    let (out, svg) = (s.file("curve.csv"), s.file("curve.svg"));
    let o = bin(&format!(
        "risk-curve --p 3 --theta 0:50:51 --c 1 --seed 7 --out {} --svg {}",
        out.display(),
        svg.display()
    ));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());

    let (header, rows) = read_csv(&out);
    assert_eq!(
        header.join(","),
        "p,theta,c,delta_exact,delta_approx,delta_mc_mean,delta_mc_stderr"
    );
    assert_eq!(rows.len(), 51);
    assert_eq!(rows[0][0], "3");
    assert_eq!(rows[0][3].parse::<f64>().unwrap(), 1.0);
    assert_eq!(rows[50][1].parse::<f64>().unwrap(), 50.0);
    assert!(rows.iter().all(|r| r[5].is_empty() && r[6].is_empty()));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn risk_curve_with_simulation_columns() {
    let s = Scratch::new();
    let out = s.file("curve.csv");
    let o = bin(&format!(
        "risk-curve --p 5,10 --theta 2 --c 1:3:3 --seed 1 --mc-n 200000 --out {}",
        out.display()
    ));
    assert!(o.status.success());
    let (_, rows) = read_csv(&out);
    assert_eq!(rows.len(), 6);
    for r in rows {
        let exact: f64 = r[3].parse().unwrap();
        let mean: f64 = r[5].parse().unwrap();
        let se: f64 = r[6].parse().unwrap();
        assert!((mean - exact).abs() <= 4.0 * se, "{r:?}");
    }
}

#[test]
fn usage_errors_exit_2() {
    for line in [
        "",
        "bogus",
        "cloud --p 20 --theta 25 --n 10 --seed 7",
        "cloud --p x --theta 25 --n 10 --seed 7 --out o.csv",
        "risk-curve --p 3 --theta 0:1:1 --c 1 --seed 7 --out o.csv",
        "special --p 2.5 --out o.csv",
        "geometry --p 3 --theta 1 --out o.csv --colour red",
        "--threads 0 special --p 5 --out o.csv",
    ] {
        let o = bin(line);
        assert_eq!(o.status.code(), Some(2), "{line}");
        assert!(!o.stderr.is_empty());
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn domain_errors_exit_1() {
    let s = Scratch::new();
    let out = s.file("o.csv");
    for line in [
        "risk-curve --p 2 --theta 0:5:6 --c 1 --seed 7",
        "cloud --p 1 --theta 1 --n 10 --seed 7",
        "geometry --p 5 --theta 0",
        "conditional --p 1.5 --theta 1 --c 1",
        "exceedance --p 5 --theta -1 --n 100 --seed 7",
    ] {
        let o = bin(&format!("{line} --out {}", out.display()));
        assert_eq!(o.status.code(), Some(1), "{line}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(!out.exists());
    }
}

#[test]
fn help_and_version_exit_0() {
    for line in ["--help", "--version", "verify --help"] {
        assert_eq!(bin(line).status.code(), Some(0));
    }
}

#[test]
fn every_subcommand_writes_its_schema() {
    let s = Scratch::new();
    let out = s.file("o.csv");
    for (line, header, rows) in [
        (
            "cloud --p 20 --theta 25 --n 2000 --seed 7",
            "idx,x1,r",
            2000,
        ),
        (
            "conditional --p 3 --theta 2 --c 1",
            "p,theta,c,l_plus_1,l_plus_2,l_minus_1,l_minus_2,delta_direct,delta_closed",
            1,
        ),
        (
            "geometry --p 20 --theta 25",
            "ax,ay,bx,by,cx,cy,len_ab,len_ob,len_bc,shrink_factor",
            1,
        ),
        ("special --p 5,10,17,26", "p,e_r_exact,e_r_asymptotic", 4),
        (
            "exceedance --p 20 --theta 1,1e4 --n 10000 --seed 3",
            "p,theta,prob,stderr",
            2,
        ),
    ] {
        let o = bin(&format!("{line} --out {}", out.display()));
        assert!(
            o.status.success(),
            "{line}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let (h, r) = read_csv(&out);
        assert_eq!(h.join(","), header);
        assert_eq!(r.len(), rows);
    }

    // Worked instance: both routes give 19/33, and p is written as a real.
    bin(&format!(
        "conditional --p 3 --theta 2 --c 1 --out {}",
        out.display()
    ));
    let (_, rows) = read_csv(&out);
    assert_eq!(rows[0][0], "3.0000000000000000e0");
    for field in &rows[0][7..] {
        assert!((field.parse::<f64>().unwrap() - 19.0 / 33.0).abs() < 1e-15);
    }
}

#[test]
fn csv_fields_round_trip() {
    let s = Scratch::new();
    let out = s.file("cloud.csv");
    bin(&format!(
        "cloud --p 7 --theta 1.5 --n 300 --seed 9 --out {}",
        out.display()
    ));
    let text = std::fs::read_to_string(&out).unwrap();
    let (header, rows) = table::parse(&text);
    let mut rebuilt = table::Table::new(&["idx", "x1", "r"]);
    for r in &rows {
        rebuilt.push(vec![
            r[0].parse::<usize>().unwrap().into(),
            r[1].parse::<f64>().unwrap().into(),
            r[2].parse::<f64>().unwrap().into(),
        ]);
    }
    assert_eq!(header.join(","), "idx,x1,r");
    assert_eq!(rebuilt.render(), text);
}

#[test]
fn output_is_byte_identical_across_threads() {
    let s = Scratch::new();
    let mut seen = Vec::new();
    for (i, threads) in ["", "--threads 1", "--threads 3", ""]
        .into_iter()
        .enumerate()
    {
        let out = s.file(&format!("{i}.csv"));
        let o = bin(&format!(
            "{threads} risk-curve --p 4 --theta 0:3:4 --c 2 --seed 5 --mc-n 50000 --out {}",
            out.display()
        ));
        assert!(o.status.success());
        seen.push(std::fs::read(&out).unwrap());
    }
    assert!(seen.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn verify_fast_reports_every_criterion() {
    let o = bin("verify --fast --seed 7");
    let stdout = String::from_utf8_lossy(&o.stdout);
    let verdicts: Vec<&str> = stdout
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .collect();
    assert_eq!(verdicts.len(), 14, "{stdout}");
    let all_pass = verdicts.iter().all(|l| l.starts_with("PASS"));
    assert_eq!(o.status.code(), Some(if all_pass { 0 } else { 1 }));
}
