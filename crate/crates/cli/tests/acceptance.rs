//! One line per acceptance criterion; exits nonzero if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use barcof::commands::report_json;
use barcof::format;
use barcof_core::approx::hocolim;
use barcof_core::homology::homology;
use barcof_core::verify::{self, Report, Suite, VerifyConfig};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn suites(names: &[Suite]) -> Result<(), String> {
    let config = VerifyConfig::default();
    let mut problems = Vec::new();
    for &s in names {
        let r: Report = verify::run(s, &config);
        for c in r.checks.iter().filter(|c| c.status != verify::Status::Pass) {
            problems.push(format!("{}/{} {}: {}", r.suite, c.id, c.status.as_str(), c.detail));
        }
        if r.checks.is_empty() {
            problems.push(format!("{} ran no checks", r.suite));
        }
    }
    match problems.is_empty() {
        true => Ok(()),
        false => Err(problems.join("; ")),
    }
}

/// Rank over the rationals by fraction-free elimination.
fn rank(mut m: Vec<Vec<i64>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            let (a, b) = (m[r][c], m[i][c]);
            for j in 0..cols {
                m[i][j] = a * m[i][j] - b * m[r][j];
            }
        }
        r += 1;
    }
    r
}

/// Betti numbers of the double mapping cylinder of `a ← s → c` for finite
/// sets, assembled as a graph on `a ⊔ s ⊔ c` with edges `{x, f(x)}` and
/// `{x, g(x)}`.
fn cylinder(a: usize, s: usize, c: usize, f: &[usize], g: &[usize]) -> [usize; 4] {
    let vertices = a + s + c;
    let mut d1 = Vec::new();
    for x in 0..s {
        for end in [f[x], a + s + g[x]] {
            let mut row = vec![0i64; vertices];
            row[a + x] += 1;
            row[end] -= 1;
            d1.push(row);
        }
    }
    let r = rank(d1);
    [vertices - r, 2 * s - r, 0, 0]
}

fn topology() -> Result<(), String> {
    suites(&[Suite::Topology])?;
    let x = format::load_diagram(&data("circle_pushout.json")).map_err(|e| e.to_string())?;
    let h = hocolim(&x, None).map_err(|e| e.to_string())?;
    let hom = homology(&h.sset, 3).map_err(|e| e.to_string())?;
    let oracle = cylinder(1, 2, 1, &[0, 0], &[0, 0]);
    if hom.betti() != oracle || oracle != [1, 1, 0, 0] || hom.groups.iter().any(|g| !g.torsion.is_empty()) {
        return Err(format!("tensor formula {:?}, cylinder {oracle:?}", hom.betti()));
    }
    Ok(())
}

fn cli_bytes(args: &[&str]) -> Result<Vec<(String, Vec<u8>)>, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_barcof"))
        .arg("--out")
        .arg(dir.path())
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("barcof {args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir.path())
        .map_err(|e| e.to_string())?
        .map(|e| {
            let e = e.expect("dir entry");
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).expect("readable"))
        })
        .collect();
    files.sort();
    Ok(files)
}

fn structure() -> Result<(), String> {
    suites(&[Suite::Structure])?;
    let config = VerifyConfig::default();
    let a = format::to_json(&report_json(&verify::run(Suite::Structure, &config)));
    let b = format::to_json(&report_json(&verify::run(Suite::Structure, &config)));
    if a != b {
        return Err("structure reports differ between runs".into());
    }
    let pushout = data("circle_pushout.json");
    let p = pushout.to_str().expect("utf-8 path");
    let runs: [&[&str]; 3] = [
        &["hocolim", "--diagram", p, "--lcolim", "--compare"],
        &["approx", "--diagram", p, "--subcat", "a,c"],
        &["verify", "lambda"],
    ];
    for args in runs {
        if cli_bytes(args)? != cli_bytes(args)? {
            return Err(format!("barcof {args:?} is not byte-identical across runs"));
        }
    }
    Ok(())
}

/// Name, time limit in seconds, and the check.
type Criterion = (&'static str, u64, Box<dyn Fn() -> Result<(), String>>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("skeleton reconstruction", 1, Box::new(|| suites(&[Suite::Skeleton]))),
        ("λ isomorphism", 5, Box::new(|| suites(&[Suite::Lambda]))),
        ("ϑ weak equivalence", 10, Box::new(|| suites(&[Suite::Theta]))),
        ("bar approximation is a D-equivalence", 30, Box::new(|| suites(&[Suite::Approx]))),
        ("hocolim ≅ L colim", 30, Box::new(|| suites(&[Suite::Comparison, Suite::NatVariant]))),
        ("known topology", 10, Box::new(topology)),
        ("adjunction bijections", 60, Box::new(|| suites(&[Suite::Adjunction]))),
        ("structural invariants and determinism", 10, Box::new(structure)),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let verdict = match (&result, took < Duration::from_secs(*limit)) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over the {limit} s limit)"),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("{verdict} criterion {}: {name} in {:.3} s", i + 1, took.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
