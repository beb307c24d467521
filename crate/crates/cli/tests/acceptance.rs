//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Data: the built-in zoo plus the Witt models for (p, n) in
//! {(2, 2), (2, 3), (3, 2), (3, 3)}. Expected shapes are computed here by
//! filtering group elements on their lower-left entry, independently of the
//! library's refinement code.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::Value;
use zipcalc::catalog::{build_small_zoo, build_witt_zip, WittZipConfig};
use zipcalc::coset::{double_coset_of, double_cosets};
use zipcalc::equivalence::{
    coarsening_check, fine_orbits, refinement_bijection_check_with, torsor_analysis, zip_classes,
};
use zipcalc::forest::build_forest;
use zipcalc::zip::e_infinity_characterization_check;
use zipcalc::{ClassReport, Elem, FiniteGroup, Subgroup, ZipDatum};

/// Criterion 1 wall-clock bound per configuration.
const CLASS_RUNTIME_LIMIT: Duration = Duration::from_secs(10);

const WITT_CONFIGS: [(u32, u32); 4] = [(2, 2), (2, 3), (3, 2), (3, 3)];

struct Datum {
    name: String,
    z: ZipDatum,
    classes: ClassReport,
}

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn lower_left_divisible(group: &Arc<FiniteGroup>, d: u64) -> BTreeSet<Elem> {
    group
        .elements()
        .filter(|&m| (group.key(m)[2] as u64).is_multiple_of(d))
        .collect()
}

fn set(s: &Subgroup) -> BTreeSet<Elem> {
    s.members().iter().copied().collect()
}

fn witt(p: u32, n: u32) -> (ZipDatum, Elem) {
    build_witt_zip(&WittZipConfig::new(p, n).unwrap()).unwrap()
}

fn dataset() -> Vec<Datum> {
    let mut data: Vec<(String, ZipDatum)> = build_small_zoo()
        .into_iter()
        .map(|e| (format!("zoo {}", e.name), e.datum))
        .collect();
    for (p, n) in WITT_CONFIGS {
        data.push((format!("witt p={p} n={n}"), witt(p, n).0));
    }
    data.into_iter()
        .map(|(name, z)| {
            let classes = zip_classes(&z).unwrap_or_else(|e| panic!("{name}: {e}"));
            Datum { name, z, classes }
        })
        .collect()
}

/// Runs `check` on every datum, failing on the first datum that does not pass.
fn over_all(data: &[Datum], mut check: impl FnMut(&Datum) -> Result<bool, String>) -> Outcome {
    for d in data {
        match check(d) {
            Ok(true) => {}
            Ok(false) => return Outcome::new(false, format!("fails on {}", d.name)),
            Err(e) => return Outcome::new(false, format!("{}: {e}", d.name)),
        }
    }
    Outcome::new(true, format!("{} data", data.len()))
}

fn run_cli(config: &Path, command: &str) -> (Option<i32>, Vec<u8>, Vec<u8>) {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_zipcalc"))
        .args(["--config", config.to_str().unwrap(), "--command", command, "--out"])
        .arg(dir.path())
        .output()
        .expect("binary runs");
    let json = std::fs::read(dir.path().join(format!("{command}.json"))).unwrap_or_default();
    let dot = std::fs::read(dir.path().join("forest.dot")).unwrap_or_default();
    (out.status.code(), json, dot)
}

fn witt_config_file(dir: &Path, p: u32, n: u32) -> std::path::PathBuf {
    let path = dir.join(format!("witt-{p}-{n}.toml"));
    std::fs::write(&path, format!("[preset]\nkind = \"witt\"\np = {p}\nn = {n}\n")).unwrap();
    path
}

fn criterion_1() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut details = Vec::new();
    for (p, n) in [(2, 2), (2, 3)] {
        let config = witt_config_file(dir.path(), p, n);
        let start = Instant::now();
        let (code, json, _) = run_cli(&config, "classes");
        let elapsed = start.elapsed();
        let report: Value = match serde_json::from_slice(&json) {
            Ok(v) => v,
            Err(e) => return Outcome::new(false, format!("p={p} n={n}: exit {code:?}, bad report: {e}")),
        };
        let (z, w) = witt(p, n);
        let g = z.target_group();
        let left = z.tau().image(z.e()).unwrap();
        let right = z.sigma().image(z.e()).unwrap();
        let id_coset = double_coset_of(&left, g.identity(), &right).unwrap();
        let w_coset = double_coset_of(&left, w, &right).unwrap();
        let witnesses: Vec<Elem> = report["classes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| g.parse(c["witness"].as_str().unwrap()).unwrap())
            .collect();
        let hits_id = witnesses.iter().filter(|x| id_coset.binary_search(x).is_ok()).count();
        let hits_w = witnesses.iter().filter(|x| w_coset.binary_search(x).is_ok()).count();
        let ok = code == Some(0)
            && report["class_count"] == 2
            && hits_id == 1
            && hits_w == 1
            && elapsed < CLASS_RUNTIME_LIMIT;
        if !ok {
            return Outcome::new(
                false,
                format!(
                    "p={p} n={n}: exit {code:?}, {} classes, {elapsed:?}",
                    report["class_count"]
                ),
            );
        }
        details.push(format!("p={p} n={n}: 2 classes in {:.2}s", elapsed.as_secs_f64()));
    }
    Outcome::new(true, details.join("; "))
}

fn criterion_2() -> Outcome {
    for p in [2u32, 3] {
        let n = 3;
        let (z, _) = witt(p, n);
        let (em, gm) = (p.pow(n) as u64, p.pow(n - 1) as u64);
        let trace = z.refine_to_stationary();
        for i in 0..=trace.stationary_index() {
            let e_div = (p as u64).pow(i as u32 + 1).min(em);
            let g_div = (p as u64).pow(i as u32).min(gm);
            if set(trace.e_at(i)) != lower_left_divisible(z.source_group(), e_div)
                || set(trace.g_at(i)) != lower_left_divisible(z.target_group(), g_div)
            {
                return Outcome::new(false, format!("p={p}: stage {i} has the wrong shape"));
            }
        }
        if set(trace.e_infinity()) != lower_left_divisible(z.source_group(), em)
            || set(trace.g_infinity()) != lower_left_divisible(z.target_group(), gm)
        {
            return Outcome::new(false, format!("p={p}: E_∞ or G_∞ is not upper triangular"));
        }
    }
    Outcome::new(true, "p=2 and p=3 at n=3, all stages")
}

fn criterion_3() -> Outcome {
    for (p, n) in WITT_CONFIGS {
        let (z, w) = witt(p, n);
        let twisted = z.twist(w).unwrap();
        let depth = twisted.refine_to_stationary().stationary_index() + 2;
        let e_shape = lower_left_divisible(z.source_group(), p as u64);
        let g_shape = lower_left_divisible(z.target_group(), p as u64);
        let mut zi = twisted;
        for i in 1..=depth {
            zi = zi.refine().unwrap();
            if set(zi.e()) != e_shape || set(zi.g()) != g_shape {
                return Outcome::new(false, format!("p={p} n={n}: stage {i} has the wrong shape"));
            }
        }
    }
    Outcome::new(true, "antidiagonal twist, all four Witt configs")
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut configs = vec![witt_config_file(dir.path(), 2, 2), witt_config_file(dir.path(), 2, 3)];
    let zoo = dir.path().join("zoo.toml");
    std::fs::write(&zoo, "[preset]\nkind = \"zoo\"\nname = \"c2cubed-shift\"\n").unwrap();
    configs.push(zoo);
    for config in &configs {
        for command in ["classes", "forest"] {
            let first = run_cli(config, command);
            let second = run_cli(config, command);
            if first.0 != Some(0) || first.1.is_empty() || first != second {
                return Outcome::new(false, format!("{} {command} differs between runs", config.display()));
            }
        }
    }
    Outcome::new(true, format!("{} configs, classes and forest", configs.len()))
}

fn main() {
    let start = Instant::now();
    let data = dataset();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();

    results.push((1, "Witt class count", criterion_1()));
    results.push((2, "Witt refinement shapes", criterion_2()));
    results.push((3, "twisted Witt stabilization", criterion_3()));
    results.push((
        4,
        "refinement invariance",
        over_all(&data, |d| {
            let t0 = d.z.refine_to_stationary();
            let t1 = d.z.refine().map_err(|e| e.to_string())?.refine_to_stationary();
            Ok(t0.e_infinity() == t1.e_infinity() && t0.g_infinity() == t1.g_infinity())
        }),
    ));
    results.push((
        5,
        "one-step bijection",
        over_all(&data, |d| {
            let left = d.z.tau().image(d.z.e()).map_err(|e| e.to_string())?;
            let right = d.z.sigma().image(d.z.e()).map_err(|e| e.to_string())?;
            let roots = double_cosets(d.z.g(), &left, &right).map_err(|e| e.to_string())?;
            for x in roots.representatives() {
                if !refinement_bijection_check_with(&d.z, x, &d.classes).map_err(|e| e.to_string())? {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
    ));
    results.push((
        6,
        "E_∞ characterization",
        over_all(&data, |d| {
            e_infinity_characterization_check(&d.z, &d.z.refine_to_stationary()).map_err(|e| e.to_string())
        }),
    ));
    results.push((
        7,
        "torsor property",
        over_all(&data, |d| {
            for c in d.classes.classes() {
                let t = torsor_analysis(&d.z, c.witness).map_err(|e| e.to_string())?;
                if !t.passed || t.class_size * t.e_infinity_order != d.z.e().order() * t.g_infinity_order {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
    ));
    results.push((
        8,
        "forest limit theorem",
        over_all(&data, |d| {
            let f = build_forest(&d.z).map_err(|e| e.to_string())?;
            Ok(
                f.leaves().len() == d.classes.len()
                    && f.limit_bijection_check(&d.classes).map_err(|e| e.to_string())?,
            )
        }),
    ));
    results.push((
        9,
        "coarsening",
        over_all(&data, |d| {
            let fine = fine_orbits(&d.z).map_err(|e| e.to_string())?;
            coarsening_check(&fine, &d.classes).map_err(|e| e.to_string())
        }),
    ));
    results.push((10, "determinism", criterion_10()));

    let mut failed = 0;
    for (n, name, outcome) in &results {
        let mark = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} [{mark}] {name}: {}", outcome.detail);
        failed += usize::from(!outcome.passed);
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
