//! One PASS/FAIL line per acceptance criterion, with its time budget.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use pm_cli::examples::{example, EXAMPLES};
use pm_cli::verify::{self, Report};
use pm_cli::CliError;

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn timed(
    name: &'static str,
    budget: Option<Duration>,
    f: impl FnOnce() -> Result<Vec<Report>, CliError>,
) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (mut pass, mut detail) = match result {
        Ok(reports) => {
            let failed: Vec<String> = reports
                .iter()
                .flat_map(|r| r.checks.iter().filter(|c| !c.pass).map(move |c| format!("{}/{}: {}", r.case, c.name, c.detail)))
                .collect();
            let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
            if failed.is_empty() {
                (true, format!("{checks} checks"))
            } else {
                (false, failed.join("; "))
            }
        }
        Err(e) => (false, format!("error: {e}")),
    };
    match budget {
        Some(b) if elapsed > b => {
            pass = false;
            detail = format!("{detail}; took {elapsed:?}, budget {b:?}");
        }
        Some(b) => detail = format!("{detail}; {elapsed:?} (budget {b:?})"),
        None => detail = format!("{detail}; {elapsed:?}"),
    }
    Outcome { name, pass, detail }
}

fn run_pm(config: &Path, out: &Path) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_pm"))
        .args(["run", "--config"])
        .arg(config)
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    if status.status.success() {
        Ok(())
    } else {
        Err(String::from_utf8_lossy(&status.stderr).into_owned())
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().expect("temporary directory");
    let mut failures = Vec::new();
    for name in EXAMPLES {
        let config = dir.path().join(format!("{name}.json"));
        fs::write(&config, example(name).expect("bundled example").to_json()).expect("write config");
        let (a, b) = (dir.path().join(format!("{name}.a.jsonl")), dir.path().join(format!("{name}.b.jsonl")));
        if let Err(e) = run_pm(&config, &a).and_then(|_| run_pm(&config, &b)) {
            failures.push(format!("{name}: {e}"));
            continue;
        }
        let (ta, tb) = (fs::read(&a).expect("trace"), fs::read(&b).expect("trace"));
        if ta.is_empty() || ta != tb {
            failures.push(format!("{name}: traces differ"));
        }
    }
    Outcome {
        name: "determinism",
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("byte-identical traces for {}", EXAMPLES.join(", "))
        } else {
            failures.join("; ")
        },
    }
}

fn main() {
    let ms = Duration::from_millis;
    let outcomes = vec![
        timed("notation-calculus", Some(ms(1)), || Ok(vec![verify::notation_calculus()])),
        timed("dem-single-step", Some(ms(1)), || Ok(vec![verify::dem_step()?])),
        timed("dem-full-run", Some(ms(100)), || Ok(vec![verify::dem_run()?])),
        timed("gaussian-elimination", Some(ms(1000)), || Ok(vec![verify::gauss_reference()?])),
        timed("triangulation", Some(ms(100)), || Ok(vec![verify::tri_refine()?])),
        timed("pse-diffusion", Some(ms(1000)), || Ok(vec![verify::pse_diffusion()?])),
        timed("lj-md", Some(ms(30_000)), || Ok(vec![verify::lj_energy()?])),
        timed("order-independence", None, || Ok(vec![verify::pse_order(100)?])),
        timed("accelerated-neighborhoods", Some(ms(2000)), || Ok(vec![verify::accel_equivalence(1000)?])),
        determinism(),
    ];
    for o in &outcomes {
        println!("{} {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.name).collect();
    println!("acceptance: {} of {} criteria passed", outcomes.len() - failed.len(), outcomes.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
