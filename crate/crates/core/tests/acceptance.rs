//! One test per acceptance criterion. Each prints a single
//! `ACCEPTANCE <criterion>: PASS|FAIL` line with its timing and worst metric.

use std::io::Write;
use std::time::{Duration, Instant};

use peterson_toric::par::Exec;
use peterson_toric::verify::{
    verify_fan, verify_homeomorphism, verify_polytope, verify_psi_cells, verify_q_pattern, verify_rietsch_param,
    verify_whitney, CheckResult, Status,
};

const SEED: u64 = 20240917;

fn criterion(name: &str, budget: Duration, run: impl FnOnce() -> Vec<CheckResult>) {
    let start = Instant::now();
    let results = run();
    let elapsed = start.elapsed();
    let failed: Vec<&CheckResult> = results.iter().filter(|r| r.status != Status::Pass).collect();
    let in_time = elapsed <= budget;
    let pass = failed.is_empty() && in_time && !results.is_empty();
    // straight to the handle so the line survives libtest's output capture
    let line = format!(
        "ACCEPTANCE {name}: {} ({} checks, {} failed, {:.2}s of {}s budget)\n",
        if pass { "PASS" } else { "FAIL" },
        results.len(),
        failed.len(),
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
    for f in &failed {
        println!("  {}", serde_json::to_string(f).unwrap());
    }
    assert!(in_time, "{name} took {elapsed:?}, budget {budget:?}");
    assert!(failed.is_empty(), "{name}: {} failing checks", failed.len());
}

#[test]
fn fan_structure() {
    criterion("fan structure", Duration::from_secs(10), || {
        (2..=6).flat_map(|n| verify_fan(n, SEED, 10_000, Exec::default())).collect()
    });
}

#[test]
fn polytope() {
    criterion("polytope", Duration::from_secs(30), || {
        (2..=6).flat_map(|n| verify_polytope(n, SEED, Exec::default())).collect()
    });
}

#[test]
fn q_pattern() {
    criterion("q-pattern", Duration::from_secs(60), || {
        (2..=6).flat_map(|n| verify_q_pattern(n, 50, SEED, Exec::default())).collect()
    });
}

#[test]
fn rietsch_parametrization() {
    criterion("Rietsch parametrization", Duration::from_secs(120), || {
        verify_rietsch_param(5, 1000, SEED, 1e-8, Exec::default())
    });
}

#[test]
fn stratum_correspondence() {
    criterion("stratum correspondence", Duration::from_secs(300), || {
        (2..=5)
            .flat_map(|n| verify_psi_cells(n, 25, 1000, SEED, 1e-8, Exec::default()))
            .filter(|r| r.check_id != "psi.round_trip")
            .collect()
    });
}

#[test]
fn cube_homeomorphism() {
    criterion("cube homeomorphism", Duration::from_secs(300), || {
        (2..=4).flat_map(|n| verify_homeomorphism(n, 25, 1000, SEED, 1e-8, Exec::default())).collect()
    });
}

#[test]
fn whitney_engine() {
    criterion("Whitney/TNN engine", Duration::from_secs(30), || {
        (2..=5).flat_map(|n| verify_whitney(n, 1000, SEED, Exec::default())).collect()
    });
}
