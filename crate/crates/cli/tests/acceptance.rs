//! Acceptance suite: criteria 1 to 11 run in-process through the library,
//! criterion 12 runs the binary. One pass/fail line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed.

use std::path::Path;
use std::process::Command;

use hardy_core::verify::{self, Criterion, VerifyConfig};

fn report(id: u32, name: &str, pass: bool, detail: &str) -> bool {
    let label = if id == 0 { "pre-check   ".to_string() } else { format!("criterion {id:>2}") };
    println!("{label} [{}] {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn report_criterion(c: &Criterion) -> bool {
    report(c.id, &c.name, c.pass, &format!("measured {:.3e} vs {:.1e}; {}", c.measured, c.threshold, c.detail))
}

fn run_verify(out: &Path, format: &str) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hardy"))
        .args(["verify-all", "--format", format, "--out"])
        .arg(out)
        .output()
        .expect("spawn hardy")
}

fn determinism_and_schema() -> (bool, String) {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, j) = (dir.path().join("a.csv"), dir.path().join("b.csv"), dir.path().join("r.json"));
    let runs = [run_verify(&a, "csv"), run_verify(&b, "csv"), run_verify(&j, "json")];
    let codes: Vec<_> = runs.iter().map(|o| o.status.code()).collect();
    let all_zero = codes.iter().all(|c| *c == Some(0));
    let identical = std::fs::read(&a).ok().is_some_and(|x| Some(x) == std::fs::read(&b).ok());

    let schema_ok = std::fs::read(&j)
        .ok()
        .and_then(|bytes| serde_json::from_slice::<serde_json::Value>(&bytes).ok())
        .is_some_and(|v| {
            let crit = v["criteria"].as_array();
            v["all_pass"] == true
                && crit.is_some_and(|cs| {
                    cs.len() == 12
                        && cs.iter().all(|c| {
                            c["name"].is_string()
                                && c["pass"].is_boolean()
                                && c["measured"].is_number()
                                && c["threshold"].is_number()
                        })
                })
        });
    (all_zero && identical && schema_ok, format!("exit codes {codes:?}; byte-identical CSV: {identical}; JSON schema: {schema_ok}"))
}

fn main() {
    let cfg = VerifyConfig::default();
    let mut all = true;

    // Grid sanity first: every other check relies on it.
    all &= report_criterion(&verify::orthonormality(&cfg));
    let checks: [fn(&VerifyConfig) -> Criterion; 11] = [
        verify::normalization_pins,
        verify::reflection_identity,
        verify::coefficient_bound,
        verify::endpoint_sharpness,
        verify::contour_machinery,
        verify::evolution,
        verify::confinement,
        verify::norm_identities,
        verify::lemma_certificate,
        verify::bound_from_norms,
        verify::hardy_endpoint,
    ];
    for check in checks {
        all &= report_criterion(&check(&cfg));
    }

    let (pass, detail) = determinism_and_schema();
    all &= report(12, "CLI determinism and schema", pass, &detail);

    if !all {
        eprintln!("at least one acceptance criterion failed");
        std::process::exit(1);
    }
}
