//! One line per acceptance criterion; exits nonzero if any line is FAIL.
//!
//! Criteria 1–11 run the library checks directly; criterion 12 runs the
//! shipped binary's `verify` command and requires exit status 0.

use std::process::Command;
use std::time::Instant;

use parabound::verify::{self, CheckOutcome};

fn main() {
    let checks: [fn() -> CheckOutcome; 11] = [
        verify::check_unimodularity,
        verify::check_normalization,
        verify::check_rectangular_oracle,
        verify::check_hyperbolic_saturation,
        verify::check_dominance,
        verify::check_adiabatic_tightening,
        verify::check_frame_independence,
        verify::check_interaction_picture,
        verify::check_optimizer,
        verify::check_integrator_order,
        verify::check_constant_reduction,
    ];
    let mut failed = Vec::new();
    for check in checks {
        let start = Instant::now();
        let c = check();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "{} criterion {:>2} {}: {} [{secs:.2} s]",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            c.detail
        );
        if !c.passed {
            failed.push(c.id);
        }
    }

    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_parabound")).args(["verify", "--quiet"]).output().unwrap();
    let code = out.status.code();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    let n = report["checks"].as_array().map_or(0, Vec::len);
    let ok = code == Some(0) && report["passed"] == true && n == 11;
    println!(
        "{} criterion 12 verify command: exit {:?}, {n} checks reported [{:.2} s]",
        if ok { "PASS" } else { "FAIL" },
        code,
        start.elapsed().as_secs_f64()
    );
    if !ok {
        failed.push(12);
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
