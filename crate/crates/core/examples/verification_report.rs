//! Runs the named checks and prints a one-line summary per check, then
//! the JSON report for a single check.

use hankel_nd::verify::{run_suite, VerifyConfig};

fn main() -> hankel_nd::Result<()> {
    let config = VerifyConfig::default();
    let report = run_suite("all", &config)?;
    for c in &report.checks {
        println!(
            "{:<20} {:>12.3e} <= {:<8.0e} {}",
            c.name,
            c.max_residual,
            c.tolerance,
            if c.pass { "ok" } else { "FAIL" }
        );
    }
    println!("all pass: {}", report.all_pass());

    let single = run_suite("theorem2", &VerifyConfig { seed: 42, ..config })?;
    println!("{}", single.to_json()?);
    Ok(())
}
