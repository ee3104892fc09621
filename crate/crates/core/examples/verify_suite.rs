//! Runs a registered suite and prints its report.
//!
//! cargo run --release --example verify_suite -- [suite] [count]

use coalition::harness::{run_suite, suite_names, GenSpec, Kind};

fn main() -> coalition::Result<()> {
    let mut args = std::env::args().skip(1);
    let suite = args.next().unwrap_or_else(|| "gam-facts".into());
    let count = args.next().and_then(|c| c.parse().ok()).unwrap_or(100);
    println!("registered: {}", suite_names().collect::<Vec<_>>().join(", "));
    let report = run_suite(&suite, &GenSpec::random(Kind::Gam, 42, count))?;
    for c in &report.checks {
        println!("{:<36} {:<4} {} cases", c.name, if c.passed { "ok" } else { "FAIL" }, c.cases);
    }
    println!("{} models in {} ms, passed: {}", report.models, report.elapsed_ms, report.passed);
    Ok(())
}
