//! The `verify` subcommand: runs every criterion, prints one pass/fail line
//! each, writes the deterministic payload CSV, and exits nonzero on failure.

use crate::acceptance::{run_verify, SuiteConfig};
use crate::config::Resolved;
use crate::CliError;

pub fn run(resolved: &Resolved) -> Result<(), CliError> {
    let cfg = SuiteConfig {
        seed: resolved.seed,
        o1: resolved.o1,
        cache: resolved.cache.clone(),
    };
    let run = run_verify(&cfg, resolved.jobs).map_err(CliError::Runtime)?;

    for outcome in &run.outcomes {
        println!("{}", outcome.line());
    }
    if resolved.out.is_some() {
        run.doc.write(resolved.out.as_deref())?;
    }

    let failures: Vec<u32> = run
        .outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    if failures.is_empty() {
        println!("verify: all {} criteria passed", run.outcomes.len());
        Ok(())
    } else {
        Err(CliError::Assertion(format!(
            "criteria {failures:?} failed"
        )))
    }
}
