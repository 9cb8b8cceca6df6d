//! Grid sweep of exact J against every bound expression.

use congsum_core::congruence::{sweep_j, SweepCell};

use crate::config::Resolved;
use crate::csvout::{self, CsvDoc};
use crate::CliError;

pub const HEADER: [&str; 23] = [
    "index",
    "p",
    "h",
    "family",
    "cell_seed",
    "ell",
    "o1_constant",
    "o1_exponent",
    "m",
    "mplus",
    "j_exact",
    "main_term",
    "basic_error",
    "basic_c",
    "bound_basic",
    "bound_moderate",
    "bound_garaev",
    "thm1_bound",
    "thm1_regime",
    "thm1_ratio",
    "bound_largeh",
    "largeh_hypothesis",
    "error",
];

pub fn run(resolved: &Resolved) -> Result<(), CliError> {
    let cfg = resolved
        .file
        .jsweep
        .as_ref()
        .ok_or_else(|| CliError::Config("the config has no [jsweep] section".into()))?;

    let mut cells = Vec::new();
    for &p in &cfg.primes {
        for &h in &cfg.h_values {
            for spec in &cfg.sets {
                cells.push(SweepCell {
                    p,
                    h,
                    family: spec.to_family()?,
                });
            }
        }
    }

    let rows = sweep_j(&cells, cfg.ell.unwrap_or(2), resolved.o1, resolved.seed)
        .map_err(|e| CliError::Config(e.to_string()))?;

    let mut doc = CsvDoc::new(HEADER);
    for row in &rows {
        doc.push(vec![
            csvout::show(row.index),
            csvout::show(row.p),
            csvout::show(row.h),
            row.family.clone(),
            csvout::show(row.cell_seed),
            csvout::show(row.ell),
            csvout::float(row.o1.constant),
            csvout::float(row.o1.exponent),
            csvout::opt(row.m),
            csvout::opt(row.mplus),
            csvout::opt(row.j_exact),
            csvout::opt_float(row.main_term),
            csvout::opt_float(row.basic_error),
            csvout::opt_float(row.basic_c),
            csvout::opt_float(row.bound_basic),
            csvout::opt_float(row.bound_moderate),
            csvout::opt_float(row.bound_garaev),
            csvout::opt_float(row.thm1_bound),
            csvout::opt(row.thm1_regime),
            csvout::opt_float(row.thm1_ratio),
            csvout::opt_float(row.bound_largeh),
            csvout::opt(row.largeh_hypothesis),
            csvout::opt(row.error.clone()),
        ]);
    }
    doc.write(resolved.out.as_deref())?;

    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    eprintln!("jsweep: {} cells, {} flagged", rows.len(), failed);
    Ok(())
}
