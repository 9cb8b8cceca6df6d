//! Single J evaluation by all three algorithms.

use congsum_core::congruence::{j_count_charformula, j_count_fast, j_count_oracle};
use congsum_core::{Error, FieldCtx, JQuery};

use crate::config::Resolved;
use crate::csvout::{self, CsvDoc};
use crate::CliError;

pub fn run(resolved: &Resolved) -> Result<(), CliError> {
    let cfg = resolved
        .file
        .jcount
        .as_ref()
        .ok_or_else(|| CliError::Config("the config has no [jcount] section".into()))?;

    let ctx = FieldCtx::new(cfg.p).map_err(|e| CliError::Config(e.to_string()))?;
    let mset = cfg.set.build(&ctx, resolved.seed)?;
    let query = JQuery::new(&ctx, cfg.h, cfg.shift.unwrap_or(0), mset)
        .map_err(|e| CliError::Config(e.to_string()))?;

    let fast = j_count_fast(&ctx, &query);
    let oracle = match j_count_oracle(&ctx, &query) {
        Ok(v) => Some(v),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(CliError::Runtime(e.to_string())),
    };
    let (value, rounded) =
        j_count_charformula(&ctx, &query).map_err(|e| CliError::Runtime(e.to_string()))?;

    match oracle {
        Some(v) => println!("j_count_oracle      = {v}"),
        None => println!("j_count_oracle      = skipped (H*M exceeds the budget)"),
    }
    println!("j_count_fast        = {fast}");
    println!("j_count_charformula = {value:.6} -> {rounded}");

    if oracle.is_some_and(|v| v != fast) || rounded != fast {
        return Err(CliError::Assertion(format!(
            "the three algorithms disagree: oracle={oracle:?}, fast={fast}, char={rounded}"
        )));
    }

    if resolved.out.is_some() {
        let mut doc = CsvDoc::new([
            "p", "h", "shift", "set", "m", "mplus", "seed", "j_oracle", "j_fast", "j_char_float",
            "j_char_rounded",
        ]);
        doc.push(vec![
            csvout::show(cfg.p),
            csvout::show(cfg.h),
            csvout::show(cfg.shift.unwrap_or(0)),
            cfg.set.label(),
            csvout::show(query.mset().cardinality()),
            csvout::show(query.mset().max_element()),
            csvout::show(resolved.seed),
            csvout::opt(oracle),
            csvout::show(fast),
            csvout::float(value),
            csvout::show(rounded),
        ]);
        doc.write(resolved.out.as_deref())?;
    }
    Ok(())
}
