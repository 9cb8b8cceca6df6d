//! Table builds with envelope checks, optionally through the disk cache.

use congsum_core::kloosterman::{load_or_build, ConvolutionMethod};
use congsum_core::FieldCtx;

use crate::config::Resolved;
use crate::csvout::{self, CsvDoc};
use crate::CliError;

pub fn run(resolved: &Resolved) -> Result<(), CliError> {
    let cfg = resolved
        .file
        .kloosterman
        .as_ref()
        .ok_or_else(|| CliError::Config("the config has no [kloosterman] section".into()))?;

    let method = match cfg.method.as_deref() {
        None | Some("direct") => ConvolutionMethod::Direct,
        Some("fft") => ConvolutionMethod::Fft,
        Some(other) => {
            return Err(CliError::Config(format!(
                "unknown convolution method '{other}' (expected 'direct' or 'fft')"
            )))
        }
    };

    let mut doc = CsvDoc::new([
        "p",
        "r",
        "method",
        "cache_hit",
        "generator",
        "max_abs",
        "deligne_bound",
        "deligne_margin",
        "max_imag_abs",
    ]);

    for &p in &cfg.primes {
        let ctx = FieldCtx::new(p).map_err(|e| CliError::Config(e.to_string()))?;
        for &r in &cfg.r_values {
            if r == 0 {
                return Err(CliError::Config("r values must be at least 1".into()));
            }
            let (table, cache_hit) =
                load_or_build(&ctx, r, resolved.cache.as_deref(), method)
                    .map_err(|e| CliError::Runtime(e.to_string()))?;
            let max_abs = table.max_abs();
            if max_abs > r as f64 + 1e-8 {
                return Err(CliError::Assertion(format!(
                    "|K_{r}| envelope violated at p={p}: {max_abs}"
                )));
            }
            doc.push(vec![
                csvout::show(p),
                csvout::show(r),
                format!("{method:?}").to_lowercase(),
                csvout::show(cache_hit),
                csvout::show(table.generator()),
                csvout::float(max_abs),
                csvout::float(r as f64),
                csvout::float(r as f64 - max_abs),
                csvout::float(table.max_imag_abs()),
            ]);
        }
    }

    doc.write(resolved.out.as_deref())?;
    eprintln!("kloosterman: {} tables", doc.len());
    Ok(())
}
