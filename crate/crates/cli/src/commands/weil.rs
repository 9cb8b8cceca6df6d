//! Randomized square-free coprime corpus for the complete character sum
//! envelope; reports the measured corpus constant.

use congsum_core::characters::weil_corpus;
use congsum_core::{cell_seed, FieldCtx};

use crate::config::Resolved;
use crate::csvout::{self, CsvDoc};
use crate::CliError;

pub fn run(resolved: &Resolved) -> Result<(), CliError> {
    let cfg = resolved
        .file
        .weil
        .as_ref()
        .ok_or_else(|| CliError::Config("the config has no [weil] section".into()))?;

    let mut doc = CsvDoc::new([
        "record", "p", "index", "chi_index", "f", "g", "deg_f", "deg_g", "value_re", "value_im",
        "value_abs", "bound", "ratio",
    ]);

    let mut measured: f64 = 0.0;
    for (pi, &p) in cfg.primes.iter().enumerate() {
        let ctx = FieldCtx::new(p).map_err(|e| CliError::Config(e.to_string()))?;
        let samples = weil_corpus(
            &ctx,
            cfg.samples_per_prime,
            cfg.max_total_degree,
            cell_seed(resolved.seed, pi as u64),
        );
        for (i, s) in samples.iter().enumerate() {
            measured = measured.max(s.ratio);
            doc.push(vec![
                "sample".to_string(),
                csvout::show(p),
                csvout::show(i),
                csvout::show(s.chi_index),
                s.f.to_string(),
                s.g.to_string(),
                csvout::opt(s.f.degree()),
                csvout::opt(s.g.degree()),
                csvout::float(s.value.re),
                csvout::float(s.value.im),
                csvout::float(s.value.norm()),
                csvout::float(s.bound),
                csvout::float(s.ratio),
            ]);
        }
    }

    let mut summary = vec![String::new(); 13];
    summary[0] = "summary".to_string();
    summary[12] = csvout::float(measured);
    doc.push(summary);
    doc.write(resolved.out.as_deref())?;
    eprintln!("weil: measured corpus constant {measured:.4}");
    Ok(())
}
