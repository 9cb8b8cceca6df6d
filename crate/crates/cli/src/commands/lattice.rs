//! Reduced bases for random `(m, n)` pairs plus the recursion-constant grid.

use congsum_core::congruence::{make_set, SetFamily};
use congsum_core::lattice::{htok_constant, lattice_basis, random_unit_pairs};
use congsum_core::{cell_seed, FieldCtx};
use rayon::prelude::*;

use crate::config::Resolved;
use crate::csvout::{self, CsvDoc};
use crate::CliError;

pub fn run(resolved: &Resolved) -> Result<(), CliError> {
    let cfg = resolved
        .file
        .lattice
        .as_ref()
        .ok_or_else(|| CliError::Config("the config has no [lattice] section".into()))?;

    let mut doc = CsvDoc::new([
        "record", "index", "p", "m", "n", "e_x", "e_y", "f_x", "f_y", "norm_e", "norm_f", "h",
        "k", "set_size", "cell_seed", "j_h", "j_k", "measured_c",
    ]);

    // reduced bases, round-robin over the configured primes
    let contexts: Vec<FieldCtx> = cfg
        .primes
        .iter()
        .map(|&p| FieldCtx::new(p).map_err(|e| CliError::Config(e.to_string())))
        .collect::<Result<_, _>>()?;
    let per_prime = cfg.basis_samples.div_ceil(contexts.len());
    let basis_rows: Vec<Vec<String>> = contexts
        .par_iter()
        .enumerate()
        .flat_map_iter(|(pi, ctx)| {
            random_unit_pairs(ctx, per_prime, cell_seed(resolved.seed, pi as u64))
                .into_iter()
                .enumerate()
                .map(move |(i, (m, n))| {
                    let b = lattice_basis(ctx, m, n);
                    vec![
                        "basis".to_string(),
                        csvout::show(pi * per_prime + i),
                        csvout::show(ctx.prime()),
                        csvout::show(m),
                        csvout::show(n),
                        csvout::show(b.e[0]),
                        csvout::show(b.e[1]),
                        csvout::show(b.f[0]),
                        csvout::show(b.f[1]),
                        csvout::float((b.norm_sq_e() as f64).sqrt()),
                        csvout::float((b.norm_sq_f() as f64).sqrt()),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                    ]
                })
                .collect::<Vec<_>>()
        })
        .collect();
    for row in basis_rows {
        doc.push(row);
    }

    // recursion-constant grid
    let mut cells = Vec::new();
    for ctx in &contexts {
        for &h in &cfg.htok_h {
            for &k in &cfg.htok_k {
                if h < ctx.prime() && k < ctx.prime() && h >= 1 && k >= 1 {
                    cells.push((ctx, h, k));
                }
            }
        }
    }
    let htok_rows: Vec<Vec<String>> = cells
        .par_iter()
        .enumerate()
        .map(|(i, &(ctx, h, k))| {
            let seed = cell_seed(resolved.seed, 1_000_000 + i as u64);
            let mset = make_set(
                ctx,
                &SetFamily::Random {
                    size: cfg.htok_set_size.min(ctx.prime() - 1),
                },
                seed,
            )
            .expect("size clamped to the unit count");
            let rec = htok_constant(ctx, h, k, &mset);
            vec![
                "htok".to_string(),
                csvout::show(i),
                csvout::show(ctx.prime()),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                csvout::show(h),
                csvout::show(k),
                csvout::show(mset.cardinality()),
                csvout::show(seed),
                csvout::show(rec.j_h),
                csvout::show(rec.j_k),
                csvout::float(rec.measured_c),
            ]
        })
        .collect();
    for row in htok_rows {
        doc.push(row);
    }

    doc.write(resolved.out.as_deref())?;
    eprintln!("lattice: {} rows", doc.len());
    Ok(())
}
