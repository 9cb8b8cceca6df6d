//! Trilinear character-sum sweep: both evaluation routes, the double sums,
//! the comparison bound and its hypothesis flags, and the observed saving
//! exponent.

use congsum_core::congruence::{make_set, SetFamily};
use congsum_core::trilinear::{
    bound_theorem2, corollary3_check, measured_exponent, s_chi_double, trilinear_direct,
    trilinear_via_theta, TrilinearQuery,
};
use congsum_core::{cell_seed, Character, FieldCtx};
use rayon::prelude::*;

use crate::config::Resolved;
use crate::csvout::{self, CsvDoc};
use crate::CliError;

pub fn run(resolved: &Resolved) -> Result<(), CliError> {
    let cfg = resolved
        .file
        .trilinear
        .as_ref()
        .ok_or_else(|| CliError::Config("the config has no [trilinear] section".into()))?;
    let eps = cfg.eps.unwrap_or(0.05);

    let mut cells = Vec::new();
    for &p in &cfg.primes {
        for &h in &cfg.h_values {
            for &k in &cfg.k_sizes {
                for &m in &cfg.m_sizes {
                    cells.push((p, h, k, m));
                }
            }
        }
    }

    let chi_index_for = |ctx: &FieldCtx| -> Result<u64, CliError> {
        match &cfg.chi {
            None => Ok((ctx.prime() - 1) / 2),
            Some(toml::Value::String(s)) if s == "quadratic" => Ok((ctx.prime() - 1) / 2),
            Some(toml::Value::Integer(k)) if *k > 0 => Ok(*k as u64),
            Some(other) => Err(CliError::Config(format!(
                "chi must be \"quadratic\" or a positive index, got {other}"
            ))),
        }
    };

    let contexts: std::collections::BTreeMap<u64, FieldCtx> = cfg
        .primes
        .iter()
        .map(|&p| FieldCtx::new(p).map(|c| (p, c)))
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Config(e.to_string()))?;
    for ctx in contexts.values() {
        let k = chi_index_for(ctx)?;
        Character::new(ctx, k).map_err(|e| CliError::Config(e.to_string()))?;
    }

    let rows: Vec<Vec<String>> = cells
        .par_iter()
        .enumerate()
        .map(|(index, &(p, h, k_size, m_size))| {
            let seed = cell_seed(resolved.seed, index as u64);
            let ctx = &contexts[&p];
            let chi_index = chi_index_for(ctx).expect("validated above");
            evaluate(resolved, ctx, index, h, k_size, m_size, chi_index, eps, seed, cfg.ell)
        })
        .collect();

    let mut doc = CsvDoc::new([
        "index",
        "p",
        "h",
        "k_size",
        "m_size",
        "chi_index",
        "ell",
        "eps",
        "cell_seed",
        "o1_constant",
        "o1_exponent",
        "w_re",
        "w_im",
        "w_abs",
        "theta_route_rel_diff",
        "trivial_hkm",
        "thm2_bound",
        "thm2_ratio",
        "thm2_flags",
        "cor3_flags",
        "kappa_hat",
        "s_chi",
        "error",
    ]);
    for row in rows {
        doc.push(row);
    }
    doc.write(resolved.out.as_deref())?;
    eprintln!("trilinear: {} cells", cells.len());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn evaluate(
    resolved: &Resolved,
    ctx: &FieldCtx,
    index: usize,
    h: u64,
    k_size: u64,
    m_size: u64,
    chi_index: u64,
    eps: f64,
    seed: u64,
    ell: u32,
) -> Vec<String> {
    let p = ctx.prime();
    let base = |error: Option<String>| {
        let mut row = vec![
            csvout::show(index),
            csvout::show(p),
            csvout::show(h),
            csvout::show(k_size),
            csvout::show(m_size),
            csvout::show(chi_index),
            csvout::show(ell),
            csvout::float(eps),
            csvout::show(seed),
            csvout::float(resolved.o1.constant),
            csvout::float(resolved.o1.exponent),
        ];
        row.extend(std::iter::repeat_with(String::new).take(11));
        row.push(csvout::opt(error));
        row
    };

    let built = (|| -> Result<Vec<String>, String> {
        let chi = Character::new(ctx, chi_index).map_err(|e| e.to_string())?;
        let kset =
            make_set(ctx, &SetFamily::Random { size: k_size }, seed).map_err(|e| e.to_string())?;
        let mset = make_set(ctx, &SetFamily::Random { size: m_size }, seed ^ 0x7)
            .map_err(|e| e.to_string())?;
        let query = TrilinearQuery::unit_weights(ctx, h, kset, mset.clone(), chi)
            .map_err(|e| e.to_string())?;

        let w = trilinear_direct(ctx, &query);
        let via = trilinear_via_theta(ctx, &query).map_err(|e| e.to_string())?;
        let rel = (w - via).norm() / w.norm().max(via.norm()).max(1.0);
        let trivial = query.trivial_envelope();
        let thm2 = bound_theorem2(p, h, k_size, m_size, ell, resolved.o1)
            .map(|rep| rep.with_exact(w.norm()))
            .map_err(|e| e.to_string())?;
        let cor3 = corollary3_check(p, h, k_size, m_size, eps, resolved.o1);
        let kappa = measured_exponent(w.norm(), trivial, p).ok();
        let s_chi = s_chi_double(ctx, chi, h, &mset).map_err(|e| e.to_string())?;

        let mut row = base(None);
        row[11] = csvout::float(w.re);
        row[12] = csvout::float(w.im);
        row[13] = csvout::float(w.norm());
        row[14] = csvout::float(rel);
        row[15] = csvout::float(trivial);
        row[16] = csvout::float(thm2.bound);
        row[17] = csvout::opt_float(thm2.ratio);
        row[18] = thm2.flags.join(";");
        row[19] = cor3.flags().join(";");
        row[20] = csvout::opt_float(kappa);
        row[21] = csvout::float(s_chi);
        Ok(row)
    })();

    match built {
        Ok(row) => row,
        Err(msg) => base(Some(msg)),
    }
}
