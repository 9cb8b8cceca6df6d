//! Bilinear Kloosterman-sum sweep against the even-exponent bound and the
//! comparison bound with its applicability windows.

use std::collections::BTreeMap;

use congsum_core::congruence::{make_set, SetFamily};
use congsum_core::kloosterman::{
    bilinear_sum, bound_is_uninformative, bound_kms, bound_theorem4, load_or_build,
    random_unimodular_weights, BilinearQuery, ConvolutionMethod, IntervalSet, KloostermanTable,
};
use congsum_core::trilinear::measured_exponent;
use congsum_core::{cell_seed, FieldCtx};
use num_complex::Complex64;

use crate::config::Resolved;
use crate::csvout::{self, CsvDoc};
use crate::CliError;

pub fn run(resolved: &Resolved) -> Result<(), CliError> {
    let cfg = resolved
        .file
        .bilinear
        .as_ref()
        .ok_or_else(|| CliError::Config("the config has no [bilinear] section".into()))?;

    let mut contexts: BTreeMap<u64, FieldCtx> = BTreeMap::new();
    let mut tables: BTreeMap<u64, KloostermanTable> = BTreeMap::new();
    for &p in &cfg.primes {
        let ctx = FieldCtx::new(p).map_err(|e| CliError::Config(e.to_string()))?;
        let (table, _) = load_or_build(
            &ctx,
            cfg.r,
            resolved.cache.as_deref(),
            ConvolutionMethod::Direct,
        )
        .map_err(|e| CliError::Runtime(e.to_string()))?;
        contexts.insert(p, ctx);
        tables.insert(p, table);
    }

    let mut doc = CsvDoc::new([
        "index",
        "p",
        "r",
        "m",
        "mplus",
        "n_len",
        "n_start",
        "ell",
        "cell_seed",
        "o1_constant",
        "o1_exponent",
        "alpha",
        "beta",
        "value_re",
        "value_im",
        "value_abs",
        "trivial",
        "thm4_bound",
        "thm4_ratio",
        "thm4_uninformative",
        "kms_bound",
        "kms_ratio",
        "kms_flags",
        "kappa_hat",
        "error",
    ]);

    let alpha_mode = cfg.alpha.as_deref().unwrap_or("unit");
    let beta_mode = cfg.beta.as_deref().unwrap_or("none");
    let mut index = 0usize;
    for &p in &cfg.primes {
        let ctx = &contexts[&p];
        let table = &tables[&p];
        for &size in &cfg.set_sizes {
            for &n_len in &cfg.n_lengths {
                for &n_start in &cfg.n_starts {
                    for &ell in &cfg.ells {
                        let seed = cell_seed(resolved.seed, index as u64);
                        let row = evaluate_cell(
                            resolved, ctx, table, cfg.r, size, n_len, n_start, ell, seed,
                            alpha_mode, beta_mode,
                        );
                        doc.push(render(index, p, cfg.r, size, n_len, n_start, ell, seed, resolved, row));
                        index += 1;
                    }
                }
            }
        }
    }

    doc.write(resolved.out.as_deref())?;
    eprintln!("bilinear: {index} cells");
    Ok(())
}

struct CellResult {
    mplus: Option<u64>,
    value: Option<Complex64>,
    trivial: Option<f64>,
    thm4_bound: Option<f64>,
    thm4_ratio: Option<f64>,
    thm4_uninformative: Option<bool>,
    kms_bound: Option<f64>,
    kms_ratio: Option<f64>,
    kms_flags: String,
    kappa_hat: Option<f64>,
    error: Option<String>,
}

#[allow(clippy::too_many_arguments)]
fn evaluate_cell(
    resolved: &Resolved,
    ctx: &FieldCtx,
    table: &KloostermanTable,
    r: u32,
    size: u64,
    n_len: u64,
    n_start: u64,
    ell: u32,
    seed: u64,
    alpha_mode: &str,
    beta_mode: &str,
) -> CellResult {
    let failed = |msg: String| CellResult {
        mplus: None,
        value: None,
        trivial: None,
        thm4_bound: None,
        thm4_ratio: None,
        thm4_uninformative: None,
        kms_bound: None,
        kms_ratio: None,
        kms_flags: String::new(),
        kappa_hat: None,
        error: Some(msg),
    };

    let mset = match make_set(ctx, &SetFamily::Random { size }, seed) {
        Ok(m) => m,
        Err(e) => return failed(e.to_string()),
    };
    let nset = match IntervalSet::new(ctx, n_start, n_len) {
        Ok(n) => n,
        Err(e) => return failed(e.to_string()),
    };
    let alpha = match alpha_mode {
        "random" => random_unimodular_weights(size as usize, seed ^ 0x51),
        _ => vec![Complex64::new(1.0, 0.0); size as usize],
    };
    let beta = match beta_mode {
        "unit" => Some(vec![Complex64::new(1.0, 0.0); n_len as usize]),
        "random" => Some(random_unimodular_weights(n_len as usize, seed ^ 0x52)),
        _ => None,
    };
    let query = match BilinearQuery::new(r, mset, alpha, nset, beta) {
        Ok(q) => q,
        Err(e) => return failed(e.to_string()),
    };
    let value = match bilinear_sum(ctx, &query, table) {
        Ok(v) => v,
        Err(e) => return failed(e.to_string()),
    };

    let p = ctx.prime();
    let mplus = query.mset.max_element();
    let abs = value.norm();
    let trivial = r as f64 * query.weight_mass();
    let thm4 = bound_theorem4(p, size, n_len, ell, resolved.o1)
        .map(|rep| rep.with_exact(abs))
        .ok();
    let kms = bound_kms(p, size, n_len, mplus, ell, resolved.o1)
        .map(|rep| rep.with_exact(abs))
        .ok();

    CellResult {
        mplus: Some(mplus),
        value: Some(value),
        trivial: Some(trivial),
        thm4_bound: thm4.as_ref().map(|r| r.bound),
        thm4_ratio: thm4.as_ref().and_then(|r| r.ratio),
        thm4_uninformative: thm4
            .as_ref()
            .map(|rep| bound_is_uninformative(rep.bound, r, size, n_len)),
        kms_bound: kms.as_ref().map(|r| r.bound),
        kms_ratio: kms.as_ref().and_then(|r| r.ratio),
        kms_flags: kms.as_ref().map(|r| r.flags.join(";")).unwrap_or_default(),
        kappa_hat: measured_exponent(abs, trivial, p).ok(),
        error: None,
    }
}

#[allow(clippy::too_many_arguments)]
fn render(
    index: usize,
    p: u64,
    r: u32,
    size: u64,
    n_len: u64,
    n_start: u64,
    ell: u32,
    seed: u64,
    resolved: &Resolved,
    cell: CellResult,
) -> Vec<String> {
    vec![
        csvout::show(index),
        csvout::show(p),
        csvout::show(r),
        csvout::show(size),
        csvout::opt(cell.mplus),
        csvout::show(n_len),
        csvout::show(n_start),
        csvout::show(ell),
        csvout::show(seed),
        csvout::float(resolved.o1.constant),
        csvout::float(resolved.o1.exponent),
        resolved
            .file
            .bilinear
            .as_ref()
            .and_then(|c| c.alpha.clone())
            .unwrap_or_else(|| "unit".into()),
        resolved
            .file
            .bilinear
            .as_ref()
            .and_then(|c| c.beta.clone())
            .unwrap_or_else(|| "none".into()),
        csvout::opt_float(cell.value.map(|v| v.re)),
        csvout::opt_float(cell.value.map(|v| v.im)),
        csvout::opt_float(cell.value.map(|v| v.norm())),
        csvout::opt_float(cell.trivial),
        csvout::opt_float(cell.thm4_bound),
        csvout::opt_float(cell.thm4_ratio),
        csvout::opt(cell.thm4_uninformative),
        csvout::opt_float(cell.kms_bound),
        csvout::opt_float(cell.kms_ratio),
        cell.kms_flags,
        csvout::opt_float(cell.kappa_hat),
        csvout::opt(cell.error),
    ]
}
