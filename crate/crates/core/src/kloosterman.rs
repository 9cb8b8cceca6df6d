//! Multidimensional Kloosterman sums
//! `K_r(n) = p^{-(r-1)/2} * sum e_p(x_1 + ... + x_r)` over r-tuples of units
//! with product `n`, bilinear sums built from them, and the evaluable
//! comparison bounds.
//!
//! The whole table `n -> K_r(n)` is computed at once by transporting the
//! product constraint through the discrete log: with `a_j = e_p(g^j)`, the
//! r-fold multiplicative convolution becomes an r-fold cyclic convolution of
//! length `p - 1`. The direct O(p^2)-per-fold convolution is the reference;
//! an FFT path (Bluestein, arbitrary length) is available as an optimization
//! and is validated against the direct method. A per-`n` brute force over
//! `(p-1)^{r-1}` tuples serves as the independent oracle at small sizes.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::congruence::MSet;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::report::{BoundParams, BoundReport, O1Convention};

/// Budget guard for the brute-force oracle: `(p-1)^(r-1)` tuples per call.
pub const BRUTEFORCE_BUDGET: u128 = 1_000_000;

/// How to evaluate the cyclic convolutions behind a table build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvolutionMethod {
    /// Direct O(p^2) per fold; the reference path.
    Direct,
    /// FFT of length p-1 via Bluestein's algorithm; must match Direct to 1e-8.
    Fft,
}

/// Normalized values `K_r(n)` for all `n` in `F_p^*`.
#[derive(Clone, Debug)]
pub struct KloostermanTable {
    p: u64,
    r: u32,
    generator: u64,
    /// Indexed by `n - 1`.
    values: Vec<Complex64>,
}

impl KloostermanTable {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Primitive root the discrete-log transport was built with.
    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn get(&self, n: u64) -> Complex64 {
        let n = n % self.p;
        assert!(n != 0, "K_r is defined on units only");
        self.values[(n - 1) as usize]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_imag_abs(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }
}

/// Brute-force oracle: iterates the free variables `x_1, ..., x_{r-1}` and
/// pins `x_r = n * (x_1 ... x_{r-1})^{-1}`.
pub fn kloosterman_bruteforce(ctx: &FieldCtx, r: u32, n: u64) -> Result<Complex64> {
    assert!(r >= 1);
    let p = ctx.prime();
    let n = n % p;
    assert!(n != 0, "K_r is defined on units only");
    let work = (p as u128 - 1).pow(r - 1);
    if work > BRUTEFORCE_BUDGET {
        return Err(Error::BudgetExceeded {
            estimate: work,
            budget: BRUTEFORCE_BUDGET,
        });
    }

    fn walk(ctx: &FieldCtx, depth: u32, product: u64, partial: u64, n: u64) -> Complex64 {
        if depth == 0 {
            let last = ctx.mul(n, ctx.inverse(product).expect("product of units"));
            return ctx.additive_char((partial + last) as i64);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for x in ctx.units() {
            acc += walk(ctx, depth - 1, ctx.mul(product, x), partial + x, n);
        }
        acc
    }

    let raw = walk(ctx, r - 1, 1, 0, n);
    Ok(raw * (p as f64).powf(-((r - 1) as f64) / 2.0))
}

fn cyclic_convolution_direct(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    assert_eq!(n, b.len());
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = Complex64::new(0.0, 0.0);
            // split j <= i and j > i to keep the index arithmetic branch-free
            for j in 0..=i {
                acc += a[j] * b[i - j];
            }
            for j in i + 1..n {
                acc += a[j] * b[n + i - j];
            }
            acc
        })
        .collect()
}

fn repeated_convolution_direct(a: &[Complex64], folds: u32) -> Vec<Complex64> {
    let mut acc = a.to_vec();
    for _ in 0..folds {
        acc = cyclic_convolution_direct(&acc, a);
    }
    acc
}

fn repeated_convolution_fft(a: &[Complex64], folds: u32) -> Vec<Complex64> {
    let n = a.len();
    let mut planner = FftPlanner::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);

    let mut spectrum = a.to_vec();
    forward.process(&mut spectrum);
    let mut powered: Vec<Complex64> = spectrum
        .iter()
        .map(|&z| z.powu(folds + 1))
        .collect();
    inverse.process(&mut powered);
    let scale = 1.0 / n as f64;
    powered.iter_mut().for_each(|z| *z *= scale);
    powered
}

/// Builds the full table with the direct (reference) convolution.
pub fn kloosterman_table(ctx: &FieldCtx, r: u32) -> KloostermanTable {
    kloosterman_table_with(ctx, r, ConvolutionMethod::Direct)
}

/// Builds the full table with the chosen convolution backend.
///
/// Panics if the finished table violates the `|K_r(n)| <= r` envelope by more
/// than 1e-8, or (for `r = 2`, where the values are real) carries imaginary
/// parts above 1e-8 — both would mean the construction itself is broken.
pub fn kloosterman_table_with(ctx: &FieldCtx, r: u32, method: ConvolutionMethod) -> KloostermanTable {
    assert!((1..=16).contains(&r), "table dimension out of range");
    let p = ctx.prime();
    let order = (p - 1) as usize;

    // a[j] = e_p(g^j)
    let mut power = 1u64;
    let mut base = Vec::with_capacity(order);
    for _ in 0..order {
        base.push(ctx.additive_char(power as i64));
        power = ctx.mul(power, ctx.generator());
    }

    let raw = match method {
        ConvolutionMethod::Direct => repeated_convolution_direct(&base, r - 1),
        ConvolutionMethod::Fft => repeated_convolution_fft(&base, r - 1),
    };

    let scale = (p as f64).powf(-((r - 1) as f64) / 2.0);
    let mut values = vec![Complex64::new(0.0, 0.0); order];
    for n in 1..p {
        values[(n - 1) as usize] = raw[ctx.index(n) as usize] * scale;
    }

    let table = KloostermanTable {
        p,
        r,
        generator: ctx.generator(),
        values,
    };
    assert!(
        table.max_abs() <= r as f64 + 1e-8,
        "|K_{r}| exceeded the Deligne envelope: {}",
        table.max_abs()
    );
    if r == 2 {
        assert!(
            table.max_imag_abs() <= 1e-8,
            "classical Kloosterman sums must be real"
        );
    }
    table
}

/// An interval `{s+1, ..., s+N}` inside `F_p^*`.
///
/// Construction rejects windows that pass through `0 (mod p)` so that every
/// element is a unit; sweeps flag such cells instead of evaluating them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalSet {
    start: u64,
    len: u64,
}

impl IntervalSet {
    pub fn new(ctx: &FieldCtx, start: u64, len: u64) -> Result<Self> {
        let p = ctx.prime();
        if len == 0 || len >= p || start >= p {
            return Err(Error::BadInterval {
                shift: start,
                len,
                p,
            });
        }
        if start + len >= p {
            return Err(Error::WrapsZero { start, len, p });
        }
        Ok(Self { start, len })
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn residues(&self) -> impl Iterator<Item = u64> + '_ {
        self.start + 1..=self.start + self.len
    }
}

/// A weighted bilinear query `sum_m sum_n alpha_m (beta_n) K_r(m*n)`.
#[derive(Clone, Debug)]
pub struct BilinearQuery {
    pub r: u32,
    pub mset: MSet,
    pub alpha: Vec<Complex64>,
    pub nset: IntervalSet,
    pub beta: Option<Vec<Complex64>>,
}

impl BilinearQuery {
    pub fn new(
        r: u32,
        mset: MSet,
        alpha: Vec<Complex64>,
        nset: IntervalSet,
        beta: Option<Vec<Complex64>>,
    ) -> Result<Self> {
        assert_eq!(alpha.len() as u64, mset.cardinality());
        if let Some(beta) = &beta {
            assert_eq!(beta.len() as u64, nset.len());
        }
        for w in alpha.iter().chain(beta.iter().flatten()) {
            if w.norm() > 1.0 + 1e-12 {
                return Err(Error::WeightTooLarge(w.norm()));
            }
        }
        Ok(Self {
            r,
            mset,
            alpha,
            nset,
            beta,
        })
    }

    /// Unit weights throughout.
    pub fn unit(r: u32, mset: MSet, nset: IntervalSet) -> Self {
        let alpha = vec![Complex64::new(1.0, 0.0); mset.cardinality() as usize];
        Self {
            r,
            mset,
            alpha,
            nset,
            beta: None,
        }
    }

    /// `sum |alpha_m| * sum |beta_n|` (the latter is `N` for absent beta);
    /// `r` times this is the trivial envelope for the sum.
    pub fn weight_mass(&self) -> f64 {
        let ma: f64 = self.alpha.iter().map(|w| w.norm()).sum();
        let nb: f64 = match &self.beta {
            Some(beta) => beta.iter().map(|w| w.norm()).sum(),
            None => self.nset.len() as f64,
        };
        ma * nb
    }
}

/// Seeded unimodular weights `exp(2*pi*i*u)`.
pub fn random_unimodular_weights(len: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| Complex64::from_polar(1.0, std::f64::consts::TAU * rng.gen::<f64>()))
        .collect()
}

/// Evaluates the bilinear sum against a prebuilt table.
///
/// Terms are accumulated with `m` outer and `n` inner, in set/interval order;
/// the float path is part of the reproducibility contract, so independent
/// recomputations in the same order must agree bit for bit.
pub fn bilinear_sum(
    ctx: &FieldCtx,
    q: &BilinearQuery,
    table: &KloostermanTable,
) -> Result<Complex64> {
    if table.p() != ctx.prime() || table.r() != q.r {
        return Err(Error::DimensionMismatch {
            table_p: table.p(),
            table_r: table.r(),
            query_p: ctx.prime(),
            query_r: q.r,
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (mi, &m) in q.mset.elements().iter().enumerate() {
        let alpha = q.alpha[mi];
        for (ni, n) in q.nset.residues().enumerate() {
            let mut term = alpha * table.get(ctx.mul(m, n));
            if let Some(beta) = &q.beta {
                term *= beta[ni];
            }
            acc += term;
        }
    }
    Ok(acc)
}

/// `MN (N^{-1/2l} + M^{-1/8l} N^{-1/l} p^{3/8l + 1/2l^2}
///     + M^{-1/2l} N^{-1/l} p^{1/2l + 1/2l^2}
///     + N^{-3/2l} p^{1/2l + 1/l^2}) * p^{o(1)}` for even `l`.
pub fn bound_theorem4(p: u64, m: u64, n: u64, ell: u32, o1: O1Convention) -> Result<BoundReport> {
    if ell < 1 {
        return Err(Error::BadEll(ell));
    }
    if ell % 2 != 0 {
        return Err(Error::OddEll(ell));
    }
    let (pf, mf, nf) = (p as f64, m as f64, n as f64);
    let l = ell as f64;
    let t1 = nf.powf(-1.0 / (2.0 * l));
    let t2 = mf.powf(-1.0 / (8.0 * l)) * nf.powf(-1.0 / l) * pf.powf(3.0 / (8.0 * l) + 1.0 / (2.0 * l * l));
    let t3 = mf.powf(-1.0 / (2.0 * l)) * nf.powf(-1.0 / l) * pf.powf(1.0 / (2.0 * l) + 1.0 / (2.0 * l * l));
    let t4 = nf.powf(-3.0 / (2.0 * l)) * pf.powf(1.0 / (2.0 * l) + 1.0 / (l * l));
    let bound = mf * nf * (t1 + t2 + t3 + t4) * o1.surrogate(p);
    Ok(BoundReport::new(bound, "thm4", BoundParams::with_ell(ell, o1)))
}

/// Whether an evaluated bound is no better than the `r * M * N` envelope
/// that follows from `|K_r| <= r` alone.
pub fn bound_is_uninformative(bound: f64, r: u32, m: u64, n: u64) -> bool {
    bound >= r as f64 * m as f64 * n as f64
}

/// The comparison bound `MN * M^{-1/2l} N^{-1/l} p^{1/2l + 1/2l^2} * p^{o(1)}`
/// with its two applicability windows:
///
/// * cond1: `p^{1/l} <= N <= p^{1/2 + 1/2l} / 2`
/// * cond2: `p^{1/l} <= N` and `N * M+ <= p^{1 + 1/2l} / 2`
///
/// When neither holds the report is flagged inapplicable; the value is still
/// evaluated for reference.
pub fn bound_kms(
    p: u64,
    m: u64,
    n: u64,
    mplus: u64,
    ell: u32,
    o1: O1Convention,
) -> Result<BoundReport> {
    if ell < 1 {
        return Err(Error::BadEll(ell));
    }
    let (pf, mf, nf) = (p as f64, m as f64, n as f64);
    let l = ell as f64;
    let bound = mf * nf
        * mf.powf(-1.0 / (2.0 * l))
        * nf.powf(-1.0 / l)
        * pf.powf(1.0 / (2.0 * l) + 1.0 / (2.0 * l * l))
        * o1.surrogate(p);

    let n_large_enough = nf >= pf.powf(1.0 / l);
    let cond1 = n_large_enough && nf <= 0.5 * pf.powf(0.5 + 1.0 / (2.0 * l));
    let cond2 = n_large_enough && nf * mplus as f64 <= 0.5 * pf.powf(1.0 + 1.0 / (2.0 * l));

    let mut report = BoundReport::new(bound, "kms", BoundParams::with_ell(ell, o1));
    if cond1 {
        report = report.flag("kms-cond1");
    }
    if cond2 {
        report = report.flag("kms-cond2");
    }
    if !cond1 && !cond2 {
        report = report.flag("kms-inapplicable");
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Binary table cache
// ---------------------------------------------------------------------------
//
// Layout (all integers little-endian):
//   magic   8 bytes  = b"CONGSUMK"
//   version u32      = 1
//   p       u64
//   r       u32
//   g       u64      generator the table was built with
//   data    (p-1) pairs of f64 (re, im)

const CACHE_MAGIC: &[u8; 8] = b"CONGSUMK";
const CACHE_VERSION: u32 = 1;

/// Conventional file name for a cached table inside a cache directory.
pub fn cache_path(dir: &Path, p: u64, r: u32) -> PathBuf {
    dir.join(format!("kloosterman_p{p}_r{r}.tbl"))
}

pub fn write_cache(path: &Path, table: &KloostermanTable) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let mut buf = Vec::with_capacity(32 + table.values.len() * 16);
    buf.extend_from_slice(CACHE_MAGIC);
    buf.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    buf.extend_from_slice(&table.p.to_le_bytes());
    buf.extend_from_slice(&table.r.to_le_bytes());
    buf.extend_from_slice(&table.generator.to_le_bytes());
    for v in &table.values {
        buf.extend_from_slice(&v.re.to_le_bytes());
        buf.extend_from_slice(&v.im.to_le_bytes());
    }
    let mut file = std::fs::File::create(path)?;
    file.write_all(&buf)?;
    Ok(())
}

/// Reads a cached table and cross-checks the header against the expected
/// `(p, r)` and the context's generator; any mismatch is a `BadCache` error
/// so callers fall back to recomputation.
pub fn read_cache(path: &Path, ctx: &FieldCtx, r: u32) -> Result<KloostermanTable> {
    let bad = |reason: &str| Error::BadCache {
        path: path.display().to_string(),
        reason: reason.to_string(),
    };
    let mut bytes = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut bytes)?;
    if bytes.len() < 32 || &bytes[0..8] != CACHE_MAGIC {
        return Err(bad("bad magic"));
    }
    let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    if version != CACHE_VERSION {
        return Err(bad("unsupported version"));
    }
    let p = u64::from_le_bytes(bytes[12..20].try_into().unwrap());
    let file_r = u32::from_le_bytes(bytes[20..24].try_into().unwrap());
    let g = u64::from_le_bytes(bytes[24..32].try_into().unwrap());
    if p != ctx.prime() || file_r != r || g != ctx.generator() {
        return Err(bad("header does not match the requested table"));
    }
    let order = (p - 1) as usize;
    if bytes.len() != 32 + 16 * order {
        return Err(bad("truncated value block"));
    }
    let values = (0..order)
        .map(|i| {
            let at = 32 + 16 * i;
            Complex64::new(
                f64::from_le_bytes(bytes[at..at + 8].try_into().unwrap()),
                f64::from_le_bytes(bytes[at + 8..at + 16].try_into().unwrap()),
            )
        })
        .collect();
    Ok(KloostermanTable {
        p,
        r,
        generator: g,
        values,
    })
}

/// Reads the table from the cache directory or builds and stores it.
pub fn load_or_build(
    ctx: &FieldCtx,
    r: u32,
    cache_dir: Option<&Path>,
    method: ConvolutionMethod,
) -> Result<(KloostermanTable, bool)> {
    if let Some(dir) = cache_dir {
        let path = cache_path(dir, ctx.prime(), r);
        if path.exists() {
            if let Ok(table) = read_cache(&path, ctx, r) {
                return Ok((table, true));
            }
        }
        let table = kloosterman_table_with(ctx, r, method);
        write_cache(&path, &table)?;
        return Ok((table, false));
    }
    Ok((kloosterman_table_with(ctx, r, method), false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> FieldCtx {
        FieldCtx::new(p).unwrap()
    }

    #[test]
    fn r1_is_the_additive_character() {
        let c = ctx(7);
        let table = kloosterman_table(&c, 1);
        for n in c.units() {
            assert!((table.get(n) - c.additive_char(n as i64)).norm() < 1e-12);
            assert!(
                (kloosterman_bruteforce(&c, 1, n).unwrap() - c.additive_char(n as i64)).norm()
                    < 1e-12
            );
        }
    }

    #[test]
    fn classical_value_p5() {
        // K_2(1) over F_5 = (2 + 2cos(4*pi/5)) / sqrt(5) ~ 0.1708204
        let c = ctx(5);
        let expected = (2.0 + 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos()) / 5f64.sqrt();
        let brute = kloosterman_bruteforce(&c, 2, 1).unwrap();
        assert!((brute.re - expected).abs() < 1e-10);
        assert!(brute.im.abs() < 1e-10);
        assert!(brute.norm() <= 2.0);

        let table = kloosterman_table(&c, 2);
        for n in c.units() {
            let oracle = kloosterman_bruteforce(&c, 2, n).unwrap();
            assert!((table.get(n) - oracle).norm() < 1e-10);
        }
    }

    #[test]
    fn table_matches_bruteforce_small() {
        for p in [5u64, 7, 11] {
            let c = ctx(p);
            for r in 1..=4 {
                let table = kloosterman_table(&c, r);
                for n in c.units() {
                    let oracle = kloosterman_bruteforce(&c, r, n).unwrap();
                    assert!(
                        (table.get(n) - oracle).norm() < 1e-8,
                        "p={p}, r={r}, n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn fft_matches_direct() {
        for p in [11u64, 101] {
            let c = ctx(p);
            for r in 2..=4 {
                let direct = kloosterman_table_with(&c, r, ConvolutionMethod::Direct);
                let fft = kloosterman_table_with(&c, r, ConvolutionMethod::Fft);
                let max_diff = direct
                    .values()
                    .iter()
                    .zip(fft.values())
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                assert!(max_diff < 1e-8, "p={p}, r={r}: {max_diff}");
            }
        }
    }

    #[test]
    fn deligne_envelope_at_moderate_p() {
        let c = ctx(1009);
        for r in 1..=3 {
            let table = kloosterman_table_with(&c, r, ConvolutionMethod::Fft);
            assert!(table.max_abs() <= r as f64 + 1e-8);
        }
    }

    #[test]
    fn bruteforce_budget() {
        let c = ctx(1009);
        assert!(matches!(
            kloosterman_bruteforce(&c, 3, 1),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn interval_validation() {
        let c = ctx(101);
        assert!(IntervalSet::new(&c, 0, 100).is_ok());
        assert!(matches!(
            IntervalSet::new(&c, 95, 10),
            Err(Error::WrapsZero { .. })
        ));
        assert!(matches!(
            IntervalSet::new(&c, 0, 101),
            Err(Error::BadInterval { .. })
        ));
    }

    #[test]
    fn bilinear_degenerate_set_is_partial_sum() {
        let c = ctx(101);
        let table = kloosterman_table(&c, 2);
        let mset = MSet::new(101, vec![1]).unwrap();
        let nset = IntervalSet::new(&c, 0, 20).unwrap();
        let q = BilinearQuery::unit(2, mset, nset);
        let value = bilinear_sum(&c, &q, &table).unwrap();
        let direct: Complex64 = (1..=20).map(|n| table.get(n)).sum();
        assert_eq!(value, direct);
        assert!(value.norm() <= 2.0 * q.weight_mass() + 1e-9);
    }

    #[test]
    fn bilinear_rejects_mismatched_table() {
        let c = ctx(101);
        let table = kloosterman_table(&c, 2);
        let mset = MSet::new(101, vec![1, 2]).unwrap();
        let nset = IntervalSet::new(&c, 0, 5).unwrap();
        let q = BilinearQuery::unit(3, mset, nset);
        assert!(matches!(
            bilinear_sum(&c, &q, &table),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn weight_validation() {
        let c = ctx(101);
        let mset = MSet::new(101, vec![1, 2]).unwrap();
        let nset = IntervalSet::new(&c, 0, 5).unwrap();
        let heavy = vec![Complex64::new(2.0, 0.0); 2];
        assert!(matches!(
            BilinearQuery::new(2, mset, heavy, nset, None),
            Err(Error::WeightTooLarge(_))
        ));
    }

    #[test]
    fn theorem4_parity_and_kms_flags() {
        let o1 = O1Convention::default();
        assert!(matches!(
            bound_theorem4(10007, 50, 100, 3, o1),
            Err(Error::OddEll(3))
        ));
        let report = bound_theorem4(10007, 50, 100, 2, o1).unwrap();
        assert!(report.bound > 0.0);

        // N = 10 < p^{1/2} fails both windows at ell = 2
        let kms = bound_kms(10007, 50, 10, 5000, 2, o1).unwrap();
        assert!(kms.has_flag("kms-inapplicable"));

        // N = 150 with a huge M+ : cond1 holds (100.03 <= 150 <= 500),
        // cond2 fails (150 * 10006 >> p^{5/4} / 2)
        let kms = bound_kms(10007, 50, 150, 10006, 2, o1).unwrap();
        assert!(kms.has_flag("kms-cond1"));
        assert!(!kms.has_flag("kms-cond2"));
        assert!(!kms.has_flag("kms-inapplicable"));
    }

    #[test]
    fn cache_roundtrip_is_bit_identical() {
        let dir = std::env::temp_dir().join(format!("congsum-cache-test-{}", std::process::id()));
        let c = ctx(101);
        let (built, was_hit) =
            load_or_build(&c, 2, Some(&dir), ConvolutionMethod::Direct).unwrap();
        assert!(!was_hit);
        let (cached, was_hit) =
            load_or_build(&c, 2, Some(&dir), ConvolutionMethod::Direct).unwrap();
        assert!(was_hit);
        assert_eq!(cached.p(), built.p());
        assert_eq!(cached.r(), built.r());
        assert_eq!(cached.generator(), built.generator());
        for (a, b) in built.values().iter().zip(cached.values()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
        // a table for a different r refuses to load as r = 3
        let path = cache_path(&dir, 101, 2);
        assert!(matches!(
            read_cache(&path, &c, 3),
            Err(Error::BadCache { .. })
        ));
        std::fs::remove_dir_all(&dir).ok();
    }
}
