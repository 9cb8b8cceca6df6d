//! Multiplicative characters of `F_p^*`.
//!
//! A character is identified by its index `k` in `[0, p-2]` relative to the
//! context's primitive root: `chi_k(x) = exp(2*pi*i * k * ind[x] / (p-1))`
//! and `chi_k(0) = 0`. Evaluation is one discrete-log lookup plus one
//! root-of-unity lookup, so no per-character table is ever materialized.
//! The conjugate character is index negation modulo `p - 1`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::congruence::MSet;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::poly::PolyFp;

/// A multiplicative character of `F_p^*`, stored as its index modulo `p - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Character {
    k: u64,
}

impl Character {
    pub fn new(ctx: &FieldCtx, k: u64) -> Result<Self> {
        if k > ctx.prime() - 2 {
            return Err(Error::IndexOutOfRange {
                index: k,
                p: ctx.prime(),
            });
        }
        Ok(Self { k })
    }

    /// The principal character `chi_0`.
    pub fn principal() -> Self {
        Self { k: 0 }
    }

    /// The quadratic character, index `(p-1)/2`.
    pub fn quadratic(ctx: &FieldCtx) -> Self {
        Self {
            k: (ctx.prime() - 1) / 2,
        }
    }

    pub fn index(self) -> u64 {
        self.k
    }

    pub fn is_principal(self) -> bool {
        self.k == 0
    }

    /// The conjugate character: index negation modulo `p - 1`.
    pub fn conjugate(self, ctx: &FieldCtx) -> Self {
        let order = ctx.prime() - 1;
        Self {
            k: (order - self.k) % order,
        }
    }

    /// `chi_k(x)`; zero at `x = 0`, a root of unity elsewhere.
    pub fn eval(self, ctx: &FieldCtx, x: u64) -> Complex64 {
        let x = x % ctx.prime();
        if x == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let order = (ctx.prime() - 1) as u128;
        let j = (self.k as u128 * ctx.index(x) as u128 % order) as u64;
        ctx.unit_root(j)
    }
}

/// Evaluates `chi_k(x)` after validating the index.
pub fn eval_char(ctx: &FieldCtx, k: u64, x: u64) -> Result<Complex64> {
    Ok(Character::new(ctx, k)?.eval(ctx, x))
}

/// `sum_{x = shift+1}^{shift+len} chi(x mod p)`.
pub fn char_sum_interval(
    ctx: &FieldCtx,
    chi: Character,
    shift: u64,
    len: u64,
) -> Result<Complex64> {
    let p = ctx.prime();
    if len == 0 || len >= p || shift >= p {
        return Err(Error::BadInterval { shift, len, p });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for x in shift + 1..=shift + len {
        acc += chi.eval(ctx, x % p);
    }
    Ok(acc)
}

/// `sum_{m in mset} chi(m)`.
pub fn char_sum_set(ctx: &FieldCtx, chi: Character, mset: &MSet) -> Complex64 {
    mset.elements().iter().map(|&m| chi.eval(ctx, m)).sum()
}

/// Sums `chi(z)` over all `p - 1` characters by direct summation and rounds
/// to the nearest integer: `p - 1` when `z = 1` and `0` otherwise.
///
/// The rounding contract turns silent precision loss into an error: the float
/// sum must land within `1e-6 * p` of the returned integer.
pub fn orthogonality_sum(ctx: &FieldCtx, z: u64) -> Result<i64> {
    let p = ctx.prime();
    let z = z % p;
    assert!(z != 0, "orthogonality sum needs a unit argument");
    let idx = ctx.index(z);
    let order = (p - 1) as u128;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..p - 1 {
        acc += ctx.unit_root((k as u128 * idx as u128 % order) as u64);
    }
    let rounded = acc.re.round();
    let tolerance = 1e-6 * p as f64;
    if (acc.re - rounded).abs() > tolerance || acc.im.abs() > tolerance {
        return Err(Error::RoundingDrift {
            value: acc.re,
            rounded: rounded as i64,
            tolerance,
        });
    }
    Ok(rounded as i64)
}

/// Complete character sum with rational polynomial argument:
/// `sum_{a in F_p} chi(f(a)) * conj(chi)(g(a))`, together with the reference
/// envelope `(deg f + deg g) * sqrt(p)`.
///
/// Requires a nonprincipal character and square-free, coprime `f, g`; the
/// caller-facing harness records `|value| / envelope` ratios.
pub fn weil_sum(
    ctx: &FieldCtx,
    chi: Character,
    f: &PolyFp,
    g: &PolyFp,
) -> Result<(Complex64, f64)> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter);
    }
    if !f.is_squarefree() || !g.is_squarefree() {
        return Err(Error::NotSquareFree);
    }
    if !f.is_coprime(g) {
        return Err(Error::NotCoprime);
    }
    let p = ctx.prime();
    let chibar = chi.conjugate(ctx);
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..p {
        acc += chi.eval(ctx, f.eval(a)) * chibar.eval(ctx, g.eval(a));
    }
    let total_degree = (f.degree().unwrap_or(0) + g.degree().unwrap_or(0)) as f64;
    Ok((acc, total_degree * (p as f64).sqrt()))
}

/// One evaluated sample of the randomized square-free coprime corpus.
#[derive(Clone, Debug)]
pub struct WeilSample {
    pub chi_index: u64,
    pub f: PolyFp,
    pub g: PolyFp,
    pub value: Complex64,
    pub bound: f64,
    /// `|value| / bound`; the corpus-wide maximum is the measured constant.
    pub ratio: f64,
}

/// Draws `samples` random square-free coprime pairs `(f, g)` with
/// `1 <= deg f + deg g <= max_total_degree` and a random nonprincipal
/// character each, and evaluates the complete sum for every draw.
pub fn weil_corpus(
    ctx: &FieldCtx,
    samples: usize,
    max_total_degree: usize,
    seed: u64,
) -> Vec<WeilSample> {
    assert!(max_total_degree >= 1);
    let p = ctx.prime();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let total = rng.gen_range(1..=max_total_degree);
        let df = rng.gen_range(0..=total);
        let dg = total - df;
        let f = PolyFp::random(&mut rng, p, df);
        let g = PolyFp::random(&mut rng, p, dg);
        if !f.is_squarefree() || !g.is_squarefree() || !f.is_coprime(&g) {
            continue;
        }
        let k = rng.gen_range(1..p - 1);
        let chi = Character::new(ctx, k).expect("index drawn in range");
        let (value, bound) = weil_sum(ctx, chi, &f, &g).expect("corpus pair passed the checks");
        let ratio = value.norm() / bound;
        out.push(WeilSample {
            chi_index: k,
            f,
            g,
            value,
            bound,
            ratio,
        });
    }
    out
}
