//! Exact computation of the congruence count `J(H, M)` by three independent
//! algorithms, the evaluable forms of every bound it is measured against, and
//! the grid sweep that ties them together.
//!
//! `J(H, M)` counts quadruples `(x, y, m, n)` with `x, y` in the window
//! `[A+1, A+H]`, `m, n` in the set, and `x*m = y*n (mod p)`. The three
//! routes are: a literal quadruple loop (the oracle, budget-guarded), the
//! multiplicity-table identity `J = sum_u r(u)^2` in O(HM + p), and the
//! character-sum identity `J = (1/(p-1)) sum_chi |S_chi(H)|^2 |S_chi(M)|^2`
//! for unshifted windows.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::characters::{char_sum_interval, char_sum_set, Character};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::report::{BoundParams, BoundReport, O1Convention};

/// Work guard for the quadruple-loop oracle: `H * M` may not exceed this.
pub const ORACLE_BUDGET: u64 = 5000;

/// A finite subset of `F_p^*`, stored as a strictly increasing list of
/// canonical residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSet {
    p: u64,
    elements: Vec<u64>,
}

impl MSet {
    /// Sorts and deduplicates; every element must lie in `[1, p-1]`.
    pub fn new(p: u64, mut elements: Vec<u64>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() || elements[0] == 0 || *elements.last().unwrap() >= p {
            return Err(Error::InvalidSet);
        }
        Ok(Self { p, elements })
    }

    /// The full unit group `{1, ..., p-1}`.
    pub fn full_group(p: u64) -> Self {
        Self {
            p,
            elements: (1..p).collect(),
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Cardinality `M`.
    pub fn cardinality(&self) -> u64 {
        self.elements.len() as u64
    }

    /// Largest canonical representative `M+`.
    pub fn max_element(&self) -> u64 {
        *self.elements.last().unwrap()
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// The dilated set `c * M (mod p)` for a unit `c`.
    pub fn scale(&self, ctx: &FieldCtx, c: u64) -> Result<Self> {
        let c = c % ctx.prime();
        if c == 0 {
            return Err(Error::InvalidSet);
        }
        Self::new(
            self.p,
            self.elements.iter().map(|&m| ctx.mul(c, m)).collect(),
        )
    }
}

/// Deterministic set families used by the experiment harness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetFamily {
    /// Consecutive residues `start, start+1, ...` reduced mod `p`; a value
    /// that reduces to 0 is dropped.
    Interval { start: u64, len: u64 },
    /// `size` distinct units sampled without replacement.
    Random { size: u64 },
    /// The squares `{x^2 mod p : x in F_p^*}`.
    QuadraticResidues,
    /// `{g^(j*step) mod p : j = 0, ..., size-1}`, deduplicated.
    Geometric { step: u64, size: u64 },
}

impl SetFamily {
    pub fn label(&self) -> String {
        match self {
            SetFamily::Interval { start, len } => format!("interval(start={start},len={len})"),
            SetFamily::Random { size } => format!("random(size={size})"),
            SetFamily::QuadraticResidues => "quadratic_residues".to_string(),
            SetFamily::Geometric { step, size } => format!("geometric(step={step},size={size})"),
        }
    }
}

/// Builds a set from a family description; deterministic given the seed.
pub fn make_set(ctx: &FieldCtx, family: &SetFamily, seed: u64) -> Result<MSet> {
    let p = ctx.prime();
    let units = p - 1;
    match *family {
        SetFamily::Interval { start, len } => {
            if len == 0 || len > units {
                return Err(Error::TooLarge {
                    requested: len,
                    available: units,
                    p,
                });
            }
            let elements: Vec<u64> = (0..len)
                .map(|i| (start % p + i) % p)
                .filter(|&x| x != 0)
                .collect();
            MSet::new(p, elements)
        }
        SetFamily::Random { size } => {
            if size == 0 || size > units {
                return Err(Error::TooLarge {
                    requested: size,
                    available: units,
                    p,
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let picks = rand::seq::index::sample(&mut rng, units as usize, size as usize);
            let elements: Vec<u64> = picks.iter().map(|i| i as u64 + 1).collect();
            MSet::new(p, elements)
        }
        SetFamily::QuadraticResidues => {
            let mut elements: Vec<u64> = (1..p).map(|x| ctx.mul(x, x)).collect();
            elements.sort_unstable();
            elements.dedup();
            MSet::new(p, elements)
        }
        SetFamily::Geometric { step, size } => {
            assert!(step >= 1, "geometric step must be positive");
            if size == 0 || size > units {
                return Err(Error::TooLarge {
                    requested: size,
                    available: units,
                    p,
                });
            }
            let ratio = crate::field::powmod(ctx.generator(), step, p);
            let mut elements = Vec::with_capacity(size as usize);
            let mut x = 1u64;
            for _ in 0..size {
                elements.push(x);
                x = ctx.mul(x, ratio);
            }
            MSet::new(p, elements)
        }
    }
}

/// One counting query: window length `H`, window shift `A` (the window is
/// `[A+1, A+H]`), and the set.
#[derive(Clone, Debug)]
pub struct JQuery {
    h: u64,
    shift: u64,
    mset: MSet,
}

impl JQuery {
    pub fn new(ctx: &FieldCtx, h: u64, shift: u64, mset: MSet) -> Result<Self> {
        let p = ctx.prime();
        if h == 0 || h >= p || shift >= p {
            return Err(Error::BadInterval { shift, len: h, p });
        }
        Ok(Self { h, shift, mset })
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn shift(&self) -> u64 {
        self.shift
    }

    pub fn mset(&self) -> &MSet {
        &self.mset
    }
}

/// Ground-truth oracle: literal enumeration of all quadruples, O((HM)^2).
///
/// Guarded by [`ORACLE_BUDGET`] on `H * M`.
pub fn j_count_oracle(ctx: &FieldCtx, q: &JQuery) -> Result<u64> {
    let work = q.h * q.mset.cardinality();
    if work > ORACLE_BUDGET {
        return Err(Error::BudgetExceeded {
            estimate: work as u128,
            budget: ORACLE_BUDGET as u128,
        });
    }
    let p = ctx.prime();
    let window: Vec<u64> = (q.shift + 1..=q.shift + q.h).map(|x| x % p).collect();
    let mut count = 0u64;
    for &x in &window {
        for m in q.mset.elements() {
            let lhs = x * m % p;
            for &y in &window {
                for n in q.mset.elements() {
                    if lhs == y * n % p {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// The multiplicity table `r(u) = #{(x, m) in window x set : x*m = u (mod p)}`
/// as a dense length-`p` array indexed by `u`.
pub fn multiplicity_table(ctx: &FieldCtx, q: &JQuery) -> Vec<u64> {
    let p = ctx.prime();
    let mut table = vec![0u64; p as usize];
    for x in q.shift + 1..=q.shift + q.h {
        let x = x % p;
        for &m in q.mset.elements() {
            table[(x * m % p) as usize] += 1;
        }
    }
    table
}

/// Exact count via the multiplicity table: `J = sum_u r(u)^2`, O(HM + p).
///
/// Sums over all of `F_p` including `u = 0`, which only contributes when a
/// shifted window passes through a multiple of `p`; this keeps the identity
/// with the literal oracle exact for every admissible shift.
pub fn j_count_fast(ctx: &FieldCtx, q: &JQuery) -> u64 {
    multiplicity_table(ctx, q).iter().map(|&c| c * c).sum()
}

/// Character-sum route, for unshifted windows:
/// `J = (1/(p-1)) * sum_chi |sum_{x<=H} chi(x)|^2 * |sum_m chi(m)|^2`.
///
/// Returns the float value and its nearest integer; shifted queries fall back
/// to [`j_count_fast`], since the identity is stated for `A = 0`.
pub fn j_count_charformula(ctx: &FieldCtx, q: &JQuery) -> Result<(f64, u64)> {
    if q.shift != 0 {
        let j = j_count_fast(ctx, q);
        return Ok((j as f64, j));
    }
    let p = ctx.prime();
    let mut acc = 0.0f64;
    for k in 0..p - 1 {
        let chi = Character::new(ctx, k)?;
        let interval = char_sum_interval(ctx, chi, 0, q.h)?;
        let set = char_sum_set(ctx, chi, &q.mset);
        acc += interval.norm_sqr() * set.norm_sqr();
    }
    let value = acc / (p - 1) as f64;
    let rounded = value.round();
    let tolerance = 1e-6 * value + 0.5;
    if !(value - rounded).abs().is_finite() || (value - rounded).abs() > tolerance {
        return Err(Error::RoundingDrift {
            value,
            rounded: rounded as i64,
            tolerance,
        });
    }
    Ok((value, rounded as u64))
}

// ---------------------------------------------------------------------------
// Bound expressions. All are evaluated with unit implied constants; the
// asymptotic factor is the logged surrogate from `O1Convention`.
// ---------------------------------------------------------------------------

/// `H^2 M^2 / p + H M^{3/2} * C (log p)^a` — main term plus error envelope.
pub fn bound_basic(p: u64, h: u64, m: u64, o1: O1Convention) -> f64 {
    let (pf, hf, mf) = (p as f64, h as f64, m as f64);
    hf * hf * mf * mf / pf + hf * mf.powf(1.5) * o1.surrogate(p)
}

/// The conditional reference curve `H^2 M^2 / p + H M p^{o(1)}`; evaluated
/// for comparison only, never asserted.
pub fn bound_moderate(p: u64, h: u64, m: u64, o1: O1Convention) -> f64 {
    let (pf, hf, mf) = (p as f64, h as f64, m as f64);
    hf * hf * mf * mf / pf + hf * mf * o1.surrogate(p)
}

/// `(H p^{-1/ell} + 1) * H^{1+o(1)} * M^{1+1/ell}` for fixed `ell >= 1`.
pub fn bound_garaev(p: u64, h: u64, m: u64, ell: u32, o1: O1Convention) -> Result<f64> {
    if ell < 1 {
        return Err(Error::BadEll(ell));
    }
    let (pf, hf, mf) = (p as f64, h as f64, m as f64);
    let ellf = ell as f64;
    Ok((hf * pf.powf(-1.0 / ellf) + 1.0) * hf * o1.surrogate(p) * mf.powf(1.0 + 1.0 / ellf))
}

/// The three-regime bound, selected by where `(H, M)` sits relative to
/// `p^{2/3}` and `p^{1/3}`.
pub fn bound_theorem1(p: u64, h: u64, m: u64, o1: O1Convention) -> BoundReport {
    let (pf, hf, mf) = (p as f64, h as f64, m as f64);
    let s = o1.surrogate(p);
    let (bound, regime) = if hf >= pf.powf(2.0 / 3.0) {
        (hf * hf * mf * mf / pf + hf * mf * s, "thm1-case1")
    } else if mf >= pf.powf(1.0 / 3.0) {
        (
            hf * hf * mf * mf / pf + hf * mf.powf(1.75) * pf.powf(-0.25) * s + mf * mf,
            "thm1-case2",
        )
    } else {
        (hf * mf * s + mf * mf, "thm1-case3")
    };
    BoundReport::new(bound, regime, BoundParams::plain(o1))
}

/// `H^2 M^2 / p + H M p^{o(1)} + M^2`, the unconditional variant intended
/// for `M <= p^{1/3 + o(1)}`.
pub fn bound_largeh(p: u64, h: u64, m: u64, o1: O1Convention) -> f64 {
    let (pf, hf, mf) = (p as f64, h as f64, m as f64);
    hf * hf * mf * mf / pf + hf * mf * o1.surrogate(p) + mf * mf
}

/// Whether `M <= p^{1/3} * surrogate`, the hypothesis under which
/// [`bound_largeh`] is intended to apply. Violations are flagged, the bound
/// is still evaluated.
pub fn largeh_hypothesis(p: u64, m: u64, o1: O1Convention) -> bool {
    (m as f64) <= (p as f64).powf(1.0 / 3.0) * o1.surrogate(p)
}

// ---------------------------------------------------------------------------
// Grid sweep
// ---------------------------------------------------------------------------

/// One cell of a J sweep grid.
#[derive(Clone, Debug)]
pub struct SweepCell {
    pub p: u64,
    pub h: u64,
    pub family: SetFamily,
}

/// One evaluated sweep row. A cell that failed (bad prime, oversized set,
/// window out of range) keeps its inputs and carries the error message; the
/// numeric fields stay empty.
#[derive(Clone, Debug)]
pub struct JSweepRow {
    pub index: usize,
    pub p: u64,
    pub h: u64,
    pub family: String,
    pub cell_seed: u64,
    pub ell: u32,
    pub o1: O1Convention,
    pub m: Option<u64>,
    pub mplus: Option<u64>,
    pub j_exact: Option<u64>,
    pub main_term: Option<f64>,
    /// `|J - H^2 M^2 / p|`.
    pub basic_error: Option<f64>,
    /// Measured constant of the basic envelope:
    /// `|J - H^2 M^2/p| / (H M^{3/2} * surrogate)`.
    pub basic_c: Option<f64>,
    pub bound_basic: Option<f64>,
    pub bound_moderate: Option<f64>,
    pub bound_garaev: Option<f64>,
    pub thm1_bound: Option<f64>,
    pub thm1_regime: Option<&'static str>,
    pub thm1_ratio: Option<f64>,
    pub bound_largeh: Option<f64>,
    pub largeh_hypothesis: Option<bool>,
    pub error: Option<String>,
}

fn failed_row(
    index: usize,
    cell: &SweepCell,
    seed: u64,
    ell: u32,
    o1: O1Convention,
    message: String,
) -> JSweepRow {
    JSweepRow {
        index,
        p: cell.p,
        h: cell.h,
        family: cell.family.label(),
        cell_seed: seed,
        ell,
        o1,
        m: None,
        mplus: None,
        j_exact: None,
        main_term: None,
        basic_error: None,
        basic_c: None,
        bound_basic: None,
        bound_moderate: None,
        bound_garaev: None,
        thm1_bound: None,
        thm1_regime: None,
        thm1_ratio: None,
        bound_largeh: None,
        largeh_hypothesis: None,
        error: Some(message),
    }
}

/// Evaluates every grid cell: exact `J` by the fast algorithm, all bound
/// expressions, ratios, and the measured basic-envelope constant.
///
/// Cells run in parallel but results come back in grid order, and each cell's
/// RNG seed depends only on `(seed, index)`, so the output is identical for
/// any worker count. Cell-level failures become flagged rows, never a sweep
/// abort.
pub fn sweep_j(
    cells: &[SweepCell],
    ell: u32,
    o1: O1Convention,
    seed: u64,
) -> Result<Vec<JSweepRow>> {
    if cells.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if ell < 1 {
        return Err(Error::BadEll(ell));
    }

    let mut contexts: BTreeMap<u64, std::result::Result<Arc<FieldCtx>, String>> = BTreeMap::new();
    for cell in cells {
        contexts
            .entry(cell.p)
            .or_insert_with(|| FieldCtx::new(cell.p).map(Arc::new).map_err(|e| e.to_string()));
    }

    let rows: Vec<JSweepRow> = cells
        .par_iter()
        .enumerate()
        .map(|(index, cell)| {
            let cell_seed = crate::cell_seed(seed, index as u64);
            let ctx = match &contexts[&cell.p] {
                Ok(ctx) => ctx.clone(),
                Err(msg) => return failed_row(index, cell, cell_seed, ell, o1, msg.clone()),
            };
            let mset = match make_set(&ctx, &cell.family, cell_seed) {
                Ok(mset) => mset,
                Err(e) => return failed_row(index, cell, cell_seed, ell, o1, e.to_string()),
            };
            let query = match JQuery::new(&ctx, cell.h, 0, mset) {
                Ok(q) => q,
                Err(e) => return failed_row(index, cell, cell_seed, ell, o1, e.to_string()),
            };

            let (p, h) = (cell.p, cell.h);
            let m = query.mset().cardinality();
            let mplus = query.mset().max_element();
            let j = j_count_fast(&ctx, &query);
            let main_term = (h as f64).powi(2) * (m as f64).powi(2) / p as f64;
            let basic_error = (j as f64 - main_term).abs();
            let envelope = h as f64 * (m as f64).powf(1.5) * o1.surrogate(p);
            let thm1 = bound_theorem1(p, h, m, o1).with_exact(j as f64);

            JSweepRow {
                index,
                p,
                h,
                family: cell.family.label(),
                cell_seed,
                ell,
                o1,
                m: Some(m),
                mplus: Some(mplus),
                j_exact: Some(j),
                main_term: Some(main_term),
                basic_error: Some(basic_error),
                basic_c: Some(basic_error / envelope),
                bound_basic: Some(bound_basic(p, h, m, o1)),
                bound_moderate: Some(bound_moderate(p, h, m, o1)),
                bound_garaev: bound_garaev(p, h, m, ell, o1).ok(),
                thm1_bound: Some(thm1.bound),
                thm1_regime: Some(thm1.regime),
                thm1_ratio: thm1.ratio,
                bound_largeh: Some(bound_largeh(p, h, m, o1)),
                largeh_hypothesis: Some(largeh_hypothesis(p, m, o1)),
                error: None,
            }
        })
        .collect();

    Ok(rows)
}

/// Random query used by the cross-check suites: a window length in
/// `[1, h_max]` and a random set of size in `[1, m_max]`.
pub fn random_query(ctx: &FieldCtx, h_max: u64, m_max: u64, seed: u64) -> JQuery {
    let p = ctx.prime();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = rng.gen_range(1..=h_max.min(p - 1));
    let size = rng.gen_range(1..=m_max.min(p - 1));
    let mset = make_set(ctx, &SetFamily::Random { size }, rng.gen()).expect("size checked");
    JQuery::new(ctx, h, 0, mset).expect("h checked")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> FieldCtx {
        FieldCtx::new(p).unwrap()
    }

    fn query(ctx: &FieldCtx, h: u64, elements: Vec<u64>) -> JQuery {
        JQuery::new(ctx, h, 0, MSet::new(ctx.prime(), elements).unwrap()).unwrap()
    }

    #[test]
    fn mset_validation() {
        assert!(MSet::new(7, vec![1, 2, 4]).is_ok());
        assert!(matches!(MSet::new(7, vec![0, 1]), Err(Error::InvalidSet)));
        assert!(matches!(MSet::new(7, vec![7]), Err(Error::InvalidSet)));
        assert!(matches!(MSet::new(7, vec![]), Err(Error::InvalidSet)));
        let m = MSet::new(7, vec![4, 2, 4, 1]).unwrap();
        assert_eq!(m.elements(), &[1, 2, 4]);
        assert_eq!(m.cardinality(), 3);
        assert_eq!(m.max_element(), 4);
    }

    #[test]
    fn families() {
        let c = ctx(7);
        let interval = make_set(&c, &SetFamily::Interval { start: 1, len: 3 }, 0).unwrap();
        assert_eq!(interval.elements(), &[1, 2, 3]);

        let squares = make_set(&c, &SetFamily::QuadraticResidues, 0).unwrap();
        assert_eq!(squares.elements(), &[1, 2, 4]);

        assert!(matches!(
            make_set(&c, &SetFamily::Random { size: 10 }, 0),
            Err(Error::TooLarge { .. })
        ));

        let random = make_set(&c, &SetFamily::Random { size: 4 }, 3).unwrap();
        let again = make_set(&c, &SetFamily::Random { size: 4 }, 3).unwrap();
        assert_eq!(random, again);
        assert_eq!(random.cardinality(), 4);

        let geo = make_set(&c, &SetFamily::Geometric { step: 2, size: 3 }, 0).unwrap();
        // g = 3 mod 7, ratio 9 = 2: {1, 2, 4}.
        assert_eq!(geo.elements(), &[1, 2, 4]);
    }

    #[test]
    fn worked_example_p5() {
        // Products x*m over {1,2} x {1,2} are {1, 2, 2, 4}: multiplicities
        // 1, 2, 1 and J = 1 + 4 + 1 = 6.
        let c = ctx(5);
        let q = query(&c, 2, vec![1, 2]);
        assert_eq!(j_count_oracle(&c, &q).unwrap(), 6);
        assert_eq!(j_count_fast(&c, &q), 6);
        let (value, rounded) = j_count_charformula(&c, &q).unwrap();
        assert_eq!(rounded, 6);
        assert!((value - 6.0).abs() < 1e-9);
        let r = multiplicity_table(&c, &q);
        assert_eq!(r[1], 1);
        assert_eq!(r[2], 2);
        assert_eq!(r[4], 1);
    }

    #[test]
    fn h_equals_one_gives_diagonal() {
        let c = ctx(7);
        let q = query(&c, 1, vec![3, 5]);
        assert_eq!(j_count_fast(&c, &q), 2);
        assert_eq!(j_count_oracle(&c, &q).unwrap(), 2);
    }

    #[test]
    fn full_group_gives_cube() {
        let c7 = ctx(7);
        let q = JQuery::new(&c7, 6, 0, MSet::full_group(7)).unwrap();
        assert_eq!(j_count_fast(&c7, &q), 216);
        let (_, rounded) = j_count_charformula(&c7, &q).unwrap();
        assert_eq!(rounded, 216);

        let c11 = ctx(11);
        let q = JQuery::new(&c11, 10, 0, MSet::full_group(11)).unwrap();
        assert_eq!(j_count_fast(&c11, &q), 1000);
    }

    #[test]
    fn singleton_full_interval() {
        let c = ctx(5);
        let q = query(&c, 4, vec![1]);
        let (value, rounded) = j_count_charformula(&c, &q).unwrap();
        assert_eq!(rounded, 4);
        assert!((value - 4.0).abs() < 1e-9);
    }

    #[test]
    fn oracle_budget_guard() {
        let c = ctx(10007);
        let q = JQuery::new(&c, 5000, 0, MSet::new(10007, vec![1, 2]).unwrap()).unwrap();
        assert!(matches!(
            j_count_oracle(&c, &q),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn shifted_windows_agree_with_oracle() {
        let c = ctx(11);
        for shift in [1u64, 5, 9, 10] {
            let q = JQuery::new(&c, 4, shift, MSet::new(11, vec![1, 3, 7]).unwrap()).unwrap();
            assert_eq!(j_count_fast(&c, &q), j_count_oracle(&c, &q).unwrap());
            // the char formula falls back to the fast route off the origin
            let (_, rounded) = j_count_charformula(&c, &q).unwrap();
            assert_eq!(rounded, j_count_fast(&c, &q));
        }
    }

    #[test]
    fn window_through_zero_counts_zero_products() {
        // shift 8, H = 4 over p = 11: the window {9, 10, 11, 12} passes
        // through 11 = 0 (mod 11), so products x*m = 0 pair up across the set.
        let c = ctx(11);
        let q = JQuery::new(&c, 4, 8, MSet::new(11, vec![1, 2]).unwrap()).unwrap();
        assert_eq!(j_count_fast(&c, &q), j_count_oracle(&c, &q).unwrap());
        let r = multiplicity_table(&c, &q);
        assert_eq!(r[0], 2);
    }

    #[test]
    fn diagonal_lower_bound_and_scale_invariance() {
        let c = ctx(101);
        for seed in 0..20 {
            let q = random_query(&c, 50, 12, seed);
            let j = j_count_fast(&c, &q);
            assert!(j >= q.h() * q.mset().cardinality());
            for cmul in [2u64, 45, 100] {
                let scaled = JQuery::new(
                    &c,
                    q.h(),
                    0,
                    q.mset().scale(&c, cmul).unwrap(),
                )
                .unwrap();
                assert_eq!(j_count_fast(&c, &scaled), j);
            }
        }
    }

    #[test]
    fn bound_arithmetic() {
        let o1 = O1Convention::default();
        let logp = (101f64).ln();
        let b = bound_basic(101, 10, 4, o1);
        assert!((b - (100.0 * 16.0 / 101.0 + 10.0 * 8.0 * logp)).abs() < 1e-9);

        let m = bound_moderate(101, 10, 4, o1);
        assert!((m - (100.0 * 16.0 / 101.0 + 40.0 * logp)).abs() < 1e-9);

        let g = bound_garaev(101, 10, 4, 1, o1).unwrap();
        let expect = (10.0 / 101.0 + 1.0) * 10.0 * logp * 16.0;
        assert!((g - expect).abs() < 1e-9);
        assert!(matches!(
            bound_garaev(101, 10, 4, 0, o1),
            Err(Error::BadEll(0))
        ));

        let lh = bound_largeh(101, 10, 4, o1);
        assert!((lh - (100.0 * 16.0 / 101.0 + 40.0 * logp + 16.0)).abs() < 1e-9);
    }

    #[test]
    fn theorem1_regimes() {
        let o1 = O1Convention::default();
        // 10007^(2/3) ~ 464.5, 10007^(1/3) ~ 21.5
        assert_eq!(bound_theorem1(10007, 1000, 30, o1).regime, "thm1-case1");
        assert_eq!(bound_theorem1(10007, 100, 30, o1).regime, "thm1-case2");
        assert_eq!(bound_theorem1(10007, 100, 10, o1).regime, "thm1-case3");
    }

    #[test]
    fn sweep_is_deterministic_and_flags_bad_cells() {
        let cells = vec![
            SweepCell {
                p: 101,
                h: 10,
                family: SetFamily::Random { size: 5 },
            },
            SweepCell {
                p: 101,
                h: 200,
                family: SetFamily::Random { size: 5 },
            },
            SweepCell {
                p: 91,
                h: 10,
                family: SetFamily::Random { size: 5 },
            },
        ];
        let o1 = O1Convention::default();
        let rows = sweep_j(&cells, 2, o1, 1).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows[0].error.is_none());
        assert!(rows[1].error.is_some(), "H >= p must be flagged");
        assert!(rows[2].error.is_some(), "91 = 7*13 must be flagged");

        let again = sweep_j(&cells, 2, o1, 1).unwrap();
        assert_eq!(rows[0].j_exact, again[0].j_exact);
        assert_eq!(rows[0].cell_seed, again[0].cell_seed);

        // single-cell sanity against the oracle
        let ctx = ctx(101);
        let mset = make_set(
            &ctx,
            &SetFamily::Random { size: 5 },
            rows[0].cell_seed,
        )
        .unwrap();
        let q = JQuery::new(&ctx, 10, 0, mset).unwrap();
        assert_eq!(rows[0].j_exact, Some(j_count_oracle(&ctx, &q).unwrap()));

        assert!(matches!(
            sweep_j(&[], 2, o1, 1),
            Err(Error::EmptyGrid)
        ));
    }
}
