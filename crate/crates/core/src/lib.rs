//! Exact-computation toolkit for the congruence count `J(H, M)` — the number
//! of solutions to `x*m = y*n (mod p)` with `x, y` in an interval and `m, n`
//! in a set of units — together with the multiplicative character sums,
//! two-dimensional congruence lattices, multidimensional Kloosterman sums and
//! bilinear/trilinear sums built on top of it.
//!
//! Everything countable is computed exactly in integers, usually by two or
//! three independent algorithms that are cross-checked against each other.
//! Bound expressions are evaluated with unit implied constants and a logged
//! `C * (log p)^a` stand-in for asymptotic factors; the harness reports
//! exact/bound ratios and measured constants instead of asserting
//! non-effective inequalities.

pub mod characters;
pub mod congruence;
pub mod error;
pub mod field;
pub mod kloosterman;
pub mod lattice;
pub mod poly;
pub mod report;
pub mod trilinear;

pub use characters::Character;
pub use congruence::{JQuery, MSet, SetFamily};
pub use error::{Error, Result};
pub use field::FieldCtx;
pub use kloosterman::{BilinearQuery, IntervalSet, KloostermanTable};
pub use lattice::LatticeBasis;
pub use poly::PolyFp;
pub use report::{BoundParams, BoundReport, O1Convention};
pub use trilinear::{ThetaTable, TrilinearQuery};

/// Derives a per-cell RNG seed from a sweep seed and a cell index.
///
/// SplitMix64-style mixing; the mapping is fixed so that sweep outputs are
/// reproducible no matter how cells are scheduled across workers.
pub fn cell_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
