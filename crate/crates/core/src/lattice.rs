//! The congruence lattice `L(m, n) = {(x, y) in Z^2 : x*m = y*n (mod p)}`.
//!
//! The lattice has determinant `p`; its Gauss-reduced basis `(e, f)` gives
//! the short-vector geometry behind the recursion relating `J(H, M)` and
//! `J(K, M)`. Gauss (Lagrange) reduction runs in exact integer arithmetic and
//! guarantees `|<e, f>| <= |e|^2 / 2`, which pins the basis shape constants
//! explicitly: `e` is a shortest nonzero vector and `p <= |e||f| <= 2p`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::congruence::{j_count_fast, JQuery, MSet};
use crate::field::FieldCtx;

/// A Gauss-reduced basis of `L(m, n)`, canonically signed and tie-broken so
/// construction is reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub m: u64,
    pub n: u64,
    pub e: [i64; 2],
    pub f: [i64; 2],
}

fn norm_sq(v: [i64; 2]) -> i128 {
    let (x, y) = (v[0] as i128, v[1] as i128);
    x * x + y * y
}

fn dot(a: [i64; 2], b: [i64; 2]) -> i128 {
    a[0] as i128 * b[0] as i128 + a[1] as i128 * b[1] as i128
}

/// Nearest integer to `a / b` for `b > 0`; ties round up.
fn nearest_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    (2 * a + b).div_euclid(2 * b)
}

/// Flips the sign so the first nonzero coordinate is positive.
fn canonical_sign(v: [i64; 2]) -> [i64; 2] {
    if v[0] < 0 || (v[0] == 0 && v[1] < 0) {
        [-v[0], -v[1]]
    } else {
        v
    }
}

impl LatticeBasis {
    pub fn norm_sq_e(&self) -> i128 {
        norm_sq(self.e)
    }

    pub fn norm_sq_f(&self) -> i128 {
        norm_sq(self.f)
    }

    pub fn det(&self) -> i128 {
        self.e[0] as i128 * self.f[1] as i128 - self.e[1] as i128 * self.f[0] as i128
    }

    /// Membership test for `L(m, n)`, valid for negative coordinates too.
    pub fn contains(&self, ctx: &FieldCtx, v: [i64; 2]) -> bool {
        in_lattice(ctx, self.m, self.n, v)
    }

    /// Integer coordinates `(a, b)` with `u = a*e + b*f`, or `None` when `u`
    /// is not a lattice point. Solved by Cramer's rule against `det = +-p`.
    pub fn decompose(&self, u: [i64; 2]) -> Option<(i64, i64)> {
        let det = self.det();
        let a_num = u[0] as i128 * self.f[1] as i128 - u[1] as i128 * self.f[0] as i128;
        let b_num = self.e[0] as i128 * u[1] as i128 - self.e[1] as i128 * u[0] as i128;
        if a_num % det != 0 || b_num % det != 0 {
            return None;
        }
        Some(((a_num / det) as i64, (b_num / det) as i64))
    }
}

pub fn in_lattice(ctx: &FieldCtx, m: u64, n: u64, v: [i64; 2]) -> bool {
    let p = ctx.prime();
    let xm = ctx.mul(ctx.reduce(v[0]), m);
    let yn = ctx.mul(ctx.reduce(v[1]), n);
    xm % p == yn % p
}

/// Gauss-reduced basis of `L(m, n)` for units `m, n`.
///
/// Reduction starts from the generators `(n * m^{-1} mod p, 1)` and `(p, 0)`.
/// The returned pair satisfies `|e| <= |f|`, `|<e, f>| <= |e|^2 / 2`,
/// `|det| = p`, and the canonical-sign and lexicographic tie rules, so equal
/// inputs always produce the identical basis.
pub fn lattice_basis(ctx: &FieldCtx, m: u64, n: u64) -> LatticeBasis {
    let p = ctx.prime();
    assert!(m % p != 0 && n % p != 0, "m, n must be units");
    let t = ctx.mul(n, ctx.inverse(m).expect("m is a unit"));

    let mut v1 = [t as i64, 1i64];
    let mut v2 = [p as i64, 0i64];
    loop {
        if norm_sq(v2) < norm_sq(v1) {
            std::mem::swap(&mut v1, &mut v2);
        }
        let mu = nearest_div(dot(v1, v2), norm_sq(v1));
        if mu == 0 {
            break;
        }
        v2 = [v2[0] - mu as i64 * v1[0], v2[1] - mu as i64 * v1[1]];
        if norm_sq(v2) >= norm_sq(v1) {
            break;
        }
    }
    if norm_sq(v2) < norm_sq(v1) {
        std::mem::swap(&mut v1, &mut v2);
    }

    let mut e = canonical_sign(v1);
    let mut f = canonical_sign(v2);
    if norm_sq(e) == norm_sq(f) && f < e {
        std::mem::swap(&mut e, &mut f);
    }

    let basis = LatticeBasis { m, n, e, f };
    let (ne, nf) = (basis.norm_sq_e(), basis.norm_sq_f());
    let p2 = (p as i128) * (p as i128);
    assert!(basis.contains(ctx, e) && basis.contains(ctx, f));
    assert_eq!(basis.det().unsigned_abs(), p as u128);
    assert!(ne <= nf);
    assert!(2 * dot(e, f).abs() <= ne, "basis must be Gauss-reduced");
    assert!(ne * nf >= p2 && ne * nf <= 4 * p2);
    basis
}

/// Exact count of lattice points of `L(m, n)` in the box
/// `[A+1, A+H] x [A+1, A+H]`, in O(H): for each `x` the residue class of `y`
/// is forced, and a window shorter than `p` holds at most one member of it.
pub fn count_box(ctx: &FieldCtx, m: u64, n: u64, h: u64, shift: u64) -> u64 {
    let p = ctx.prime();
    assert!(h >= 1 && h < p, "box side must lie in [1, p)");
    assert!(shift < p);
    let ratio = ctx.mul(m, ctx.inverse(n).expect("n is a unit"));
    let (lo, hi) = (shift + 1, shift + h);
    let mut count = 0u64;
    for x in lo..=hi {
        let t = ctx.mul(x % p, ratio);
        for candidate in [t, t + p] {
            if candidate >= lo && candidate <= hi {
                count += 1;
            }
        }
    }
    count
}

/// The two exact counts and the measured constant of the recursion
/// `K*J(H, M) = H*J(K, M) + O((H+K)(HK/p + 1) M^2)`.
#[derive(Clone, Copy, Debug)]
pub struct HtokRecord {
    pub j_h: u64,
    pub j_k: u64,
    /// `|K*J(H) - H*J(K)| / ((H+K)(HK/p + 1) M^2)`.
    pub measured_c: f64,
}

pub fn htok_constant(ctx: &FieldCtx, h: u64, k: u64, mset: &MSet) -> HtokRecord {
    let p = ctx.prime();
    let j_h = j_count_fast(ctx, &JQuery::new(ctx, h, 0, mset.clone()).expect("valid h"));
    let j_k = j_count_fast(ctx, &JQuery::new(ctx, k, 0, mset.clone()).expect("valid k"));
    let lhs = (k as i128 * j_h as i128 - h as i128 * j_k as i128).unsigned_abs();
    let m = mset.cardinality() as f64;
    let denom =
        (h + k) as f64 * ((h as f64 * k as f64) / p as f64 + 1.0) * m * m;
    HtokRecord {
        j_h,
        j_k,
        measured_c: lhs as f64 / denom,
    }
}

/// Exhaustive reference for the shortest nonzero vector: scans the full
/// square `|x|, |y| <= p`. Independent of the reduction path; used by the
/// verification suite at small p.
pub fn shortest_nonzero_norm_sq(ctx: &FieldCtx, m: u64, n: u64) -> i128 {
    let p = ctx.prime() as i64;
    let mut best = i128::MAX;
    for x in -p..=p {
        for y in -p..=p {
            if (x, y) == (0, 0) {
                continue;
            }
            if in_lattice(ctx, m, n, [x, y]) {
                best = best.min(norm_sq([x, y]));
            }
        }
    }
    best
}

/// Random unit pairs for basis sweeps; deterministic given the seed.
pub fn random_unit_pairs(ctx: &FieldCtx, count: usize, seed: u64) -> Vec<(u64, u64)> {
    let p = ctx.prime();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (rng.gen_range(1..p), rng.gen_range(1..p)))
        .collect()
}
