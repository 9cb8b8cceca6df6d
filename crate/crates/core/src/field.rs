//! Prime-field evaluation context.
//!
//! A [`FieldCtx`] fixes a prime `p`, its smallest primitive root `g`, and the
//! lookup tables every other module leans on: discrete logarithms base `g`,
//! modular inverses, and the roots of unity behind the additive character
//! `e_p(t) = exp(2*pi*i*t/p)` and the multiplicative characters. Construction
//! is O(p) time and memory; all lookups afterwards are O(1). The context is
//! immutable once built, so shared references can be used freely from
//! parallel workers.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Immutable evaluation context for the prime field `F_p`.
///
/// Field elements are represented by their canonical residues `{0, ..., p-1}`.
#[derive(Clone)]
pub struct FieldCtx {
    p: u64,
    g: u64,
    /// `ind[x]` is the discrete logarithm of `x` base `g`, for `x` in `[1, p-1]`.
    /// Slot 0 is unused.
    ind: Vec<u32>,
    /// `inv[x]` is the inverse of `x` modulo `p`; slot 0 is unused.
    inv: Vec<u32>,
    /// `unit_roots[j] = exp(2*pi*i*j / (p-1))` for `j` in `[0, p-2]`.
    unit_roots: Vec<Complex64>,
    /// `add_roots[t] = exp(2*pi*i*t / p)` for `t` in `[0, p-1]`.
    add_roots: Vec<Complex64>,
}

impl FieldCtx {
    /// Builds the context for a prime `p >= 3`.
    ///
    /// The primitive root is the smallest positive one, so every downstream
    /// character index is reproducible across runs. Primality is certified by
    /// trial division, which is all the intended desk scale (p up to ~10^5)
    /// needs.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 {
            return Err(Error::TooSmall(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let g = smallest_primitive_root(p);

        let mut ind = vec![0u32; p as usize];
        let mut x = 1u64;
        for j in 0..p - 1 {
            ind[x as usize] = j as u32;
            x = mulmod(x, g, p);
        }
        debug_assert_eq!(x, 1, "g must have order p-1");

        // inv[x] = -(p/x) * inv[p mod x] mod p, the standard linear-time recurrence.
        let mut inv = vec![0u32; p as usize];
        inv[1] = 1;
        for x in 2..p {
            let q = p / x;
            let r = (p % x) as usize;
            inv[x as usize] = (p - mulmod(q, inv[r] as u64, p)) as u32;
        }

        let order = (p - 1) as f64;
        let unit_roots = (0..p - 1)
            .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / order))
            .collect();
        let add_roots = (0..p)
            .map(|t| Complex64::from_polar(1.0, TAU * t as f64 / p as f64))
            .collect();

        Ok(Self {
            p,
            g,
            ind,
            inv,
            unit_roots,
            add_roots,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// The smallest primitive root modulo `p`.
    pub fn generator(&self) -> u64 {
        self.g
    }

    /// Discrete logarithm of `x` base `g`, for `x` not divisible by `p`.
    pub fn index(&self, x: u64) -> u64 {
        let x = x % self.p;
        assert!(x != 0, "discrete log of 0 is undefined");
        self.ind[x as usize] as u64
    }

    /// Inverse of `x` modulo `p`.
    pub fn inverse(&self, x: u64) -> Result<u64> {
        let x = x % self.p;
        if x == 0 {
            return Err(Error::ZeroInverse(self.p));
        }
        Ok(self.inv[x as usize] as u64)
    }

    /// The additive character `e_p(t) = exp(2*pi*i*t/p)`; `t` is reduced mod `p`.
    pub fn additive_char(&self, t: i64) -> Complex64 {
        self.add_roots[t.rem_euclid(self.p as i64) as usize]
    }

    /// `exp(2*pi*i*j/(p-1))` with `j` reduced modulo `p - 1`.
    pub(crate) fn unit_root(&self, j: u64) -> Complex64 {
        self.unit_roots[(j % (self.p - 1)) as usize]
    }

    /// Product of two residues modulo `p`.
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mulmod(a % self.p, b % self.p, self.p)
    }

    /// Canonical residue of a (possibly negative) integer.
    pub fn reduce(&self, t: i64) -> u64 {
        t.rem_euclid(self.p as i64) as u64
    }

    /// Iterator over the units `1, ..., p-1`.
    pub fn units(&self) -> impl Iterator<Item = u64> {
        1..self.p
    }
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("g", &self.g)
            .finish()
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic trial-division primality test; exact at desk scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn smallest_primitive_root(p: u64) -> u64 {
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| powmod(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root")
}
