//! Dense polynomials over `F_p` with just enough algebra for the character
//! sum checks: evaluation, Euclidean gcd, and the derivative test for
//! square-freeness. Coefficients are stored low degree first; the zero
//! polynomial is the empty coefficient list.

use rand::Rng;

use crate::field::{mulmod, powmod};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFp {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyFp {
    /// Canonicalizes the coefficient list: reduces mod `p` and trims the
    /// leading zeros so a nonzero polynomial ends in a nonzero coefficient.
    pub fn new(p: u64, coeffs: &[u64]) -> Self {
        let mut coeffs: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: vec![] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, &[c])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, &[0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` is the zero polynomial's sentinel.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, a: u64) -> u64 {
        let a = a % self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (mulmod(acc, a, self.p) + c) % self.p)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.p);
        }
        let coeffs: Vec<u64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(i as u64 % self.p, c, self.p))
            .collect();
        Self::new(self.p, &coeffs)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, &out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert_eq!(self.p, divisor.p);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return (Self::zero(p), self.clone());
        }
        let lead_inv = powmod(*divisor.coeffs.last().unwrap(), p - 2, p);
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; rem.len() - dd + 1];
        for i in (0..quo.len()).rev() {
            let top = rem[i + dd - 1];
            if top == 0 {
                continue;
            }
            let q = mulmod(top, lead_inv, p);
            quo[i] = q;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let sub = mulmod(q, b, p);
                rem[i + j] = (rem[i + j] + p - sub) % p;
            }
        }
        (Self::new(p, &quo), Self::new(p, &rem))
    }

    /// Monic greatest common divisor via the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = powmod(lead, self.p - 2, self.p);
                let coeffs: Vec<u64> = self
                    .coeffs
                    .iter()
                    .map(|&c| mulmod(c, inv, self.p))
                    .collect();
                Self::new(self.p, &coeffs)
            }
        }
    }

    /// True when the polynomial has no repeated factor. Nonzero constants
    /// count as square-free, the zero polynomial does not.
    ///
    /// The test is `gcd(f, f')` constant. A vanishing derivative (possible in
    /// characteristic p, e.g. `x^p + c`) makes the gcd equal `f` itself, which
    /// correctly rejects those perfect p-th powers.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return false;
        }
        self.gcd(other).degree() == Some(0)
    }

    /// Uniformly random polynomial of exactly the given degree.
    pub fn random<R: Rng>(rng: &mut R, p: u64, degree: usize) -> Self {
        let mut coeffs: Vec<u64> = (0..=degree).map(|_| rng.gen_range(0..p)).collect();
        coeffs[degree] = rng.gen_range(1..p);
        Self::new(p, &coeffs)
    }
}

impl std::fmt::Display for PolyFp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "x")?,
                1 => write!(f, "{c}x")?,
                _ if c == 1 => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_trims_leading_zeros() {
        let f = PolyFp::new(5, &[1, 2, 0, 0]);
        assert_eq!(f.degree(), Some(1));
        assert_eq!(PolyFp::new(5, &[0, 0]).degree(), None);
        assert_eq!(PolyFp::new(5, &[10, 6]).coeffs(), &[0, 1]);
    }

    #[test]
    fn horner_eval() {
        // f = x^2 + 3x + 2 over F_7
        let f = PolyFp::new(7, &[2, 3, 1]);
        assert_eq!(f.eval(0), 2);
        assert_eq!(f.eval(5), (25 + 15 + 2) % 7);
        assert_eq!(f.eval(12), f.eval(5));
    }

    #[test]
    fn gcd_of_shared_factor() {
        let p = 7;
        let x = PolyFp::x(p);
        let xp1 = PolyFp::new(p, &[1, 1]);
        let xp2 = PolyFp::new(p, &[2, 1]);
        let f = x.mul(&xp1);
        let g = x.mul(&xp2);
        assert_eq!(f.gcd(&g), x);
        assert!(!f.is_coprime(&g));
        assert!(xp1.is_coprime(&xp2));
    }

    #[test]
    fn squarefree_detection() {
        let p = 7;
        let x = PolyFp::x(p);
        assert!(x.is_squarefree());
        assert!(!x.mul(&x).is_squarefree());
        assert!(PolyFp::constant(p, 3).is_squarefree());
        assert!(!PolyFp::zero(p).is_squarefree());
        // x^2 + 1 factors over F_5 as (x+2)(x+3), still square-free.
        assert!(PolyFp::new(5, &[1, 0, 1]).is_squarefree());
    }

    #[test]
    fn frobenius_powers_are_rejected() {
        // x^5 + 1 = (x + 1)^5 over F_5; the derivative vanishes and the
        // gcd test must flag the repeated factor.
        let f = PolyFp::new(5, &[1, 0, 0, 0, 0, 1]);
        assert!(!f.is_squarefree());
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = 11;
        let f = PolyFp::new(p, &[3, 1, 4, 1, 5]);
        let g = PolyFp::new(p, &[2, 7, 1]);
        let (q, r) = f.div_rem(&g);
        let back = q.mul(&g);
        let back = PolyFp::new(
            p,
            &{
                let mut c = back.coeffs().to_vec();
                c.resize(c.len().max(r.coeffs().len()), 0);
                for (i, &rc) in r.coeffs().iter().enumerate() {
                    c[i] = (c[i] + rc) % p;
                }
                c
            },
        );
        assert_eq!(back, f);
        assert!(r.degree() < g.degree());
    }
}
