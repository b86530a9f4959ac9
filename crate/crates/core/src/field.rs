//! Arithmetic in a prime field GF(p) with p ≡ 1 (mod 4).
//!
//! Residues are stored as plain `u64` values in `[0, p)`; a [`PrimeField`]
//! carries the modulus and a fixed square root of −1. [`ConjScalar`] pairs two
//! residues as `re + i·im` and supports the conjugation `re + i·im ↦ re − i·im`.
//!
//! Random points of a large prime field stand in for generic complex points:
//! a nonzero polynomial of degree `d` vanishes at a uniform point with
//! probability at most `d / p`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `127 · 2^24 + 1`, prime and ≡ 1 (mod 4).
pub const DEFAULT_MODULUS: u64 = 2_130_706_433;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    sqrt_neg_one: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField::new(DEFAULT_MODULUS).expect("default modulus is a valid prime")
    }
}

impl PrimeField {
    /// Builds the field after checking that `p` is prime and `p ≡ 1 (mod 4)`.
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 62 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p % 4 != 1 {
            return Err(Error::NoSquareRootOfMinusOne(p));
        }
        let mut field = PrimeField { p, sqrt_neg_one: 0 };
        // A quadratic non-residue g gives g^((p-1)/4) with square -1.
        let exp = (p - 1) / 4;
        for g in 2..p {
            let s = field.pow(g, exp);
            if field.mul(s, s) == p - 1 {
                field.sqrt_neg_one = s;
                break;
            }
        }
        Ok(field)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// The fixed element `i` with `i² = −1`.
    pub fn sqrt_neg_one(&self) -> u64 {
        self.sqrt_neg_one
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.p < 1 << 32 {
            (a * b) % self.p
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    /// Representative in `(−p/2, p/2]`, handy for printing small values.
    pub fn centered(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.p)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(1..self.p)
    }

    /// Uniformly random vector of length `dim`.
    pub fn random_vector<R: Rng + ?Sized>(&self, dim: usize, rng: &mut R) -> Vec<u64> {
        (0..dim).map(|_| self.random(rng)).collect()
    }
}

/// `re + i·im` with `i² = −1`. Multiplication follows the complex rule, and
/// [`ConjScalar::eval`] maps the pair to the residue `re + i·im` in GF(p).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConjScalar {
    pub re: u64,
    pub im: u64,
}

impl ConjScalar {
    pub fn new(re: u64, im: u64) -> Self {
        ConjScalar { re, im }
    }

    pub fn real(re: u64) -> Self {
        ConjScalar { re, im: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn conj(self, f: &PrimeField) -> Self {
        ConjScalar {
            re: self.re,
            im: f.neg(self.im),
        }
    }

    pub fn add(self, other: Self, f: &PrimeField) -> Self {
        ConjScalar {
            re: f.add(self.re, other.re),
            im: f.add(self.im, other.im),
        }
    }

    pub fn mul(self, other: Self, f: &PrimeField) -> Self {
        let re = f.sub(f.mul(self.re, other.re), f.mul(self.im, other.im));
        let im = f.add(f.mul(self.re, other.im), f.mul(self.im, other.re));
        ConjScalar { re, im }
    }

    /// The residue `re + i·im`; a ring homomorphism onto GF(p).
    pub fn eval(self, f: &PrimeField) -> u64 {
        f.add(self.re, f.mul(f.sqrt_neg_one(), self.im))
    }

    pub fn random<R: Rng + ?Sized>(f: &PrimeField, rng: &mut R) -> Self {
        ConjScalar {
            re: f.random(rng),
            im: f.random(rng),
        }
    }
}

/// Deterministic Miller–Rabin; the witness set is exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &WITNESSES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use proptest::prelude::*;

    #[test]
    fn default_modulus_is_valid() {
        let f = PrimeField::default();
        assert_eq!(f.modulus(), 127 * (1 << 24) + 1);
        let i = f.sqrt_neg_one();
        assert_eq!(f.mul(i, i), f.modulus() - 1);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(
            PrimeField::new(2_130_706_435),
            Err(Error::NotPrime(2_130_706_435))
        );
        assert_eq!(PrimeField::new(7), Err(Error::NoSquareRootOfMinusOne(7)));
        assert!(PrimeField::new(13).is_ok());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn primality_small_cases() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        // Carmichael number and a large known prime.
        assert!(!is_prime(561));
        assert!(is_prime(2_305_843_009_213_693_951));
    }

    #[test]
    fn inverse_and_reduce() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), None);
        assert_eq!(f.reduce(-1), 12);
        assert_eq!(f.centered(12), -1);
    }

    #[test]
    fn random_vector_is_deterministic_per_seed() {
        let f = PrimeField::default();
        let a = f.random_vector(3, &mut seeded(7));
        let b = f.random_vector(3, &mut seeded(7));
        assert_eq!(a, b);
        assert!(f.random_vector(0, &mut seeded(7)).is_empty());
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involutive_ring_automorphism(
            a in 0u64..DEFAULT_MODULUS, b in 0u64..DEFAULT_MODULUS,
            c in 0u64..DEFAULT_MODULUS, d in 0u64..DEFAULT_MODULUS,
        ) {
            let f = PrimeField::default();
            let x = ConjScalar::new(a, b);
            let y = ConjScalar::new(c, d);
            prop_assert_eq!(x.conj(&f).conj(&f), x);
            prop_assert_eq!(x.mul(y, &f).conj(&f), x.conj(&f).mul(y.conj(&f), &f));
            prop_assert_eq!(x.add(y, &f).conj(&f), x.conj(&f).add(y.conj(&f), &f));
            // eval is multiplicative
            prop_assert_eq!(x.mul(y, &f).eval(&f), f.mul(x.eval(&f), y.eval(&f)));
        }
    }
}
