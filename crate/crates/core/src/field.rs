//! Arithmetic in F_p for word-sized primes.
//!
//! Elements are plain `u64` values in `0..p`. The modulus is kept below 2^31
//! so that a product of two reduced elements fits in a `u64`.

use crate::error::{AdegError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: Self::DEFAULT_PRIME }
    }
}

impl PrimeField {
    pub const DEFAULT_PRIME: u64 = 7919;

    pub fn new(p: u64) -> Result<Self> {
        if p < 5 || p >= (1 << 31) || !is_prime(p) {
            return Err(AdegError::BadModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Fails when p is too small for order-m computations (p must exceed 4m).
    pub fn check_order(&self, m: usize) -> Result<()> {
        if self.p <= 4 * m as u64 {
            return Err(AdegError::SmallCharacteristic { p: self.p, m });
        }
        Ok(())
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
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a % self.p == 0 {
            return Err(AdegError::NotAUnit);
        }
        Ok(self.pow(a % self.p, self.p - 2))
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn from_i128(&self, a: i128) -> u64 {
        a.rem_euclid(self.p as i128) as u64
    }

    /// The image of num/den; fails if p divides den.
    pub fn from_ratio(&self, num: i128, den: i128) -> Result<u64> {
        let d = self.from_i128(den);
        if d == 0 {
            return Err(AdegError::SmallCharacteristic { p: self.p, m: 0 });
        }
        Ok(self.mul(self.from_i128(num), self.inv(d)?))
    }

    /// Representative in (-p/2, p/2].
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
