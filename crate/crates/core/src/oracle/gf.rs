//! Prime-field scalar arithmetic on `u64` representatives.

use rand::Rng;

use crate::error::{Error, Result};

pub(crate) fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    base %= q;
    let mut acc = 1 % q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact over the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The field GF(q) for a prime `q`, passed by value everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Fp {
    pub q: u64,
}

impl Fp {
    pub fn new_checked(q: u64, min: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if q < min {
            return Err(Error::FieldTooSmall { q, min });
        }
        Ok(Self { q })
    }

    pub fn reduce(self, x: u64) -> u64 {
        x % self.q
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.q)
    }

    pub fn pow(self, base: u64, exp: u64) -> u64 {
        pow_mod(base, exp, self.q)
    }

    /// Inverse of a nonzero element via Fermat.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.q != 0, "inverse of zero");
        self.pow(a, self.q - 2)
    }

    pub fn rand(self, rng: &mut impl Rng) -> u64 {
        rng.gen_range(0..self.q)
    }
}
