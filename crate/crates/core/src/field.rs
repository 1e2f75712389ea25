//! Arithmetic in the prime field `F_p`.
//!
//! Residues are stored as `u64` values in `0..p`. The modulus is expected to
//! be below `2^32` so that products never overflow.

use serde::{Deserialize, Serialize};

/// A prime field `F_p`, identified by its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u64,
}

/// Largest modulus accepted, so that `a * b` fits in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    /// Returns `None` unless `p` is a prime below [`MAX_MODULUS`].
    pub fn new(p: u64) -> Option<Self> {
        (p < MAX_MODULUS && is_prime(p)).then_some(Self { p })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(self, a: u64) -> u64 {
        a % self.p
    }

    /// Reduces a signed integer into `0..p`.
    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(Fp::new(4).is_none());
        assert!(Fp::new(1).is_none());
        assert!(Fp::new(0).is_none());
        assert!(Fp::new(2).is_some());
        assert!(Fp::new(101).is_some());
    }

    #[test]
    fn inverses_mod_small_primes() {
        for p in [2u64, 3, 5, 7, 13] {
            let f = Fp::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn signed_reduction() {
        let f = Fp::new(5).unwrap();
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.from_i64(12), 2);
        assert_eq!(f.sub(1, 3), 3);
        assert_eq!(f.neg(0), 0);
    }
}
