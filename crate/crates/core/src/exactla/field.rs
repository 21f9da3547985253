use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of F_p, always kept in `0..p`.
pub type Scalar = u32;

/// The prime field F_p. Arithmetic goes through `u64` so any `p < 2^32` is safe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 + b as u64) % self.p as u64) as Scalar
    }

    #[inline]
    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as Scalar
    }

    #[inline]
    pub fn neg(self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 * b as u64) % self.p as u64) as Scalar
    }

    pub fn pow(self, mut a: Scalar, mut e: u64) -> Scalar {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: Scalar) -> Option<Scalar> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    pub fn reduce(self, v: i64) -> Scalar {
        v.rem_euclid(self.p as i64) as Scalar
    }

    /// `p^exp`, saturating; used for enumeration-size checks.
    pub fn space_size(self, exp: usize) -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..exp {
            acc = acc.saturating_mul(self.p as u128);
        }
        acc
    }

    /// Iterator over all field elements.
    pub fn elements(self) -> impl Iterator<Item = Scalar> {
        0..self.p
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(1).is_err());
        assert!(Fp::new(7).is_ok());
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7, 101] {
            let f = Fp::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            assert_eq!(f.inv(0), None);
        }
    }

    #[test]
    fn reduce_negative() {
        let f = Fp::new(5).unwrap();
        assert_eq!(f.reduce(-1), 4);
        assert_eq!(f.reduce(12), 2);
    }
}
