//! Arithmetic in the prime field F_p for an odd prime p.
//!
//! Scalars are plain `u64` residues in `[0, p)`; all operations go through a
//! [`PrimeField`] context so the modulus is a single shared ring-level
//! constant. p is capped at 2^31 so that products fit in `u64` before the
//! widening reduction.

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u64 = 32003;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 || p > (1 << 31) || !is_prime(p) {
            return Err(Error::BadModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero(self.p));
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus must be prime");
        Ok(self.reduce_i64(t0))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
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

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn invert_small() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.inv(2).unwrap(), 3);
    }

    #[test]
    fn invert_identity() {
        let f = PrimeField::new(32003).unwrap();
        assert_eq!(f.inv(1).unwrap(), 1);
    }

    #[test]
    fn invert_checked_by_multiplication() {
        let f = PrimeField::new(32003).unwrap();
        let v = f.inv(31999).unwrap();
        assert_eq!(f.mul(31999, v), 1);
    }

    #[test]
    fn invert_zero_is_an_error() {
        let f = PrimeField::new(32003).unwrap();
        assert!(f.inv(0).is_err());
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(32001).is_err()); // 3 * 10667
    }

    // Field axioms sampled heavily; 10^4 triples per modulus.
    #[test]
    fn field_axioms_randomized() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for p in [5u64, 101, 32003] {
            let f = PrimeField::new(p).unwrap();
            for _ in 0..10_000 {
                let a = rng.gen_range(0..p);
                let b = rng.gen_range(0..p);
                let c = rng.gen_range(0..p);
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
        }
    }
}
