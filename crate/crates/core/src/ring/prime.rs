use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::primes::is_probable_prime;
use super::{ExtField, Field, FieldEmbedding, FiniteField, Ring, RingDescriptor};
use crate::error::ArithError;

/// Shorter factor length from which products go through the NTT.
const NTT_CUTOFF: usize = 96;

/// Shorter factor length up to which products are computed term by term.
const DIRECT_CUTOFF: usize = 32;

/// Largest supported prime (exclusive).
pub const MAX_PRIME: u64 = 1 << 62;

/// The prime field `F_p` for `p < 2^62`, elements stored in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    /// Bit length of `p`.
    bits: u32,
    /// Barrett constant `floor(2^(2 bits) / p)`.
    mu: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p < 2 || p >= MAX_PRIME || !is_probable_prime(p) {
            return Err(ArithError::InvalidDescriptor(format!(
                "{p} is not a prime below 2^62"
            )));
        }
        let bits = 64 - p.leading_zeros();
        let mu = ((1u128 << (2 * bits)) / p as u128) as u64;
        Ok(PrimeField { p, bits, mu })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_u128(&self, x: u128) -> u64 {
        (x % self.p as u128) as u64
    }

    /// `x mod p` for `x < p^2`.
    #[inline]
    pub fn reduce_product(&self, x: u128) -> u64 {
        let q =
            ((((x >> (self.bits - 1)) as u64) as u128 * self.mu as u128) >> (self.bits + 1)) as u64;
        let mut r = (x - q as u128 * self.p as u128) as u64;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    /// Coefficients `0 .. n` of the product of `a` and `b`, accumulating
    /// each in 128 bits and reducing once per coefficient.
    fn convolve(&self, a: &[u64], b: &[u64], n: usize) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let len = (a.len() + b.len() - 1).min(n);
        let p = self.p as u128;
        // Products below 2^(2 bits) that fit in one accumulator.
        let batch = if self.bits <= 32 {
            usize::MAX
        } else {
            1usize << (128 - 2 * self.bits)
        };
        (0..len)
            .map(|k| {
                let lo = k.saturating_sub(b.len() - 1);
                let hi = k.min(a.len() - 1);
                let mut acc = 0u128;
                let mut count = 0;
                for i in lo..=hi {
                    acc += a[i] as u128 * b[k - i] as u128;
                    count += 1;
                    if count == batch {
                        acc %= p;
                        count = 1;
                    }
                }
                (acc % p) as u64
            })
            .collect()
    }

    #[inline]
    pub fn from_u64(&self, x: u64) -> u64 {
        x % self.p
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn to_signed(&self, a: u64) -> i128 {
        if a > self.p / 2 {
            a as i128 - self.p as i128
        } else {
            a as i128
        }
    }

    pub fn inv_u64(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return None;
        }
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1 % self.p
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce_product(*a as u128 * *b as u128)
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn mul_coeffs(&self, a: &[u64], b: &[u64]) -> Option<Vec<u64>> {
        let short = a.len().min(b.len());
        if short >= NTT_CUTOFF {
            Some(super::ntt::mul_ntt(self, a, b))
        } else if short <= DIRECT_CUTOFF {
            Some(self.convolve(a, b, usize::MAX))
        } else {
            None
        }
    }
    fn mul_coeffs_trunc(&self, a: &[u64], b: &[u64], n: usize) -> Option<Vec<u64>> {
        (a.len().min(b.len()) <= DIRECT_CUTOFF).then(|| self.convolve(a, b, n))
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Result<u64, ArithError> {
        self.inv_u64(*a).ok_or_else(ArithError::non_unit)
    }
    fn characteristic(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn cardinality(&self) -> Option<BigUint> {
        Some(BigUint::from(self.p))
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
    fn element_from_index(&self, index: u128) -> u64 {
        (index % self.p as u128) as u64
    }
    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::PrimeField { p: self.p }
    }
}

impl FiniteField for PrimeField {
    fn prime(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> usize {
        1
    }
    fn coords(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }
    fn from_coords(&self, coords: &[u64]) -> u64 {
        coords.first().map_or(0, |c| c % self.p)
    }
    fn extension<R: rand::Rng + ?Sized>(
        &self,
        factor: usize,
        rng: &mut R,
    ) -> Result<(ExtField, FieldEmbedding), ArithError> {
        let big = ExtField::random(self.p, factor, rng)?;
        let emb = FieldEmbedding::from_prime(&big);
        Ok((big, emb))
    }
}
