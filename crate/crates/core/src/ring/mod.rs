//! Coefficient rings.
//!
//! Every algorithm in this crate is written against the [`Ring`] and [`Field`]
//! traits. A ring value is a *context* (the modulus, the extension polynomial,
//! ...) and elements are plain data; all arithmetic goes through the context.
//! Elements are kept in canonical form, so `==` on elements is equality in the
//! ring.

mod descriptor;
mod ext;
mod ntt;
mod prime;
pub mod primes;
mod rational;
mod residue;

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};

pub use descriptor::RingDescriptor;
pub use ext::{find_irreducible, find_root, is_irreducible, ExtField, FieldEmbedding};
pub use prime::PrimeField;
pub use rational::{height_bits, reduce_mod, RationalField};
pub use residue::ResidueRing;

use crate::error::ArithError;

/// A commutative ring with identity.
pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Image of an integer under the canonical map `Z -> R`.
    fn from_int(&self, n: &BigInt) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// Product of the polynomials with coefficients `a` and `b`, when this
    /// ring knows something faster than Karatsuba for the given lengths.
    fn mul_coeffs(&self, _a: &[Self::Elem], _b: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        None
    }

    /// The first `n` coefficients of [`mul_coeffs`](Self::mul_coeffs), for
    /// short inputs.
    fn mul_coeffs_trunc(
        &self,
        _a: &[Self::Elem],
        _b: &[Self::Elem],
        _n: usize,
    ) -> Option<Vec<Self::Elem>> {
        None
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    /// Square-and-multiply.
    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A perfect field.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ArithError>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ArithError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `0` for characteristic zero.
    fn characteristic(&self) -> BigUint;

    /// `None` for infinite fields.
    fn cardinality(&self) -> Option<BigUint>;

    /// The unique `b` with `b^p = a` (identity in characteristic zero).
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem;

    /// Canonical embedding of the integer `index` into the sampling set
    /// `{0, 1, ..., N-1}`. Injective on `0..cardinality`.
    fn element_from_index(&self, index: u128) -> Self::Elem;

    fn descriptor(&self) -> RingDescriptor;
}

/// Finite fields `F_{p^e}` with coordinates over the prime subfield.
pub trait FiniteField: Field {
    fn prime(&self) -> u64;
    fn degree(&self) -> usize;
    /// Coordinates over `F_p` in the power basis (length `degree()`).
    fn coords(&self, a: &Self::Elem) -> Vec<u64>;
    fn from_coords(&self, coords: &[u64]) -> Self::Elem;

    /// `p^e`, saturating at `u128::MAX`.
    fn size(&self) -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..self.degree() {
            acc = acc.saturating_mul(self.prime() as u128);
        }
        acc
    }

    /// Builds `F_{p^(e*factor)}` together with an embedding of `self` into it.
    fn extension<R: rand::Rng + ?Sized>(
        &self,
        factor: usize,
        rng: &mut R,
    ) -> Result<(ExtField, FieldEmbedding), ArithError>;
}

/// Uniform draw from the sampling set `S = {0, ..., n-1}` embedded in `field`.
pub fn sample_uniform<F: Field, R: rand::Rng + ?Sized>(
    field: &F,
    n: u128,
    rng: &mut R,
) -> Result<F::Elem, ArithError> {
    check_sample_size(field, n)?;
    if n <= 1 {
        return Ok(field.zero());
    }
    Ok(field.element_from_index(rng.gen_range(0..n)))
}

/// Errors with `FieldTooSmall` when `n` exceeds the field cardinality.
pub fn check_sample_size<F: Field>(field: &F, n: u128) -> Result<(), ArithError> {
    if let Some(card) = field.cardinality() {
        if BigUint::from(n) > card {
            return Err(ArithError::FieldTooSmall { requested: n });
        }
    }
    Ok(())
}

/// Draws `count` pairwise distinct elements of `S = {0, ..., n-1}`.
pub fn sample_distinct<F: Field, R: rand::Rng + ?Sized>(
    field: &F,
    n: u128,
    count: usize,
    rng: &mut R,
) -> Result<Vec<F::Elem>, ArithError> {
    check_sample_size(field, n)?;
    if (count as u128) > n {
        return Err(ArithError::FieldTooSmall {
            requested: count as u128,
        });
    }
    let mut seen = std::collections::HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let idx = if n <= 1 { 0 } else { rng.gen_range(0..n) };
        if seen.insert(idx) {
            out.push(field.element_from_index(idx));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sample_singleton_is_zero() {
        let f = PrimeField::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(sample_uniform(&f, 1, &mut rng).unwrap(), 0);
    }

    #[test]
    fn sample_rejects_oversized_set() {
        let f = PrimeField::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(
            sample_uniform(&f, 8, &mut rng),
            Err(ArithError::FieldTooSmall { requested: 8 })
        );
    }

    #[test]
    fn sample_stream_is_reproducible() {
        let f = PrimeField::new(1_000_003).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20)
                .map(|_| sample_uniform(&f, 1000, &mut rng).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(42), draw(42));
        assert_ne!(draw(42), draw(43));
        assert!(draw(42).iter().all(|&x| x < 1000));
    }

    #[test]
    fn distinct_samples_are_distinct() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let xs = sample_distinct(&f, 50, 50, &mut rng).unwrap();
        let mut sorted = xs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 50);
    }
}
