use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, Ring, RingDescriptor};
use crate::error::ArithError;

/// The rational numbers, with arbitrary precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalField;

impl Ring for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

impl Field for RationalField {
    fn inv(&self, a: &BigRational) -> Result<BigRational, ArithError> {
        if a.is_zero() {
            Err(ArithError::non_unit())
        } else {
            Ok(a.recip())
        }
    }
    fn characteristic(&self) -> BigUint {
        BigUint::zero()
    }
    fn cardinality(&self) -> Option<BigUint> {
        None
    }
    fn pth_root(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn element_from_index(&self, index: u128) -> BigRational {
        BigRational::from_integer(BigInt::from(index))
    }
    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Rationals
    }
}

/// Image of `a/b` in `Z/(modulus)`; errors when `gcd(b, modulus) != 1`.
///
/// `prime` is only used to label the error.
pub fn reduce_mod(a: &BigRational, modulus: &BigInt, prime: u64) -> Result<BigInt, ArithError> {
    let num = a.numer().mod_floor(modulus);
    let den = a.denom().mod_floor(modulus);
    let g = den.extended_gcd(modulus);
    if !g.gcd.is_one() {
        return Err(ArithError::BadPrime(prime));
    }
    Ok((num * g.x).mod_floor(modulus))
}

/// Bit length of `max(|num|, den)`.
pub fn height_bits(a: &BigRational) -> u64 {
    a.numer().abs().bits().max(a.denom().bits())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic() {
        let k = RationalField;
        assert_eq!(k.add(&q(1, 2), &q(1, 3)), q(5, 6));
        assert_eq!(k.inv(&q(-2, 3)).unwrap(), q(-3, 2));
        assert!(k.inv(&q(0, 1)).is_err());
    }

    #[test]
    fn reduction_mod_prime() {
        let seven = BigInt::from(7);
        assert_eq!(reduce_mod(&q(5, 6), &seven, 7).unwrap(), BigInt::from(2));
        assert_eq!(
            reduce_mod(&q(1, 7), &seven, 7),
            Err(ArithError::BadPrime(7))
        );
        assert_eq!(reduce_mod(&q(-1, 2), &seven, 7).unwrap(), BigInt::from(3));
        assert_eq!(height_bits(&q(-5, 3)), 3);
    }
}
