use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{reduce_mod, Ring};
use crate::error::ArithError;

/// `Z / p^k` with elements in `[0, p^k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueRing {
    p: u64,
    k: u32,
    modulus: BigInt,
}

impl ResidueRing {
    pub fn new(p: u64, k: u32) -> Self {
        assert!(k >= 1);
        ResidueRing {
            p,
            k,
            modulus: BigInt::from(p).pow(k),
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// The residue field characteristic `p`.
    pub fn residue_characteristic(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.modulus)
    }

    /// Units are exactly the elements prime to `p`.
    pub fn inv(&self, a: &BigInt) -> Result<BigInt, ArithError> {
        let g = a.extended_gcd(&self.modulus);
        if !g.gcd.is_one() {
            return Err(ArithError::NonUnit {
                witness: Some(g.gcd.to_string()),
            });
        }
        Ok(g.x.mod_floor(&self.modulus))
    }

    pub fn from_rational(&self, a: &BigRational) -> Result<BigInt, ArithError> {
        reduce_mod(a, &self.modulus, self.p)
    }

    /// Only the trivial case `k = 1` is supported.
    pub fn pth_root(&self, a: &BigInt) -> Result<BigInt, ArithError> {
        if self.k == 1 {
            Ok(a.clone())
        } else {
            Err(ArithError::Unsupported(format!(
                "p-th roots in Z/{}^{}",
                self.p, self.k
            )))
        }
    }

    /// The same residue read modulo `p^j`, `j <= k`.
    pub fn project(&self, a: &BigInt, j: u32) -> BigInt {
        a.mod_floor(&BigInt::from(self.p).pow(j))
    }
}

impl Ring for ResidueRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a + b;
        if s >= self.modulus {
            s - &self.modulus
        } else {
            s
        }
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a - b;
        if s.sign() == num_bigint::Sign::Minus {
            s + &self.modulus
        } else {
            s
        }
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        if a.is_zero() {
            BigInt::zero()
        } else {
            &self.modulus - a
        }
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) % &self.modulus
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        self.reduce(n)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}
