use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::kronecker::SolveError;
use crate::ring::height_bits;

/// Bound on the bit size of reconstructed coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeightBudget {
    pub eta: u64,
    /// Double `eta` when reconstruction fails instead of giving up.
    pub doubling: bool,
}

impl HeightBudget {
    pub fn doubled(&self) -> HeightBudget {
        HeightBudget {
            eta: self.eta.saturating_mul(2),
            doubling: self.doubling,
        }
    }
}

/// Initial height budget `4 n d^(r-1) (h + n d) (1 + log2(n d h + 2))^2`
/// for `n` variables, `r` equations of degree at most `d` and coefficients
/// of `h` bits.
pub fn height_budget(n: usize, d: usize, r: usize, h: u64) -> HeightBudget {
    let (n, d) = (n as u64, d.max(1) as u64);
    let log = 64 - (n * d * h + 2).leading_zeros() as u64;
    let eta = 4u64
        .saturating_mul(n)
        .saturating_mul(d.saturating_pow(r.saturating_sub(1) as u32))
        .saturating_mul(h + n * d)
        .saturating_mul((1 + log) * (1 + log));
    HeightBudget {
        eta: eta.max(1),
        doubling: true,
    }
}

/// The fraction `a/b` with `|a|, b <= sqrt(f/2)` and `a = g b mod f`, by the
/// extended Euclidean remainder sequence of `(f, g)`.
pub fn rational_reconstruct(
    g: &BigInt,
    f: &BigInt,
    budget: &HeightBudget,
) -> Result<BigRational, SolveError> {
    let bound = (f / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (f.clone(), g.mod_floor(f));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return Err(SolveError::NoReconstruction);
    }
    let x = BigRational::new(r1, t1);
    if height_bits(&x) > budget.eta {
        return Err(SolveError::NoReconstruction);
    }
    Ok(x)
}
