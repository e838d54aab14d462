use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

/// Knobs of a solve.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveConfig {
    /// Target failure probability of one attempt.
    pub epsilon: BigRational,
    pub seed: u64,
    /// Degree bound of the solution set; defaults to the Bezout number.
    pub delta_bound: Option<u64>,
    /// Extra attempts after the first.
    pub max_retries: u32,
    /// Re-check every lifted curve against its fiber.
    pub check_curves: bool,
}

pub const DEFAULT_SEED: u64 = 0x6765_6f72_6573;

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            epsilon: BigRational::new(1.into(), 100.into()),
            seed: DEFAULT_SEED,
            delta_bound: None,
            max_retries: 5,
            check_curves: false,
        }
    }
}

/// `ceil(x / epsilon)` saturated to `u128`.
pub fn scaled_by_inverse_epsilon(x: &BigUint, epsilon: &BigRational) -> u128 {
    let num = epsilon.numer().magnitude();
    let den = epsilon.denom().magnitude();
    let v = (x * den).div_ceil(num);
    v.to_u128().unwrap_or(u128::MAX)
}

/// Size of the sampling set for the change of variables and the lifting
/// point: `ceil(2 n^2 r d delta^3 / epsilon)`.
pub fn preprocessing_size(n: usize, r: usize, d: usize, delta: u64, epsilon: &BigRational) -> u128 {
    let x = BigUint::from(2u32)
        * BigUint::from(n).pow(2)
        * BigUint::from(r)
        * BigUint::from(d)
        * BigUint::from(delta).pow(3);
    scaled_by_inverse_epsilon(&x, epsilon)
}

/// Field size the inner steps need: `ceil(12 r delta^4 / epsilon)`.
pub fn inner_size(r: usize, delta: u64, epsilon: &BigRational) -> u128 {
    let x = BigUint::from(12u32) * BigUint::from(r) * BigUint::from(delta).pow(4);
    scaled_by_inverse_epsilon(&x, epsilon)
}

/// Sampling set for the projection points of a polynomial of degree `d`
/// against a curve of degree `delta`: `ceil((D + 1)(delta^2 + D) / epsilon)`
/// with `D = d delta`.
pub fn projection_size(d: usize, delta: u64, epsilon: &BigRational) -> u128 {
    let big_d = BigUint::from(d) * BigUint::from(delta);
    let x = (&big_d + BigUint::one()) * (BigUint::from(delta).pow(2) + &big_d);
    scaled_by_inverse_epsilon(&x, epsilon)
}

/// Smallest `e >= 1` with `q^e >= target`.
pub fn extension_degree(q: u128, target: u128) -> usize {
    let mut e = 1;
    let mut size = q;
    while size < target {
        size = size.saturating_mul(q);
        e += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sizes() {
        let e = eps(1, 100);
        assert_eq!(preprocessing_size(2, 2, 2, 4, &e), 2 * 4 * 2 * 2 * 64 * 100);
        assert_eq!(inner_size(2, 4, &e), 12 * 2 * 256 * 100);
        assert_eq!(projection_size(2, 2, &e), 5 * 8 * 100);
        assert_eq!(
            scaled_by_inverse_epsilon(&BigUint::from(1u32), &eps(3, 10)),
            4
        );
    }

    #[test]
    fn extension_degrees() {
        assert_eq!(extension_degree(7, 614_400), 7);
        assert_eq!(extension_degree(1009, 1009), 1);
        assert_eq!(extension_degree(1009, 1010), 2);
        assert_eq!(extension_degree(2, 1), 1);
    }
}
