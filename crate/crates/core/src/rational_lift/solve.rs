use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::padic::PadicState;
use super::reconstruct::{height_budget, rational_reconstruct, HeightBudget};
use crate::kronecker::{
    attempt, attempt_inner, drive, extension_degree, finalize, inner_size, projection_size,
    scaled_by_inverse_epsilon, verify, Fiber, Problem, SolveConfig, SolveError, SolveStats,
};
use crate::linalg::Matrix;
use crate::poly::{Poly, PolyRing};
use crate::ring::{primes::random_prime_in, FiniteField, PrimeField, RationalField, Ring};
use crate::slp::SystemSpec;

/// Largest prime the modular stage works with.
pub const PRIME_CAP: u64 = 1 << 61;

/// Times the height budget may double before a new prime is drawn.
const ETA_DOUBLINGS: u32 = 3;

/// A fiber over the rationals and how it was obtained.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSolution {
    pub fiber: Fiber<RationalField>,
    pub prime: u64,
    /// The last lifting precision was `prime^exponent`.
    pub exponent: u32,
    pub stats: SolveStats,
}

/// Crude majorant of the bit size of the integer whose prime factors are
/// the unlucky primes: `d^r 2^n (h + 1) (ceil(log2 1/eps) + 2) (n + r + 1)`.
pub fn unlucky_bound(spec: &SystemSpec, epsilon: &BigRational) -> BigUint {
    let (n, r, d) = (spec.n, spec.r(), spec.max_degree());
    let h = spec.height_bits();
    let (num, den) = (epsilon.numer().magnitude(), epsilon.denom().magnitude());
    let mut log = 0u32;
    while (num << log) < *den {
        log += 1;
    }
    BigUint::from(d).pow(r as u32)
        * (BigUint::one() << n)
        * BigUint::from(h + 1)
        * BigUint::from(log + 2)
        * BigUint::from(n + r + 1)
}

/// The interval `(4 H / eps, 10 H / eps]` primes are drawn from, capped at
/// [`PRIME_CAP`].
pub fn prime_interval(spec: &SystemSpec, epsilon: &BigRational) -> Result<(u64, u64), SolveError> {
    let bound = unlucky_bound(spec, epsilon);
    let (num, den) = (epsilon.numer().magnitude(), epsilon.denom().magnitude());
    let lo = (BigUint::from(4u32) * &bound * den) / num;
    let hi = (BigUint::from(10u32) * &bound * den) / num;
    let lo = lo.to_u64().filter(|&x| x < PRIME_CAP).ok_or_else(|| {
        SolveError::Unsupported(
            "the lucky-prime interval lies above 2^61; multi-modular lifting is not available"
                .into(),
        )
    })?;
    let hi = hi.to_u64().unwrap_or(PRIME_CAP).min(PRIME_CAP);
    Ok((lo, hi))
}

/// A random prime from [`prime_interval`].
pub fn lucky_prime<R: Rng + ?Sized>(
    spec: &SystemSpec,
    epsilon: &BigRational,
    rng: &mut R,
) -> Result<u64, SolveError> {
    let (lo, hi) = prime_interval(spec, epsilon)?;
    random_prime_in(lo, hi, rng)
        .ok_or_else(|| SolveError::Unsupported(format!("no prime in ({lo}, {hi}]")))
}

/// Size of the integer set the change of variables and the point are drawn
/// from: `2 D / eps` with
/// `D = r (n + 1) ((n + 1) d delta^2 + 2 delta^3 + n^2 2^(n-1) d delta^2)`.
pub fn sample_size(n: usize, r: usize, d: usize, delta: u64, epsilon: &BigRational) -> u128 {
    let (nb, db, dl) = (BigUint::from(n), BigUint::from(d), BigUint::from(delta));
    let dl2 = dl.pow(2);
    let inner = (&nb + 1u32) * &db * &dl2
        + BigUint::from(2u32) * dl.pow(3)
        + nb.pow(2) * (BigUint::one() << (n - 1)) * &db * &dl2;
    let big_d = BigUint::from(r) * (&nb + 1u32) * inner;
    scaled_by_inverse_epsilon(&(BigUint::from(2u32) * big_d), epsilon)
}

fn to_rational_matrix(a: &Matrix<BigInt>) -> Matrix<BigRational> {
    a.iter()
        .map(|row| {
            row.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

/// Reconstructs the fiber over the rationals from the lifted state.
fn reconstruct_fiber(
    state: &PadicState,
    pb: &Problem<RationalField>,
    budget: &HeightBudget,
) -> Result<Fiber<RationalField>, SolveError> {
    let f = state.modulus();
    let qx = PolyRing::new(RationalField);
    let lift = |p: &Poly<BigInt>, len: usize| -> Result<Poly<BigRational>, SolveError> {
        let zero = BigInt::zero();
        let cs = (0..len)
            .map(|i| rational_reconstruct(p.get(i).unwrap_or(&zero), &f, budget))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(qx.from_coeffs(cs))
    };
    let deg = state.m().len() - 1;
    let mut m = lift(state.m(), deg)?;
    m = qx.add(&m, &qx.monomial(BigRational::one(), deg));
    let dm = qx.derivative(&m);
    let dm_inv = qx
        .modinv(&dm, &m)
        .map_err(|_| SolveError::NoReconstruction)?;
    let v = state
        .numerators()
        .iter()
        .map(|w| Ok(qx.rem(&qx.mul(&lift(w, deg)?, &dm_inv), &m)))
        .collect::<Result<Vec<_>, SolveError>>()?;
    let mut fiber = Fiber {
        level: pb.r,
        n: pb.n,
        lambda: pb.lambda.clone(),
        point: pb.point.clone(),
        m,
        v,
        w: Vec::new(),
    };
    finalize(&RationalField, &mut fiber);
    Ok(fiber)
}

/// One run with the change of variables, the point and the prime fixed:
/// solve modulo `prime`, lift `p`-adically and reconstruct.
#[allow(clippy::too_many_arguments)]
pub fn solve_over_q_with<R: Rng + ?Sized>(
    spec: &SystemSpec,
    cfg: &SolveConfig,
    lambda: &Matrix<BigInt>,
    point: &[BigInt],
    prime: u64,
    delta: u64,
    rng: &mut R,
    stats: &mut SolveStats,
) -> Result<(Fiber<RationalField>, u32), SolveError> {
    let (n, r, d) = (spec.n, spec.r(), spec.max_degree());
    let qpoint: Vec<BigRational> = point
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    let pb = Problem::new(
        &RationalField,
        spec,
        to_rational_matrix(lambda),
        qpoint,
        delta,
        &cfg.epsilon,
    )?;

    let k = PrimeField::new(prime).map_err(|e| SolveError::Unsupported(e.to_string()))?;
    let lp: Matrix<u64> = lambda
        .iter()
        .map(|row| row.iter().map(|x| k.from_int(x)).collect())
        .collect();
    let pp: Vec<u64> = point.iter().map(|x| k.from_int(x)).collect();
    let work = inner_size(r, delta, &cfg.epsilon).max(projection_size(d, delta, &cfg.epsilon));
    let modular = if u128::from(prime) >= work {
        stats.extension_degree = 1;
        attempt(&k, spec, cfg, lp, pp, delta, rng, stats)?.0
    } else {
        let e = extension_degree(u128::from(prime), work);
        stats.extension_degree = e;
        let (big, emb) = k.extension(e, rng)?;
        attempt_inner(&k, &big, &emb, spec, cfg, &lp, &pp, delta, rng, stats)?
    };
    debug_assert_eq!(k.degree(), 1);

    let mut state = PadicState::new(&pb, &k, &modular)?;
    let mut budget = height_budget(n, d, r, spec.height_bits());
    let mut doublings = 0;
    let mut previous: Option<Fiber<RationalField>> = None;
    loop {
        let candidate = reconstruct_fiber(&state, &pb, &budget).ok();
        if let Some(fib) = &candidate {
            if previous.as_ref() == Some(fib) && verify(&RationalField, spec, fib).passed() {
                return Ok((fib.clone(), state.exponent()));
            }
        }
        previous = candidate;
        let bits = state.modulus().bits();
        if bits > 2 * budget.eta {
            if !budget.doubling || doublings >= ETA_DOUBLINGS {
                return Err(SolveError::NoReconstruction);
            }
            budget = budget.doubled();
            doublings += 1;
        }
        state.step()?;
    }
}

/// Solves a system with integer coefficients over the rationals.
pub fn solve_over_q(spec: &SystemSpec, cfg: &SolveConfig) -> Result<RationalSolution, SolveError> {
    let (n, r, d) = (spec.n, spec.r(), spec.max_degree());
    let mut used = None;
    let ((fiber, exponent), stats) = drive(spec, cfg, |delta, rng, stats| {
        let size = sample_size(n, r, d, delta, &cfg.epsilon).max(2);
        let mut draw = || BigInt::from(rng.gen_range(0..size));
        let lambda: Matrix<BigInt> = if n == 1 {
            vec![vec![BigInt::one()]]
        } else {
            (0..n).map(|_| (0..n).map(|_| draw()).collect()).collect()
        };
        let point: Vec<BigInt> = (0..n - 1).map(|_| draw()).collect();
        let prime = lucky_prime(spec, &cfg.epsilon, rng)?;
        used = Some(prime);
        solve_over_q_with(spec, cfg, &lambda, &point, prime, delta, rng, stats)
    })?;
    Ok(RationalSolution {
        fiber,
        prime: used.expect("a successful run drew a prime"),
        exponent,
        stats,
    })
}
