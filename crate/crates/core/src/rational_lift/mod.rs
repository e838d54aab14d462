//! Solving over the rationals: a modular solve at a random prime, `p`-adic
//! lifting of the resulting fiber and rational reconstruction of its
//! coefficients, accepted after exact verification.

mod padic;
mod reconstruct;
mod solve;

pub use padic::PadicState;
pub use reconstruct::{height_budget, rational_reconstruct, HeightBudget};
pub use solve::{
    lucky_prime, prime_interval, sample_size, solve_over_q, solve_over_q_with, unlucky_bound,
    RationalSolution, PRIME_CAP,
};
