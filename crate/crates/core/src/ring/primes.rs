//! Primality testing and prime generation for word-size integers.

use rand::Rng;

/// Number of Miller-Rabin rounds.
pub const MR_ROUNDS: usize = 40;

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

fn witness(n: u64, d: u64, s: u32, a: u64) -> bool {
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return false;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return false;
        }
    }
    true
}

/// Miller-Rabin with [`MR_ROUNDS`] bases: the first twelve primes (which
/// already make the test exact below 3.3e24) followed by bases from a fixed
/// splitmix sequence.
pub fn is_probable_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &SMALL_PRIMES {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    if SMALL_PRIMES.iter().any(|&a| witness(n, d, s, a)) {
        return false;
    }
    let mut state = 0x9e37_79b9_7f4a_7c15u64 ^ n;
    for _ in SMALL_PRIMES.len()..MR_ROUNDS {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        let a = 2 + z % (n - 3);
        if witness(n, d, s, a) {
            return false;
        }
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(mut n: u64) -> u64 {
    if n <= 2 {
        return 2;
    }
    if n % 2 == 0 {
        n += 1;
    }
    while !is_probable_prime(n) {
        n += 2;
    }
    n
}

/// Uniformly random prime in the half-open interval `(lo, hi]`.
pub fn random_prime_in<R: Rng + ?Sized>(lo: u64, hi: u64, rng: &mut R) -> Option<u64> {
    if hi <= lo || hi < 2 {
        return None;
    }
    // Sparse intervals fall back to a scan from a random offset.
    for _ in 0..(64 * 64) {
        let c = rng.gen_range(lo + 1..=hi);
        if is_probable_prime(c) {
            return Some(c);
        }
    }
    let start = rng.gen_range(lo + 1..=hi);
    (start..=hi)
        .chain(lo + 1..start)
        .find(|&c| is_probable_prime(c))
}

/// Distinct prime factors of `n` by trial division (small `n` only).
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
