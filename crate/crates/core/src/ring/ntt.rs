//! Multiplication of long polynomials over `F_p` through three word-size
//! NTT primes and CRT.

use std::sync::OnceLock;

use super::primes::is_probable_prime;
use super::{Field, PrimeField, Ring};

/// Two-adic order supported by every NTT prime.
const TWO_ADICITY: u32 = 32;

struct NttPrime {
    field: PrimeField,
    /// An element of order `2^TWO_ADICITY`.
    root: u64,
}

fn ntt_primes() -> &'static [NttPrime; 3] {
    static PRIMES: OnceLock<[NttPrime; 3]> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut found = Vec::new();
        let mut c = (1u64 << (62 - TWO_ADICITY)) - 1;
        while found.len() < 3 {
            let q = (c << TWO_ADICITY) + 1;
            if is_probable_prime(q) {
                let field = PrimeField::new(q).expect("NTT prime");
                let root = (2..)
                    .map(|g| field.pow(&g, c))
                    .find(|w| field.pow(w, 1 << (TWO_ADICITY - 1)) != 1)
                    .expect("a generator exists");
                found.push(NttPrime { field, root });
            }
            c -= 1;
        }
        found.try_into().ok().expect("three primes")
    })
}

/// `a w mod q` for `w < q`, with `w_shoup = floor(w 2^64 / q)`.
#[inline]
fn mul_shoup(a: u64, w: u64, w_shoup: u64, q: u64) -> u64 {
    let hi = ((a as u128 * w_shoup as u128) >> 64) as u64;
    let r = a.wrapping_mul(w).wrapping_sub(hi.wrapping_mul(q));
    if r >= q {
        r - q
    } else {
        r
    }
}

/// In-place transform of length `n = a.len()` at an `n`-th root of unity.
fn transform(f: &PrimeField, a: &mut [u64], root: u64) {
    let n = a.len();
    let q = f.modulus();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    // Powers of the root, with their Shoup companions.
    let half = n / 2;
    let mut pw = Vec::with_capacity(half);
    let mut w = 1;
    for _ in 0..half {
        pw.push((w, (((w as u128) << 64) / q as u128) as u64));
        w = f.mul(&w, &root);
    }
    let mut len = 2;
    while len <= n {
        let stride = n / len;
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(len / 2);
            for (i, (x, y)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                let (w, ws) = pw[i * stride];
                let t = mul_shoup(*y, w, ws, q);
                let (s, d) = (*x + t, *x + q - t);
                *x = if s >= q { s - q } else { s };
                *y = if d >= q { d - q } else { d };
            }
        }
        len <<= 1;
    }
}

/// Cyclic convolution modulo one NTT prime, `n` a power of two.
fn convolve(prime: &NttPrime, a: &[u64], b: &[u64], n: usize) -> Vec<u64> {
    let f = &prime.field;
    let q = f.modulus();
    let root = f.pow(&prime.root, (1u64 << TWO_ADICITY) / n as u64);
    let load = |src: &[u64]| {
        let mut v: Vec<u64> = src.iter().map(|&x| x % q).collect();
        v.resize(n, 0);
        v
    };
    let (mut fa, mut fb) = (load(a), load(b));
    transform(f, &mut fa, root);
    transform(f, &mut fb, root);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = f.mul(x, y);
    }
    transform(f, &mut fa, f.inv(&root).expect("unit"));
    let n_inv = f.inv(&(n as u64 % q)).expect("unit");
    for x in &mut fa {
        *x = f.mul(x, &n_inv);
    }
    fa
}

/// Product of two nonempty coefficient slices over `k`, exact for any length
/// below `2^TWO_ADICITY`.
pub(crate) fn mul_ntt(k: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let len = a.len() + b.len() - 1;
    let n = len.next_power_of_two();
    assert!(n <= 1 << TWO_ADICITY, "product too long for the NTT");
    let [p1, p2, p3] = ntt_primes();
    let r1 = convolve(p1, a, b, n);
    let r2 = convolve(p2, a, b, n);
    let r3 = convolve(p3, a, b, n);
    let (f2, f3) = (&p2.field, &p3.field);
    let (q1, q2) = (p1.field.modulus(), f2.modulus());
    let inv_q1_mod_q2 = f2.inv(&(q1 % q2)).expect("distinct primes");
    let q1q2_mod_q3 = f3.mul(&(q1 % f3.modulus()), &(q2 % f3.modulus()));
    let inv_q1q2_mod_q3 = f3.inv(&q1q2_mod_q3).expect("distinct primes");
    let q1_mod_p = k.from_u64(q1);
    let q1q2_mod_p = k.mul(&q1_mod_p, &k.from_u64(q2));
    (0..len)
        .map(|i| {
            // Garner: x = v1 + v2 q1 + v3 q1 q2 with v_j in [0, q_j).
            let v1 = r1[i];
            let v2 = f2.mul(&f2.sub(&r2[i], &(v1 % q2)), &inv_q1_mod_q2);
            let partial = f3.add(
                &(v1 % f3.modulus()),
                &f3.mul(&(v2 % f3.modulus()), &(q1 % f3.modulus())),
            );
            let v3 = f3.mul(&f3.sub(&r3[i], &partial), &inv_q1q2_mod_q3);
            let x = k.add(&k.from_u64(v1), &k.mul(&k.from_u64(v2), &q1_mod_p));
            k.add(&x, &k.mul(&k.from_u64(v3), &q1q2_mod_p))
        })
        .collect()
}
