//! Benchmark systems and sweep specifications.

use geores::slp::SystemSpec;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `2^61 - 1`: large enough that no ladder system needs an extension.
pub const LADDER_PRIME: u64 = 2_305_843_009_213_693_951;

/// Exponent vectors of total degree at most `d` in `n` variables.
fn monomials(n: usize, d: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for a in 0..=d {
        for mut rest in monomials(n - 1, d - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// A dense polynomial of degree `d` with small random coefficients, as text.
pub fn random_poly<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> String {
    let mut terms = Vec::new();
    for e in monomials(n, d) {
        let top = e.iter().sum::<usize>() == d;
        let mut c: i64 = rng.gen_range(-20..=20);
        if top && e[0] == d && c == 0 {
            c = 1;
        }
        if c == 0 {
            continue;
        }
        let mut t = c.to_string();
        for (i, &k) in e.iter().enumerate() {
            match k {
                0 => {}
                1 => t.push_str(&format!("*x{}", i + 1)),
                _ => t.push_str(&format!("*x{}^{k}", i + 1)),
            }
        }
        terms.push(t);
    }
    terms.join(" + ").replace("+ -", "- ")
}

/// `x1^d` plus random multiples of `x2^d .. xn^d` and `x1^(d-1) x2` on top
/// of a dense quadric: degree `d` with a program length that grows only like
/// `log d`.
pub fn sparse_poly<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> String {
    if d <= 2 {
        return random_poly(n, d, rng);
    }
    let mut nonzero = || loop {
        let c: i64 = rng.gen_range(-20..=20);
        if c != 0 {
            break c;
        }
    };
    let mut terms = vec![format!("x1^{d}")];
    for i in 2..=n {
        terms.push(format!("{}*x{i}^{d}", nonzero()));
    }
    if n >= 2 {
        terms.push(format!("{}*x1^{}*x2", nonzero(), d - 1));
    }
    terms.push(random_poly(n, 2, rng));
    terms.join(" + ").replace("+ -", "- ")
}

/// `n` random equations in `n` variables over [`LADDER_PRIME`]: a sparse one
/// of degree `d`, the others dense quadrics, so the Bezout number is
/// `d 2^(n-1)`.
pub fn ladder_system(n: usize, d: usize, seed: u64) -> SystemSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32) ^ d as u64);
    let polys: Vec<String> = (0..n)
        .map(|i| {
            if i == 0 {
                sparse_poly(n, d, &mut rng)
            } else {
                random_poly(n, 2, &mut rng)
            }
        })
        .collect();
    let refs: Vec<&str> = polys.iter().map(String::as_str).collect();
    SystemSpec::from_polys(
        n,
        format!("Fp:{LADDER_PRIME}")
            .parse()
            .expect("prime descriptor"),
        BigRational::new(1.into(), 100.into()),
        &refs,
        None,
    )
    .expect("generated systems parse")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad sweep {0:?}: expected clauses like `d=2,4,8` or `n=2..4`, separated by `;`")]
pub struct SweepError(pub String);

/// A ladder over `n` or `d` with the other parameter fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sweep {
    pub n: Vec<usize>,
    pub d: Vec<usize>,
}

impl Sweep {
    /// Parses `d=2,4,8`, `n=2..4;d=2` and the like. Unmentioned parameters
    /// default to 2.
    pub fn parse(text: &str) -> Result<Sweep, SweepError> {
        let err = || SweepError(text.to_string());
        let mut sweep = Sweep {
            n: vec![2],
            d: vec![2],
        };
        for clause in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let (key, values) = clause.split_once('=').ok_or_else(err)?;
            let mut list = Vec::new();
            for item in values.split(',').map(str::trim).filter(|v| !v.is_empty()) {
                if let Some((a, b)) = item.split_once("..") {
                    let a: usize = a.trim().parse().map_err(|_| err())?;
                    let b: usize = b.trim().parse().map_err(|_| err())?;
                    list.extend(a..=b);
                } else {
                    list.push(item.parse().map_err(|_| err())?);
                }
            }
            if list.iter().any(|&x| x == 0) {
                return Err(err());
            }
            match key.trim() {
                "n" => sweep.n = list,
                "d" => sweep.d = list,
                _ => return Err(err()),
            }
        }
        if sweep.n.len() > 1 && sweep.d.len() > 1 {
            return Err(err());
        }
        Ok(sweep)
    }

    /// The `(n, d)` pairs in ladder order.
    pub fn points(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.n
            .iter()
            .flat_map(move |&n| self.d.iter().map(move |&d| (n, d)))
    }
}
