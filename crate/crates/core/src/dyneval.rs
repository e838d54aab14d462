//! Computing modulo a square-free but possibly reducible polynomial `m`.
//!
//! `k[X]/(m)` is a product of fields. A computation that needs a zero test or
//! an inverse either gets a definite answer or learns a factorisation
//! `m = m1 * m2`; it is then restarted on each factor and the per-factor
//! results are glued back by the Chinese remainder theorem.

use crate::poly::{Poly, PolyRing, QuotientRing};
use crate::ring::{Field, Ring};

/// Outcome of [`inv_or_split`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inversion<E> {
    Inverse(Poly<E>),
    /// `a` vanishes modulo the whole of `m`.
    Zero,
    /// `a` vanishes modulo `zero_part` and is invertible modulo `unit_part`.
    Split {
        zero_part: Poly<E>,
        unit_part: Poly<E>,
    },
}

/// Inverts `a` modulo a monic square-free `m`, or splits `m`.
pub fn inv_or_split<F: Field>(
    kx: &PolyRing<F>,
    a: &Poly<F::Elem>,
    m: &Poly<F::Elem>,
) -> Inversion<F::Elem> {
    let a = kx.rem(a, m);
    if a.is_zero() {
        return Inversion::Zero;
    }
    let (g, u, _) = kx.xgcd(&a, m);
    if g.len() == 1 {
        return Inversion::Inverse(kx.rem(&u, m));
    }
    Inversion::Split {
        unit_part: kx.quo(m, &g),
        zero_part: g,
    }
}

/// Why a branch computation stopped early.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Interrupt<E> {
    /// Restart on both factors.
    Split(Poly<E>, Poly<E>),
    /// Inversion of an element that is zero on the whole branch.
    DivisionByZero,
    /// The computation itself rejected the branch.
    Failed(String),
}

/// Arithmetic in `k[X]/(m)` for one branch modulus `m`.
#[derive(Clone, Debug)]
pub struct Branch<F: Field> {
    ring: QuotientRing<F>,
}

impl<F: Field> Branch<F> {
    pub fn new(k: &F, modulus: Poly<F::Elem>) -> Self {
        Branch {
            ring: QuotientRing::new(k.clone(), modulus),
        }
    }

    pub fn ring(&self) -> &QuotientRing<F> {
        &self.ring
    }

    pub fn modulus(&self) -> &Poly<F::Elem> {
        self.ring.modulus()
    }

    pub fn reduce(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.ring.reduce(a)
    }

    pub fn is_zero(&self, a: &Poly<F::Elem>) -> Result<bool, Interrupt<F::Elem>> {
        match inv_or_split(self.ring.poly_ring(), a, self.modulus()) {
            Inversion::Zero => Ok(true),
            Inversion::Inverse(_) => Ok(false),
            Inversion::Split {
                zero_part,
                unit_part,
            } => Err(Interrupt::Split(zero_part, unit_part)),
        }
    }

    pub fn inv(&self, a: &Poly<F::Elem>) -> Result<Poly<F::Elem>, Interrupt<F::Elem>> {
        match inv_or_split(self.ring.poly_ring(), a, self.modulus()) {
            Inversion::Zero => Err(Interrupt::DivisionByZero),
            Inversion::Inverse(b) => Ok(b),
            Inversion::Split {
                zero_part,
                unit_part,
            } => Err(Interrupt::Split(zero_part, unit_part)),
        }
    }

    /// Drops leading coefficients that vanish on this branch.
    pub fn normalize(&self, f: &[Poly<F::Elem>]) -> Result<Vec<Poly<F::Elem>>, Interrupt<F::Elem>> {
        Ok(self.normalize_inv(f)?.0)
    }

    /// [`normalize`](Self::normalize), also returning the inverse of the
    /// new leading coefficient.
    fn normalize_inv(&self, f: &[Poly<F::Elem>]) -> Result<Unit<F::Elem>, Interrupt<F::Elem>> {
        let mut v: Vec<Poly<F::Elem>> = f.iter().map(|c| self.reduce(c)).collect();
        while let Some(lc) = v.last() {
            match inv_or_split(self.ring.poly_ring(), lc, self.modulus()) {
                Inversion::Zero => {
                    v.pop();
                }
                Inversion::Inverse(inv) => return Ok((v, Some(inv))),
                Inversion::Split {
                    zero_part,
                    unit_part,
                } => return Err(Interrupt::Split(zero_part, unit_part)),
            }
        }
        Ok((v, None))
    }

    /// Remainder of `a` by `b` in `(k[X]/(m))[Y]`, given the inverse of the
    /// leading coefficient of `b`. Leading coefficients of the result are
    /// not tested for zero.
    fn rem(
        &self,
        a: &[Poly<F::Elem>],
        b: &[Poly<F::Elem>],
        lc_inv: &Poly<F::Elem>,
    ) -> Vec<Poly<F::Elem>> {
        let q = &self.ring;
        let db = b.len() - 1;
        let mut r = a.to_vec();
        while r.len() > db {
            let top = r.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let c = q.mul(&top, lc_inv);
            let shift = r.len() - db;
            for i in 0..db {
                let t = q.mul(&c, &b[i]);
                r[shift + i] = q.sub(&r[shift + i], &t);
            }
        }
        r
    }

    /// Monic gcd in `(k[X]/(m))[Y]`; valid as long as no split occurs.
    pub fn gcd(
        &self,
        f: &[Poly<F::Elem>],
        g: &[Poly<F::Elem>],
    ) -> Result<Vec<Poly<F::Elem>>, Interrupt<F::Elem>> {
        let (mut a, mut a_inv) = self.normalize_inv(f)?;
        let (mut b, mut b_inv) = self.normalize_inv(g)?;
        while let Some(inv) = b_inv {
            let (r, r_inv) = self.normalize_inv(&self.rem(&a, &b, &inv))?;
            (a, a_inv) = (std::mem::replace(&mut b, r), Some(inv));
            b_inv = r_inv;
        }
        if let Some(inv) = a_inv {
            for c in a.iter_mut() {
                *c = self.ring.mul(c, &inv);
            }
        }
        Ok(a)
    }

    /// `Res_Y(f, g)` in `k[X]/(m)` for `f` monic in `Y`.
    pub fn resultant_monic(
        &self,
        f: &[Poly<F::Elem>],
        g: &[Poly<F::Elem>],
    ) -> Result<Poly<F::Elem>, Interrupt<F::Elem>> {
        let q = &self.ring;
        let (mut a, _) = self.normalize_inv(f)?;
        let (mut b, mut b_inv) = self.normalize_inv(g)?;
        if a.is_empty() || b.is_empty() {
            return Ok(q.zero());
        }
        let mut acc = q.one();
        loop {
            let da = a.len() - 1;
            let db = b.len() - 1;
            if da == 0 {
                return Ok(q.mul(&acc, &q.pow(&a[0], db as u64)));
            }
            if db == 0 {
                return Ok(q.mul(&acc, &q.pow(&b[0], da as u64)));
            }
            let inv = b_inv.expect("normalized with a unit leading coefficient");
            let (r, r_inv) = self.normalize_inv(&self.rem(&a, &b, &inv))?;
            if r.is_empty() {
                return Ok(q.zero());
            }
            let dr = r.len() - 1;
            if (da * db) % 2 == 1 {
                acc = q.neg(&acc);
            }
            acc = q.mul(&acc, &q.pow(b.last().unwrap(), (da - dr) as u64));
            a = b;
            b = r;
            b_inv = r_inv;
        }
    }
}

/// A normalized polynomial with the inverse of its leading coefficient.
type Unit<E> = (Vec<Poly<E>>, Option<Poly<E>>);

/// Runs `task` on `m`, restarting on the factors whenever it splits.
/// Returns the final branch moduli (whose product is `m`) with their results.
pub fn run_split<F, T, G>(
    k: &F,
    m: &Poly<F::Elem>,
    mut task: G,
) -> Result<Vec<(Poly<F::Elem>, T)>, Interrupt<F::Elem>>
where
    F: Field,
    G: FnMut(&Branch<F>) -> Result<T, Interrupt<F::Elem>>,
{
    let mut todo = vec![m.clone()];
    let mut done = Vec::new();
    while let Some(modulus) = todo.pop() {
        if modulus.len() < 2 {
            continue;
        }
        let br = Branch::new(k, modulus.clone());
        match task(&br) {
            Ok(t) => done.push((modulus, t)),
            Err(Interrupt::Split(a, b)) => {
                todo.push(a);
                todo.push(b);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(done)
}

/// Glues residues `v_i mod m_i` (pairwise coprime moduli) into one residue
/// modulo the product.
pub fn crt_combine<F: Field>(
    kx: &PolyRing<F>,
    parts: &[(Poly<F::Elem>, Poly<F::Elem>)],
) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let mut modulus = kx.one();
    let mut value: Poly<F::Elem> = Poly::zero();
    for (mi, vi) in parts {
        // value + modulus * ((vi - value) * modulus^{-1} mod mi)
        let inv = kx
            .modinv(&modulus, mi)
            .expect("CRT moduli must be pairwise coprime");
        let diff = kx.rem(&kx.sub(vi, &value), mi);
        let t = kx.rem(&kx.mul(&diff, &inv), mi);
        value = kx.add(&value, &kx.mul(&modulus, &t));
        modulus = kx.mul(&modulus, mi);
    }
    (modulus, value)
}

/// A branch gcd of Y-degree other than one.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("shape lemma violated: gcd of degree {degree} on a branch of degree {branch_degree}")]
pub struct ShapeViolation {
    pub degree: usize,
    pub branch_degree: usize,
}

/// Per-branch monic gcds of two polynomials in `(k[X]/(m))[Y]`, given as
/// coefficient lists in `Y` with coefficients in `k[X]`.
pub fn biv_gcd<F: Field>(
    k: &F,
    m: &Poly<F::Elem>,
    f1: &[Poly<F::Elem>],
    f2: &[Poly<F::Elem>],
) -> Result<Vec<(Poly<F::Elem>, Vec<Poly<F::Elem>>)>, Interrupt<F::Elem>> {
    run_split(k, m, |br| br.gcd(f1, f2))
}

/// Solves the shape lemma: when every branch gcd is `Y - v_i(X)`, returns the
/// glued `v` with `v mod m_i = v_i`.
pub fn shape_lemma<F: Field>(
    k: &F,
    m: &Poly<F::Elem>,
    f1: &[Poly<F::Elem>],
    f2: &[Poly<F::Elem>],
) -> Result<Poly<F::Elem>, ShapeViolation> {
    let branches = biv_gcd(k, m, f1, f2).map_err(|_| ShapeViolation {
        degree: 0,
        branch_degree: m.len() - 1,
    })?;
    let kx = PolyRing::new(k.clone());
    let mut parts = Vec::with_capacity(branches.len());
    for (mi, g) in branches {
        if g.len() != 2 {
            return Err(ShapeViolation {
                degree: g.len().saturating_sub(1),
                branch_degree: mi.len() - 1,
            });
        }
        // Monic Y + c means v = -c.
        parts.push((mi, kx.neg(&g[0])));
    }
    Ok(crt_combine(&kx, &parts).1)
}

/// `Res_T(f, g) mod m` for `f` monic in `T`, computed branch by branch.
pub fn resultant_mod<F: Field>(
    k: &F,
    m: &Poly<F::Elem>,
    f: &[Poly<F::Elem>],
    g: &[Poly<F::Elem>],
) -> Result<Poly<F::Elem>, Interrupt<F::Elem>> {
    let branches = run_split(k, m, |br| br.resultant_monic(f, g))?;
    let kx = PolyRing::new(k.clone());
    Ok(crt_combine(&kx, &branches).1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PrimeField;

    fn setup() -> (PrimeField, PolyRing<PrimeField>) {
        let k = PrimeField::new(7).unwrap();
        (k.clone(), PolyRing::new(k))
    }

    #[test]
    fn inverse_without_split() {
        let (_, kx) = setup();
        let a = kx.from_i64s(&[1, 1]);
        let m = kx.from_i64s(&[0, -1, 1]);
        assert_eq!(
            inv_or_split(&kx, &a, &m),
            Inversion::Inverse(kx.from_i64s(&[1, 3]))
        );
    }

    #[test]
    fn zero_divisor_splits() {
        let (_, kx) = setup();
        let a = kx.from_i64s(&[0, 1]);
        let m = kx.from_i64s(&[0, -1, 1]);
        match inv_or_split(&kx, &a, &m) {
            Inversion::Split {
                zero_part,
                unit_part,
            } => {
                assert_eq!(zero_part, kx.from_i64s(&[0, 1]));
                assert_eq!(unit_part, kx.from_i64s(&[-1, 1]));
            }
            other => panic!("expected a split, got {other:?}"),
        }
    }

    #[test]
    fn shape_lemma_example() {
        // m = X^2 + X + 1; m1 = T^2 + 3, m2 = T^2 - T with lambda = 1, 2.
        let (k, kx) = setup();
        let m = kx.from_i64s(&[1, 1, 1]);
        let expand = |mi: &[i64], lambda: i64| -> Vec<Poly<u64>> {
            // mi(X + lambda Y) for quadratic mi = c0 + c1 U + U^2
            let (c0, c1) = (mi[0], mi[1]);
            vec![
                kx.from_i64s(&[c0, c1, 1]),
                kx.from_i64s(&[c1 * lambda, 2 * lambda]),
                kx.from_i64s(&[lambda * lambda]),
            ]
        };
        let f1 = expand(&[3, 0], 1);
        let f2 = expand(&[0, -1], 2);
        let v = shape_lemma(&k, &m, &f1, &f2).unwrap();
        assert_eq!(v, kx.from_i64s(&[1, 1]));
    }

    #[test]
    fn crt_round_trip() {
        let (_, kx) = setup();
        let m1 = kx.from_i64s(&[-1, 1]);
        let m2 = kx.from_i64s(&[-2, 1]);
        let (m, v) = crt_combine(
            &kx,
            &[
                (m1.clone(), kx.from_i64s(&[3])),
                (m2.clone(), kx.from_i64s(&[5])),
            ],
        );
        assert_eq!(m, kx.mul(&m1, &m2));
        assert_eq!(kx.eval(&v, &1), 3);
        assert_eq!(kx.eval(&v, &2), 5);
    }

    #[test]
    fn branch_resultant_matches_specialisation() {
        // M(X, T) = T^2 - X, over m = (X - 1)(X - 4): Res(M, 2T) = -4X.
        let (k, kx) = setup();
        let m = kx.from_roots(&[1, 4]);
        let f = vec![kx.from_i64s(&[0, -1]), kx.zero(), kx.one()];
        let g = vec![kx.zero(), kx.from_i64s(&[2])];
        let r = resultant_mod(&k, &m, &f, &g).unwrap();
        assert_eq!(r, kx.from_i64s(&[0, -4]));
    }
}
