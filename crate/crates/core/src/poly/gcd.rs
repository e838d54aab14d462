use super::{Poly, PolyRing};
use crate::ring::{Field, Ring};

/// `a` is not invertible modulo `m`; `gcd` is the monic common factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotCoprime<E> {
    pub gcd: Poly<E>,
}

impl<F: Field> PolyRing<F> {
    /// Extended Euclid: `(d, u, v)` with `u f + v g = d`, `d` monic (or zero
    /// when both inputs vanish).
    pub fn xgcd(
        &self,
        f: &Poly<F::Elem>,
        g: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (f.clone(), g.clone());
        let (mut s0, mut s1) = (self.one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(c) => {
                let inv = self.base().inv(&c).expect("nonzero");
                (
                    self.scale(&r0, &inv),
                    self.scale(&s0, &inv),
                    self.scale(&t0, &inv),
                )
            }
        }
    }

    /// Monic gcd (zero iff both inputs are zero).
    pub fn gcd(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = std::mem::replace(&mut b, r);
        }
        self.monic(&a)
    }

    /// Inverse of `a` modulo `m` (`deg m >= 1`).
    pub fn modinv(
        &self,
        a: &Poly<F::Elem>,
        m: &Poly<F::Elem>,
    ) -> Result<Poly<F::Elem>, NotCoprime<F::Elem>> {
        let a = self.rem(a, m);
        let (d, u, _) = self.xgcd(&a, m);
        if d.degree() == Some(0) {
            Ok(self.rem(&u, m))
        } else {
            Err(NotCoprime {
                gcd: if d.is_zero() { self.monic(m) } else { d },
            })
        }
    }

    /// Resultant `Res_T(f, g)` by the Euclidean remainder sequence.
    ///
    /// Conventions: `Res(0, g) = Res(f, 0) = 0`; `Res(c, g) = c^deg g` for a
    /// nonzero constant `c`.
    pub fn resultant(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> F::Elem {
        let k = self.base();
        if f.is_zero() || g.is_zero() {
            return k.zero();
        }
        let (mut a, mut b) = (f.clone(), g.clone());
        let mut acc = k.one();
        loop {
            let da = a.len() - 1;
            let db = b.len() - 1;
            if da == 0 {
                return k.mul(&acc, &k.pow(&self.lc(&a), db as u64));
            }
            if db == 0 {
                return k.mul(&acc, &k.pow(&self.lc(&b), da as u64));
            }
            let r = self.rem(&a, &b);
            if r.is_zero() {
                return k.zero();
            }
            let dr = r.len() - 1;
            if (da * db) % 2 == 1 {
                acc = k.neg(&acc);
            }
            acc = k.mul(&acc, &k.pow(&self.lc(&b), (da - dr) as u64));
            a = b;
            b = r;
        }
    }

    /// `Res(f, f')`, without the leading-coefficient normalisation.
    pub fn discriminant(&self, f: &Poly<F::Elem>) -> F::Elem {
        self.resultant(f, &self.derivative(f))
    }
}
