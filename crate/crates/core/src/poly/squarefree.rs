use num_traits::ToPrimitive;

use super::{Poly, PolyRing};
use crate::ring::{Field, Ring};

impl<F: Field> PolyRing<F> {
    /// Monic product of the distinct irreducible factors of `f`.
    ///
    /// Handles inseparable factors in positive characteristic by taking
    /// `p`-th roots. The zero polynomial has no radical; it is returned as is.
    pub fn squarefree_part(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        if f.is_zero() {
            return Poly::zero();
        }
        let f = self.monic(f);
        if f.len() <= 1 {
            return self.one();
        }
        let df = self.derivative(&f);
        if df.is_zero() {
            return self.squarefree_part(&self.pth_root_poly(&f));
        }
        let g = self.gcd(&f, &df);
        // Factors whose multiplicity is prime to p, each once.
        let c = self.quo(&f, &g);
        // Strip those factors from g; what is left has every multiplicity
        // divisible by p.
        let mut h = g;
        loop {
            let common = self.gcd(&h, &c);
            if common.len() <= 1 {
                break;
            }
            h = self.quo(&h, &common);
        }
        if h.len() <= 1 {
            return c;
        }
        let rest = self.squarefree_part(&self.pth_root_poly(&h));
        self.monic(&self.mul(&c, &rest))
    }

    /// Whether `f` is square-free, i.e. `gcd(f, f') = 1`.
    pub fn is_squarefree(&self, f: &Poly<F::Elem>) -> bool {
        if f.is_zero() {
            return false;
        }
        self.gcd(f, &self.derivative(f)).len() <= 1
    }

    /// For `f = g(T^p)` returns the `h` with `h^p = f`.
    ///
    /// Panics when `f` is not a polynomial in `T^p`.
    pub fn pth_root_poly(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        let k = self.base();
        let p = k
            .characteristic()
            .to_usize()
            .filter(|&p| p > 0)
            .expect("p-th roots need positive characteristic");
        let mut out = Vec::with_capacity(f.len() / p + 1);
        for (i, c) in f.coeffs().iter().enumerate() {
            if i % p == 0 {
                out.push(k.pth_root(c));
            } else {
                assert!(k.is_zero(c), "not a polynomial in T^p");
            }
        }
        self.from_coeffs(out)
    }
}
