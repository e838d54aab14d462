use num_bigint::BigInt;

use super::{NotCoprime, Poly, PolyRing};
use crate::ring::{Field, Ring};

/// Modulus degree from which reduction goes through a precomputed inverse.
const NEWTON_CUTOFF: usize = 40;

/// `R[T] / (m)` for a monic `m` of positive degree.
///
/// Elements are reduced representatives of degree `< deg m`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientRing<R: Ring> {
    poly: PolyRing<R>,
    modulus: Poly<R::Elem>,
    /// `1 / rev(m) mod T^deg m`, for large moduli.
    inv_rev: Option<Poly<R::Elem>>,
}

impl<R: Ring> QuotientRing<R> {
    /// Panics unless `modulus` is monic of positive degree.
    pub fn new(base: R, modulus: Poly<R::Elem>) -> Self {
        let poly = PolyRing::new(base);
        assert!(
            poly.is_monic(&modulus) && modulus.len() >= 2,
            "quotient modulus must be monic of positive degree"
        );
        let d = modulus.len() - 1;
        let inv_rev = (d >= NEWTON_CUTOFF).then(|| {
            let rev: Vec<R::Elem> = modulus.coeffs().iter().rev().cloned().collect();
            poly.inv_series_monic(&poly.from_coeffs(rev), d)
        });
        QuotientRing {
            poly,
            modulus,
            inv_rev,
        }
    }

    pub fn base(&self) -> &R {
        self.poly.base()
    }

    pub fn poly_ring(&self) -> &PolyRing<R> {
        &self.poly
    }

    pub fn modulus(&self) -> &Poly<R::Elem> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn reduce(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        let d = self.degree();
        if f.len() <= d {
            return f.clone();
        }
        let k = f.len() - d;
        match &self.inv_rev {
            Some(inv) if k <= d => {
                // rev(q) = rev(f) / rev(m) mod T^k
                let top = self
                    .poly
                    .from_coeffs(f.coeffs().iter().rev().take(k).cloned().collect());
                let q_rev = self.poly.mul_trunc(&top, inv, k);
                let mut q = q_rev.coeffs().to_vec();
                q.resize(k, self.base().zero());
                q.reverse();
                let qm = self
                    .poly
                    .mul_trunc(&self.poly.from_coeffs(q), &self.modulus, d);
                let low = self.poly.from_slice(&f.coeffs()[..d]);
                self.poly.sub(&low, &qm)
            }
            _ => self.poly.rem_monic(f, &self.modulus),
        }
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.poly.constant(c)
    }

    /// The class of `T`.
    pub fn gen(&self) -> Poly<R::Elem> {
        self.reduce(&self.poly.var())
    }

    /// Formal `d/dT` of the reduced representative.
    pub fn derivative(&self, a: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.poly.derivative(a)
    }
}

impl<F: Field> QuotientRing<F> {
    pub fn inv(&self, a: &Poly<F::Elem>) -> Result<Poly<F::Elem>, NotCoprime<F::Elem>> {
        self.poly.modinv(a, &self.modulus)
    }
}

impl<R: Ring> Ring for QuotientRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }
    fn one(&self) -> Self::Elem {
        self.poly.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.poly.add(a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.poly.sub(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.poly.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(&self.poly.mul(a, b))
    }
    fn mul_coeffs(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        let v = self.poly.packed_mul(a, b)?;
        Some(
            v.into_iter()
                .map(|c| self.reduce(&self.poly.from_coeffs(c)))
                .collect(),
        )
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.poly.from_int(n)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PrimeField;
    use proptest::prelude::*;

    #[test]
    fn arithmetic_mod_cyclotomic() {
        let q = QuotientRing::new(
            PrimeField::new(7).unwrap(),
            PolyRing::new(PrimeField::new(7).unwrap()).from_i64s(&[1, 1, 1]),
        );
        let t = q.gen();
        // T^3 = 1 modulo T^2 + T + 1.
        assert_eq!(q.pow(&t, 3), q.one());
        let a = q.poly_ring().from_i64s(&[2, 2]);
        assert_eq!(q.inv(&a).unwrap(), q.poly_ring().from_i64s(&[0, 3]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn fast_reduction_matches_division(
            m in proptest::collection::vec(0u64..10007, 40..90),
            f in proptest::collection::vec(0u64..10007, 0..200),
        ) {
            let k = PrimeField::new(10007).unwrap();
            let kx = PolyRing::new(k.clone());
            let mut m = m;
            m.push(1);
            let m = kx.from_coeffs(m);
            let q = QuotientRing::new(k, m.clone());
            let f = kx.from_coeffs(f);
            prop_assert_eq!(q.reduce(&f), kx.rem_monic(&f, &m));
        }
    }
}
