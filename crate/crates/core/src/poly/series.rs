use num_bigint::BigInt;

use super::{Poly, PolyRing};
use crate::error::ArithError;
use crate::ring::{Field, Ring};

/// Truncated power series `R[[Z]] / (Z^precision)`.
///
/// Elements are coefficient vectors in `Z`, lowest order first, trimmed of
/// trailing zeros and never longer than `precision`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesRing<R: Ring> {
    poly: PolyRing<R>,
    precision: usize,
}

impl<R: Ring> SeriesRing<R> {
    pub fn new(base: R, precision: usize) -> Self {
        assert!(precision >= 1, "series precision must be positive");
        SeriesRing {
            poly: PolyRing::new(base),
            precision,
        }
    }

    pub fn base(&self) -> &R {
        self.poly.base()
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn poly_ring(&self) -> &PolyRing<R> {
        &self.poly
    }

    pub fn from_poly(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.poly.truncate(f, self.precision)
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.poly.constant(c)
    }

    /// `a + Z`.
    pub fn shifted_var(&self, a: R::Elem) -> Poly<R::Elem> {
        if self.precision == 1 {
            return self.poly.constant(a);
        }
        self.poly.from_coeffs(vec![a, self.base().one()])
    }

    pub fn constant_term(&self, f: &Poly<R::Elem>) -> R::Elem {
        self.poly.coeff(f, 0)
    }

    /// Re-reads `f` at another precision (truncating or zero padding).
    pub fn coerce_from(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.from_poly(f)
    }
}

impl<F: Field> SeriesRing<F> {
    /// Inverse by Newton iteration; fails iff the constant term vanishes.
    pub fn inv(&self, f: &Poly<F::Elem>) -> Result<Poly<F::Elem>, ArithError> {
        let k = self.base();
        let c0 = k.inv(&self.constant_term(f))?;
        let mut g = self.poly.constant(c0);
        let mut prec = 1;
        while prec < self.precision {
            prec = (2 * prec).min(self.precision);
            // g <- g (2 - f g)
            let fg = self.poly.mul_trunc(f, &g, prec);
            let two_minus = self.poly.sub(&self.poly.from_i64s(&[2]), &fg);
            g = self.poly.mul_trunc(&g, &two_minus, prec);
        }
        Ok(g)
    }

    /// Converts a series in `Z = X - a` to the polynomial in `X` it represents.
    pub fn to_poly_at(&self, f: &Poly<F::Elem>, a: &F::Elem) -> Poly<F::Elem> {
        self.poly.taylor_shift(f, &self.base().neg(a))
    }

    /// Converts a polynomial in `X` to a series in `Z = X - a`.
    pub fn from_poly_at(&self, f: &Poly<F::Elem>, a: &F::Elem) -> Poly<F::Elem> {
        self.from_poly(&self.poly.taylor_shift(f, a))
    }
}

impl<R: Ring> Ring for SeriesRing<R> {
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
        self.poly.mul_trunc(a, b, self.precision)
    }
    fn mul_coeffs(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        let v = self.poly.packed_mul(a, b)?;
        Some(
            v.into_iter()
                .map(|mut c| {
                    c.truncate(self.precision);
                    self.poly.from_coeffs(c)
                })
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
    fn geometric_series() {
        let s = SeriesRing::new(PrimeField::new(7).unwrap(), 5);
        let one_minus_z = s.poly_ring().from_i64s(&[1, -1]);
        let inv = s.inv(&one_minus_z).unwrap();
        assert_eq!(inv, s.poly_ring().from_i64s(&[1, 1, 1, 1, 1]));
        assert!(s.inv(&s.poly_ring().from_i64s(&[0, 1])).is_err());
    }

    #[test]
    fn recentering_round_trip() {
        let k = PrimeField::new(7).unwrap();
        let s = SeriesRing::new(k.clone(), 4);
        let r = s.poly_ring();
        // X^2 at X = 3 + Z is 9 + 6Z + Z^2.
        let x2 = r.from_i64s(&[0, 0, 1]);
        let z = s.from_poly_at(&x2, &3);
        assert_eq!(z, r.from_i64s(&[9, 6, 1]));
        assert_eq!(s.to_poly_at(&z, &3), x2);
    }

    proptest! {
        #[test]
        fn inverse_is_inverse(c in proptest::collection::vec(0u64..10_007, 1..12), prec in 1usize..20) {
            let s = SeriesRing::new(PrimeField::new(10_007).unwrap(), prec);
            let f = s.from_poly(&s.poly_ring().from_coeffs(c));
            prop_assume!(s.constant_term(&f) != 0);
            let g = s.inv(&f).unwrap();
            prop_assert_eq!(s.mul(&f, &g), s.one());
        }
    }
}
