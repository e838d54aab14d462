use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::ArithError;
use crate::kronecker::{Fiber, Problem, SolveError};
use crate::linalg::{det_adjugate, mat_mul, Matrix};
use crate::poly::{Poly, PolyRing, QuotientRing};
use crate::ring::{PrimeField, RationalField, ResidueRing, Ring};
use crate::slp::Slp;

/// A fiber over `Z/p^k` with `k = 2^order`, lifted from a fiber over `F_p`
/// by the global Newton iteration.
#[derive(Clone, Debug)]
pub struct PadicState {
    prime: u64,
    order: u32,
    n: usize,
    r: usize,
    /// Values and Jacobian of `F_1 .. F_r` over the rationals.
    jacobian: Slp<BigRational>,
    fixed: Vec<BigRational>,
    m: Poly<BigInt>,
    /// `v[0] = T`, then the remaining coordinates.
    v: Vec<Poly<BigInt>>,
    /// Inverse of the Jacobian modulo `M`, correct to half the precision.
    inverse: Matrix<Poly<BigInt>>,
}

/// A prime dividing a denominator of the system is unlucky.
fn bad_prime(_: ArithError) -> SolveError {
    SolveError::UnluckyEvaluationPoint
}

impl PadicState {
    /// Starts from a fiber of the reduction of `pb` modulo `prime`, whose
    /// change of variables and point are the reductions of those of `pb`.
    pub fn new(
        pb: &Problem<RationalField>,
        k: &PrimeField,
        fiber: &Fiber<PrimeField>,
    ) -> Result<Self, SolveError> {
        let prime = k.modulus();
        let (n, r) = (pb.n, pb.r);
        assert_eq!(fiber.level, r, "p-adic lifting starts from the last fiber");
        let to_int = |f: &Poly<u64>| {
            PolyRing::new(ResidueRing::new(prime, 1))
                .from_coeffs(f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
        };
        let mut state = PadicState {
            prime,
            order: 0,
            n,
            r,
            jacobian: pb.jacobian.clone(),
            fixed: pb.point[..n - r].to_vec(),
            m: to_int(&fiber.m),
            v: Vec::new(),
            inverse: Vec::new(),
        };
        let ring = ResidueRing::new(prime, 1);
        for c in pb.jacobian.params().iter().chain(&state.fixed) {
            ring.from_rational(c).map_err(bad_prime)?;
        }
        let q = QuotientRing::new(ring, state.m.clone());
        state.v.push(q.gen());
        state.v.extend(fiber.v.iter().map(to_int));
        let vals = state.evaluate(&q);
        let jac = state.jacobian_of(&vals);
        let (det, adj) = det_adjugate(&q, &jac);
        // Invert the determinant over F_p[T]/(m).
        let kt = PolyRing::new(k.clone());
        let det_p = kt.from_coeffs(det.coeffs().iter().map(|c| k.from_int(c)).collect());
        let inv = kt
            .modinv(&det_p, &fiber.m)
            .map_err(|_| SolveError::JacobianNonInvertible { level: r })?;
        let inv = to_int(&inv);
        state.inverse = adj
            .iter()
            .map(|row| row.iter().map(|a| q.mul(&inv, a)).collect())
            .collect();
        Ok(state)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// The precision exponent `k`: the state is exact modulo `p^k`.
    pub fn exponent(&self) -> u32 {
        1 << self.order
    }

    pub fn modulus(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.prime), self.exponent() as usize)
    }

    pub fn m(&self) -> &Poly<BigInt> {
        &self.m
    }

    /// The coordinates after the primitive one.
    pub fn v(&self) -> &[Poly<BigInt>] {
        &self.v[1..]
    }

    /// `F` and its Jacobian at the current parametrization. Denominators
    /// were checked to be prime to `p` on construction.
    fn evaluate(&self, q: &QuotientRing<ResidueRing>) -> Vec<Poly<BigInt>> {
        let ring = q.base();
        let reduce = |c: &BigRational| ring.from_rational(c).expect("denominator prime to p");
        let mut inputs: Vec<_> = self.fixed.iter().map(|c| q.constant(reduce(c))).collect();
        inputs.push(q.gen());
        inputs.extend(self.v[1..].iter().map(|f| q.reduce(f)));
        self.jacobian
            .evaluate(q, &inputs, |c| q.constant(reduce(c)))
    }

    fn jacobian_of(&self, vals: &[Poly<BigInt>]) -> Matrix<Poly<BigInt>> {
        let (n, r) = (self.n, self.r);
        (0..r)
            .map(|j| {
                (0..r)
                    .map(|l| vals[r + j * n + (n - r) + l].clone())
                    .collect()
            })
            .collect()
    }

    /// Doubles the precision.
    pub fn step(&mut self) -> Result<(), SolveError> {
        let r = self.r;
        let ring = ResidueRing::new(self.prime, 2 * self.exponent());
        let q = QuotientRing::new(ring.clone(), self.m.clone());
        let vals = self.evaluate(&q);
        let mut c: Matrix<Poly<BigInt>> = self
            .inverse
            .iter()
            .map(|row| row.iter().map(|x| q.reduce(x)).collect())
            .collect();
        if self.order > 0 {
            // C <- 2C - C J C
            let jac = self.jacobian_of(&vals);
            let jc = mat_mul(&q, &jac, &c);
            let cjc = mat_mul(&q, &c, &jc);
            c = c
                .iter()
                .zip(&cjc)
                .map(|(a, b)| {
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| q.sub(&q.add(x, x), y))
                        .collect()
                })
                .collect();
        }
        let mut moved = Vec::with_capacity(r);
        for l in 0..r {
            let cur = if l == 0 {
                q.gen()
            } else {
                q.reduce(&self.v[l])
            };
            let mut acc = q.zero();
            for j in 0..r {
                acc = q.add(&acc, &q.mul(&c[l][j], &vals[j]));
            }
            moved.push(q.sub(&cur, &acc));
        }
        let kt = q.poly_ring();
        let shift = q.sub(&moved[0], &q.gen());
        let mut next = vec![Poly::zero()];
        for v in &moved[1..] {
            next.push(q.sub(v, &q.mul(&shift, &kt.derivative(v))));
        }
        self.m = kt.sub(&self.m, &q.mul(&shift, &kt.derivative(&self.m)));
        let q = QuotientRing::new(ring, self.m.clone());
        next[0] = q.gen();
        self.v = next;
        self.inverse = c;
        self.order += 1;
        Ok(())
    }

    /// Lifts until the precision exponent reaches at least `k`.
    pub fn lift_to(&mut self, k: u32) -> Result<(), SolveError> {
        while self.exponent() < k {
            self.step()?;
        }
        Ok(())
    }

    /// `W_i = M' v_i mod M` for the coordinates after the primitive one.
    pub fn numerators(&self) -> Vec<Poly<BigInt>> {
        let ring = ResidueRing::new(self.prime, self.exponent());
        let q = QuotientRing::new(ring, self.m.clone());
        let dm = q.poly_ring().derivative(&self.m);
        self.v[1..]
            .iter()
            .map(|v| q.mul(&q.reduce(&dm), v))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::identity;
    use crate::slp::SystemSpec;
    use proptest::prelude::*;

    fn setup(
        p: u64,
        n: usize,
        f: &[&str],
        m: &[i64],
    ) -> (Problem<RationalField>, PrimeField, Fiber<PrimeField>) {
        let eps = BigRational::new(1.into(), 100.into());
        let spec = SystemSpec::from_polys(n, "Q".parse().unwrap(), eps.clone(), f, None).unwrap();
        let pb = Problem::new(
            &RationalField,
            &spec,
            identity(&RationalField, n),
            vec![BigRational::from_integer(0.into()); n - 1],
            spec.delta(),
            &eps,
        )
        .unwrap();
        let k = PrimeField::new(p).unwrap();
        let fiber = Fiber {
            level: n,
            n,
            lambda: identity(&k, n),
            point: vec![0; n - 1],
            m: PolyRing::new(k.clone()).from_i64s(m),
            v: vec![],
            w: vec![],
        };
        (pb, k, fiber)
    }

    fn ints(p: u64, e: u32, cs: &[i64]) -> Poly<BigInt> {
        PolyRing::new(ResidueRing::new(p, e)).from_i64s(cs)
    }

    #[test]
    fn linear_equation_lifts() {
        let (pb, k, fiber) = setup(5, 1, &["3*x1 - 1"], &[-2, 1]);
        let mut st = PadicState::new(&pb, &k, &fiber).unwrap();
        assert_eq!(st.exponent(), 1);
        st.step().unwrap();
        assert_eq!((st.exponent(), st.m().clone()), (2, ints(5, 2, &[-17, 1])));
        st.lift_to(4).unwrap();
        assert_eq!(
            (st.modulus(), st.m().clone()),
            (BigInt::from(625), ints(5, 4, &[-417, 1]))
        );
    }

    #[test]
    fn integer_fiber_is_stationary() {
        let (pb, k, fiber) = setup(5, 1, &["x1^2 - 2"], &[-2, 0, 1]);
        let mut st = PadicState::new(&pb, &k, &fiber).unwrap();
        st.step().unwrap();
        assert_eq!(st.m(), &ints(5, 2, &[-2, 0, 1]));
        st.lift_to(8).unwrap();
        assert_eq!(st.m(), &ints(5, 8, &[-2, 0, 1]));
    }

    #[test]
    fn second_coordinate_is_lifted() {
        // x1 = 2 x2, x2^2 = 3 at p = 7: m = T^2 - 12, v = T / 2.
        let (pb, k, mut fiber) = setup(7, 2, &["x1 - 2*x2", "x2^2 - 3"], &[-12, 0, 1]);
        fiber.v = vec![PolyRing::new(k.clone()).from_i64s(&[0, 4])];
        let mut st = PadicState::new(&pb, &k, &fiber).unwrap();
        st.lift_to(4).unwrap();
        assert_eq!(st.m(), &ints(7, 4, &[-12, 0, 1]));
        // 2 v = T mod 7^4
        assert_eq!(st.v()[0], ints(7, 4, &[0, 1201]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn planted_roots_stay_put(roots in proptest::collection::btree_set(-40i64..40, 1..4)) {
            let p = 1_000_003u64;
            let roots: Vec<i64> = roots.into_iter().collect();
            let f = roots.iter().map(|a| format!("(x1 - ({a}))")).collect::<Vec<_>>().join("*");
            let kz = PolyRing::new(crate::ring::ResidueRing::new(p, 8));
            let exact = kz.from_roots(&roots.iter().map(|&a| kz.base().from_i64(a)).collect::<Vec<_>>());
            let (pb, k, mut fiber) = setup(p, 1, &[f.as_str()], &[0, 1]);
            let kp = PolyRing::new(k.clone());
            fiber.m = kp.from_roots(&roots.iter().map(|&a| k.from_i64(a)).collect::<Vec<_>>());
            let mut st = PadicState::new(&pb, &k, &fiber).unwrap();
            st.lift_to(8).unwrap();
            prop_assert_eq!(st.m(), &exact);
        }
    }
}
