use super::{CurveRep, Fiber, Problem, SolveError};
use crate::linalg::det_adjugate;
use crate::poly::bivariate::{biv_ring, eval_x, BivPoly};
use crate::poly::{Poly, PolyRing, QuotientRing, SeriesRing};
use crate::ring::{Field, Ring};

/// A lifted curve in the local coordinate `Z = y_c - anchor`: `m` and the
/// coordinates `v` are polynomials in `T` with truncated series coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCurve<K: Field> {
    pub anchor: K::Elem,
    pub precision: usize,
    pub m: BivPoly<K::Elem>,
    /// `y_{c+2+l}` for `l = 0 .. s-2`.
    pub v: Vec<BivPoly<K::Elem>>,
}

/// Inverse of `x` in `(K[[Z]]/Z^t)[T]/(M)` given that its reduction at
/// `Z = 0` is a unit modulo `m0 = M(0, T)`.
pub(crate) fn invert_unit<K: Field>(
    q: &QuotientRing<SeriesRing<K>>,
    x: &Poly<Poly<K::Elem>>,
    m0: &Poly<K::Elem>,
) -> Option<Poly<Poly<K::Elem>>> {
    let ser = q.base();
    let k = ser.base();
    let kt = PolyRing::new(k.clone());
    let x0 = kt.from_coeffs(x.coeffs().iter().map(|c| ser.constant_term(c)).collect());
    let g0 = kt.modinv(&x0, m0).ok()?;
    let mut g = lift_const(ser, &g0);
    let two = q.from_i64(2);
    let mut prec = 1;
    while prec < ser.precision() {
        g = q.mul(&g, &q.sub(&two, &q.mul(x, &g)));
        prec *= 2;
    }
    Some(g)
}

/// Embeds a polynomial in `T` with field coefficients.
fn lift_const<K: Field>(ser: &SeriesRing<K>, f: &Poly<K::Elem>) -> Poly<Poly<K::Elem>> {
    PolyRing::new(ser.clone())
        .from_coeffs(f.coeffs().iter().map(|c| ser.constant(c.clone())).collect())
}

/// Coefficient-wise truncation in `Z`.
fn truncate_z<K: Field>(ser: &SeriesRing<K>, f: &BivPoly<K::Elem>) -> BivPoly<K::Elem> {
    PolyRing::new(ser.clone()).from_coeffs(f.coeffs().iter().map(|c| ser.from_poly(c)).collect())
}

/// Global Newton iteration: lifts the fiber of level `s` to the curve where
/// `y_c` (`c = n - s - 1`) is free, as series around `y_c = p_c`, to
/// precision at least `deg m + 1`.
pub fn newton_lift_series<K: Field>(
    pb: &Problem<K>,
    fiber: &Fiber<K>,
) -> Result<SeriesCurve<K>, SolveError> {
    let k = &pb.k;
    let (n, r, s) = (pb.n, pb.r, fiber.level);
    assert!(s < n, "nothing to lift at level n");
    let c = n - s - 1;
    let anchor = pb.point[c].clone();
    let target = fiber.degree() + 1;
    let m0 = fiber.m.clone();

    let ser1 = SeriesRing::new(k.clone(), 1);
    let mut big_m = lift_const(&ser1, &fiber.m);
    let q1 = QuotientRing::new(ser1.clone(), big_m.clone());
    let mut vs: Vec<BivPoly<K::Elem>> = vec![q1.gen()];
    vs.extend(fiber.v.iter().map(|v| lift_const(&ser1, v)));

    let mut prec = 1;
    let mut det_inv = None;
    while prec < target {
        let t = (2 * prec).min(target);
        let ser = SeriesRing::new(k.clone(), t);
        let q = QuotientRing::new(ser.clone(), big_m.clone());
        // `T mod M` moves with `M` when `deg M = 1`.
        vs[0] = q.gen();
        let mut inputs = Vec::with_capacity(n);
        for p in &pb.point[..c] {
            inputs.push(q.constant(ser.constant(p.clone())));
        }
        inputs.push(q.constant(ser.shifted_var(anchor.clone())));
        inputs.extend(vs.iter().cloned());
        let vals = pb
            .jacobian
            .evaluate(&q, &inputs, |e| q.constant(ser.constant(e.clone())));
        let jac: Vec<Vec<_>> = (0..s)
            .map(|j| {
                (0..s)
                    .map(|l| vals[r + j * n + c + 1 + l].clone())
                    .collect()
            })
            .collect();
        let (det, adj) = det_adjugate(&q, &jac);
        // The previous inverse is right to precision `prec` here, so one
        // Newton step brings it to `t`.
        let inv = match det_inv.take() {
            Some(g) => q.mul(&g, &q.sub(&q.from_i64(2), &q.mul(&det, &g))),
            None => {
                invert_unit(&q, &det, &m0).ok_or(SolveError::JacobianNonInvertible { level: s })?
            }
        };
        let mut moved = Vec::with_capacity(s);
        for l in 0..s {
            let mut acc = q.zero();
            for j in 0..s {
                acc = q.add(&acc, &q.mul(&adj[l][j], &vals[j]));
            }
            moved.push(q.sub(&vs[l], &q.mul(&inv, &acc)));
        }
        // Re-anchor on the moved primitive element.
        let kts = q.poly_ring();
        let shift = q.sub(&moved[0], &q.gen());
        let mut next = vec![q.gen()];
        for v in &moved[1..] {
            next.push(q.sub(v, &q.mul(&shift, &kts.derivative(v))));
        }
        big_m = kts.sub(&big_m, &q.mul(&shift, &kts.derivative(&big_m)));
        vs = next;
        det_inv = Some(inv);
        prec = t;
    }
    let ser = SeriesRing::new(k.clone(), target);
    Ok(SeriesCurve {
        anchor,
        precision: target,
        m: truncate_z(&ser, &big_m),
        v: vs[1..].iter().map(|v| truncate_z(&ser, v)).collect(),
    })
}

/// Lifts a fiber to its curve in the coordinates `(X, T) = (y_c, y_{c+1})`.
pub fn newton_lift<K: Field>(pb: &Problem<K>, fiber: &Fiber<K>) -> Result<CurveRep<K>, SolveError> {
    let sc = newton_lift_series(pb, fiber)?;
    let ser = SeriesRing::new(pb.k.clone(), sc.precision);
    let q = QuotientRing::new(ser.clone(), sc.m.clone());
    let m_t = q.poly_ring().derivative(&sc.m);
    let to_x = |f: &BivPoly<K::Elem>| -> BivPoly<K::Elem> {
        let kx = PolyRing::new(pb.k.clone());
        PolyRing::new(kx).from_coeffs(
            f.coeffs()
                .iter()
                .map(|c| ser.to_poly_at(c, &sc.anchor))
                .collect(),
        )
    };
    let w = sc.v.iter().map(|v| to_x(&q.mul(&m_t, v))).collect();
    Ok(CurveRep {
        level: fiber.level,
        m: to_x(&sc.m),
        w,
    })
}

/// Checks a lifted curve against its fiber: `M(p_c, T) = m`, and the
/// equations `F_1 .. F_s` vanish on the curve modulo `M` to precision
/// `deg m + 1` around `p_c`.
pub fn check_curve<K: Field>(pb: &Problem<K>, fiber: &Fiber<K>, curve: &CurveRep<K>) -> bool {
    let k = &pb.k;
    let (n, s) = (pb.n, fiber.level);
    let c = n - s - 1;
    let anchor = &pb.point[c];
    if eval_x(k, &curve.m, anchor) != fiber.m {
        return false;
    }
    let ser = SeriesRing::new(k.clone(), fiber.degree() + 1);
    let kts = PolyRing::new(ser.clone());
    let to_z = |f: &BivPoly<K::Elem>| {
        kts.from_coeffs(
            f.coeffs()
                .iter()
                .map(|c| ser.from_poly_at(c, anchor))
                .collect(),
        )
    };
    let mz = to_z(&curve.m);
    if !kts.is_monic(&mz) || mz.len() != fiber.m.len() {
        return false;
    }
    let q = QuotientRing::new(ser.clone(), mz.clone());
    let Some(dinv) = invert_unit(&q, &kts.derivative(&mz), &fiber.m) else {
        return false;
    };
    let mut inputs = Vec::with_capacity(n);
    for p in &pb.point[..c] {
        inputs.push(q.constant(ser.constant(p.clone())));
    }
    inputs.push(q.constant(ser.shifted_var(anchor.clone())));
    inputs.push(q.gen());
    for w in &curve.w {
        inputs.push(q.mul(&to_z(w), &dinv));
    }
    if inputs.len() != n {
        return false;
    }
    let vals = pb.evaluate(&q, &inputs, |e| q.constant(ser.constant(e.clone())));
    vals[..s].iter().all(|v| q.is_zero(v))
}

/// `M` as a polynomial in `T` over `k[X]`, for tests and callers that build
/// curves by hand.
pub fn curve_from_rows<K: Field>(k: &K, rows: &[Poly<K::Elem>]) -> BivPoly<K::Elem> {
    biv_ring(k).from_coeffs(rows.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kronecker::initial_fiber;
    use crate::linalg::identity;
    use crate::ring::PrimeField;
    use crate::slp::SystemSpec;
    use num_rational::BigRational;

    fn problem(p: u64, f: &[&str], point: Vec<u64>) -> Problem<PrimeField> {
        let k = PrimeField::new(p).unwrap();
        let n = point.len() + 1;
        let eps = BigRational::new(1.into(), 2.into());
        let spec =
            SystemSpec::from_polys(n, format!("Fp:{p}").parse().unwrap(), eps.clone(), f, None)
                .unwrap();
        Problem::new(&k, &spec, identity(&k, n), point, spec.delta(), &eps).unwrap()
    }

    #[test]
    fn hyperbola_lifts_to_truncated_series() {
        let pb = problem(7, &["x1*x2 - 1"], vec![3]);
        let fib = initial_fiber(&pb).unwrap();
        let kx = PolyRing::new(pb.k.clone());
        assert_eq!(fib.m, kx.from_i64s(&[-5, 1]));
        let sc = newton_lift_series(&pb, &fib).unwrap();
        assert_eq!(sc.m.coeffs()[0], kx.from_i64s(&[-5, -3]));
        let curve = newton_lift(&pb, &fib).unwrap();
        // T - (5 + 3 (X - 3)) = T - 3X - 3
        assert_eq!(
            curve.m,
            curve_from_rows(&pb.k, &[kx.from_i64s(&[-3, -3]), kx.one()])
        );
        assert!(check_curve(&pb, &fib, &curve));
    }

    #[test]
    fn parabola_lifts_exactly() {
        let pb = problem(7, &["x2^2 - x1", "x2 - x1 - 1"], vec![2]);
        let fib = initial_fiber(&pb).unwrap();
        let curve = newton_lift(&pb, &fib).unwrap();
        let kx = PolyRing::new(pb.k.clone());
        assert_eq!(
            curve.m,
            curve_from_rows(&pb.k, &[kx.from_i64s(&[0, -1]), kx.zero(), kx.one()])
        );
        assert!(check_curve(&pb, &fib, &curve));
    }

    #[test]
    fn tampered_curve_fails_check() {
        let pb = problem(
            10_007,
            &["x1^2 + x2^2 + x3^2 - 3", "x1 + x2 - x3 - 1", "x3 - 2"],
            vec![1, 2],
        );
        let fib = initial_fiber(&pb).unwrap();
        let mut curve = newton_lift(&pb, &fib).unwrap();
        assert!(check_curve(&pb, &fib, &curve));
        let kx = PolyRing::new(pb.k.clone());
        let mut rows = curve.m.coeffs().to_vec();
        rows[0] = kx.add(&rows[0], &kx.from_i64s(&[4, -4, 1]));
        curve.m = curve_from_rows(&pb.k, &rows);
        assert!(!check_curve(&pb, &fib, &curve));
    }
}
