use super::shape::NextFiber;
use super::{CurveRep, Fiber, Problem, SolveError};
use crate::poly::bivariate::{d_dt, BivPoly};
use crate::poly::{Poly, PolyRing};
use crate::ring::{Field, Ring};

/// `f(X, v(X)) mod m` by Horner in `T`.
fn subst_t<K: Field>(
    kx: &PolyRing<K>,
    f: &BivPoly<K::Elem>,
    v: &Poly<K::Elem>,
    m: &Poly<K::Elem>,
) -> Poly<K::Elem> {
    let mut acc = Poly::zero();
    for c in f.coeffs().iter().rev() {
        acc = kx.rem(&kx.add(&kx.mul(&acc, v), c), m);
    }
    acc
}

/// Assembles the fiber of level `s + 1` from the curve of level `s` and the
/// new minimal polynomial: the remaining coordinates are `W_i / M_T` pushed
/// through `T = v(X)`.
pub fn conclude_fiber<K: Field>(
    pb: &Problem<K>,
    curve: &CurveRep<K>,
    next: &NextFiber<K>,
) -> Result<Fiber<K>, SolveError> {
    let k = &pb.k;
    let kx = PolyRing::new(k.clone());
    let m = &next.m;
    let h = subst_t(&kx, &d_dt(k, &curve.m), &next.v, m);
    let g = kx.modinv(&h, m).map_err(|_| SolveError::NotInvertible)?;
    let mut v = vec![next.v.clone()];
    for w in &curve.w {
        let wv = subst_t(&kx, w, &next.v, m);
        v.push(kx.rem(&kx.mul(&g, &wv), m));
    }
    Ok(Fiber {
        level: curve.level + 1,
        n: pb.n,
        lambda: pb.lambda.clone(),
        point: pb.point.clone(),
        m: m.clone(),
        v,
        w: Vec::new(),
    })
}

/// Fills in the numerators `w_i = m' v_i mod m`.
pub fn finalize<K: Field>(k: &K, fiber: &mut Fiber<K>) {
    let kx = PolyRing::new(k.clone());
    let dm = kx.derivative(&fiber.m);
    fiber.w = fiber
        .v
        .iter()
        .map(|v| kx.rem(&kx.mul(&dm, v), &fiber.m))
        .collect();
}
