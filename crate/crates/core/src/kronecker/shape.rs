use super::project::{project, project_first_order, Chart};
use super::{CurveRep, Problem, SolveError};
use crate::dyneval::{resultant_mod, shape_lemma};
use crate::poly::bivariate::{biv_ring, d_dt, shear as shear_by, total_degree};
use crate::poly::{Poly, PolyRing};
use crate::ring::{Field, Ring};

/// Minimal polynomial of `y_c` on the next fiber and the parametrization of
/// `y_{c+1}` by it.
#[derive(Clone, Debug, PartialEq)]
pub struct NextFiber<K: Field> {
    pub m: Poly<K::Elem>,
    pub v: Poly<K::Elem>,
}

/// Attempts at a second shear when the shape lemma fails.
const SHEAR_ATTEMPTS: usize = 3;

fn plain_chart<K: Field>(k: &K, curve: &CurveRep<K>) -> Chart<K> {
    Chart {
        level: curve.level,
        m: curve.m.clone(),
        denom: d_dt(k, &curve.m),
        w: curve.w.clone(),
        shear: k.zero(),
    }
}

/// `a_F / gcd(a_F, a_G * disc)`, plus whether the discriminant removed
/// anything beyond the zeros of `G`. Without `with_disc`, only `a_G` is
/// divided out.
fn cut<K: Field, R: rand::Rng + ?Sized>(
    pb: &Problem<K>,
    chart: &Chart<K>,
    with_disc: bool,
    rng: &mut R,
) -> Result<(Poly<K::Elem>, bool), SolveError> {
    let k = &pb.k;
    let kx = PolyRing::new(k.clone());
    let s = chart.level;
    let delta = chart.m.len() - 1;
    let a_f = project(pb, chart, s, pb.degrees[s] * delta, rng)?;
    if a_f.len() < 2 {
        return Ok((a_f, false));
    }
    let a_g = if pb.has_g {
        project(
            pb,
            chart,
            pb.g_index(),
            pb.degrees[pb.g_index()] * delta,
            rng,
        )?
    } else {
        kx.one()
    };
    let without_g = kx.quo(&a_f, &kx.gcd(&a_f, &kx.rem(&a_g, &a_f)));
    if !with_disc {
        return Ok((without_g, false));
    }
    let rho = resultant_mod(k, &a_f, chart.m.coeffs(), chart.denom.coeffs()).map_err(|e| {
        SolveError::ShapeViolation(format!("discriminant modulo the projection: {e:?}"))
    })?;
    let stripped = kx.gcd(&without_g, &kx.rem(&rho, &without_g)).len() > 1;
    let bad = kx.rem(&kx.mul(&kx.rem(&a_g, &a_f), &rho), &a_f);
    let m = kx.quo(&a_f, &kx.gcd(&a_f, &bad));
    Ok((m, stripped))
}

fn sheared_chart<K: Field>(
    pb: &Problem<K>,
    curve: &CurveRep<K>,
    shear: &K::Elem,
) -> Result<Chart<K>, SolveError> {
    let k = &pb.k;
    let kx = PolyRing::new(k.clone());
    let kxt = biv_ring(k);
    let delta = curve.m.len() - 1;
    if total_degree(&curve.m) as usize != delta {
        // Not in Noether position for this projection.
        return Err(SolveError::UnluckyEvaluationPoint);
    }
    // X stands for y_c + shear * T, so y_c = X - shear * T.
    let back = k.neg(shear);
    let m = shear_by(k, &curve.m, &back);
    if m.len() != delta + 1 || m.coeffs()[delta].len() != 1 {
        return Err(SolveError::UnluckyEvaluationPoint);
    }
    let lead_inv = k
        .inv(&m.coeffs()[delta].coeffs()[0])
        .map_err(|_| SolveError::UnluckyEvaluationPoint)?;
    let m = kxt.scale(&m, &kx.constant(lead_inv));
    Ok(Chart {
        level: curve.level,
        m,
        denom: shear_by(k, &d_dt(k, &curve.m), &back),
        w: curve.w.iter().map(|f| shear_by(k, f, &back)).collect(),
        shear: shear.clone(),
    })
}

/// `m_L(X + shear * Y)` reduced modulo `m`, as coefficients in `Y`.
fn unshear<K: Field>(
    k: &K,
    m_l: &Poly<K::Elem>,
    shear: &K::Elem,
    m: &Poly<K::Elem>,
) -> Vec<Poly<K::Elem>> {
    let kx = PolyRing::new(k.clone());
    let f = shear_by(k, &biv_ring(k).constant(m_l.clone()), shear);
    f.coeffs().iter().map(|c| kx.rem(c, m)).collect()
}

/// `a_F / gcd(a_F, a_G * disc)` for the curve and `F_{s+1}`, and whether the
/// discriminant removed a root that `G` did not (a lost solution).
pub fn minpoly_candidate<K: Field, R: rand::Rng + ?Sized>(
    pb: &Problem<K>,
    curve: &CurveRep<K>,
    rng: &mut R,
) -> Result<(Poly<K::Elem>, bool), SolveError> {
    cut(pb, &plain_chart(&pb.k, curve), true, rng)
}

/// `y_{c+1}` on the next fiber from the first-order shear of the
/// projection: a simple root `x` of `A_0` moves to `x + eps t`, so
/// `t = -A_1(x) / A_0'(x)` modulo `m`. `None` when that quotient is not
/// defined (a root of `m` is multiple in `A_0`) or sampling failed.
fn first_order_parametrization<K: Field, R: rand::Rng + ?Sized>(
    pb: &Problem<K>,
    curve: &CurveRep<K>,
    m: &Poly<K::Elem>,
    rng: &mut R,
) -> Option<Poly<K::Elem>> {
    let k = &pb.k;
    let kx = PolyRing::new(k.clone());
    let chart = plain_chart(k, curve);
    let s = chart.level;
    let bound = pb.degrees[s] * (chart.m.len() - 1);
    let (a0, a1) = project_first_order(pb, &chart, s, bound, rng).ok()?;
    if !kx.rem(&a0, m).is_zero() {
        return None;
    }
    let inv = kx.modinv(&kx.derivative(&a0), m).ok()?;
    Some(kx.rem(&kx.neg(&kx.mul(&a1, &inv)), m))
}

/// The checked minimal polynomial of `y_c` on the next fiber.
fn next_m<K: Field, R: rand::Rng + ?Sized>(
    pb: &Problem<K>,
    curve: &CurveRep<K>,
    rng: &mut R,
) -> Result<Poly<K::Elem>, SolveError> {
    let level = curve.level;
    let (m, stripped) = minpoly_candidate(pb, curve, rng)?;
    if stripped {
        return Err(SolveError::VerificationFailed(
            "the curve discriminant removed a solution".into(),
        ));
    }
    if m.len() < 2 {
        return Err(SolveError::DegreeCollapse { level: level + 1 });
    }
    let degree = m.len() - 1;
    if degree as u64 > pb.delta_bound {
        return Err(SolveError::DegreeBoundExceeded {
            degree: degree as u64,
            bound: pb.delta_bound,
        });
    }
    Ok(m)
}

/// Intersects the curve with `F_{s+1} = 0`: the minimal polynomial of `y_c`
/// on the next fiber and `y_{c+1}` as a polynomial in `y_c`. The
/// parametrization comes from an infinitesimal shear, or failing that from
/// the gcd of two sheared projections.
pub fn next_minpoly<K: Field, R: rand::Rng + ?Sized>(
    pb: &Problem<K>,
    curve: &CurveRep<K>,
    rng: &mut R,
) -> Result<NextFiber<K>, SolveError> {
    let m = next_m(pb, curve, rng)?;
    if let Some(v) = first_order_parametrization(pb, curve, &m, rng) {
        return Ok(NextFiber { m, v });
    }
    by_two_shears(pb, curve, m, rng, |pb, rng| draw_shear(pb, rng))
}

fn draw_shear<K: Field, R: rand::Rng + ?Sized>(pb: &Problem<K>, rng: &mut R) -> K::Elem {
    let k = &pb.k;
    loop {
        let i = if pb.shear_set <= 1 {
            1
        } else {
            rng.gen_range(1..pb.shear_set.max(2))
        };
        let e = k.element_from_index(i);
        if !k.is_zero(&e) {
            return e;
        }
    }
}

/// As [`next_minpoly`], always through two sheared projections, with the
/// shears supplied by `shears`.
pub fn next_minpoly_with<K, R, S>(
    pb: &Problem<K>,
    curve: &CurveRep<K>,
    rng: &mut R,
    shears: S,
) -> Result<NextFiber<K>, SolveError>
where
    K: Field,
    R: rand::Rng + ?Sized,
    S: FnMut(&Problem<K>, &mut R) -> K::Elem,
{
    let m = next_m(pb, curve, rng)?;
    by_two_shears(pb, curve, m, rng, shears)
}

fn by_two_shears<K, R, S>(
    pb: &Problem<K>,
    curve: &CurveRep<K>,
    m: Poly<K::Elem>,
    rng: &mut R,
    mut shears: S,
) -> Result<NextFiber<K>, SolveError>
where
    K: Field,
    R: rand::Rng + ?Sized,
    S: FnMut(&Problem<K>, &mut R) -> K::Elem,
{
    let k = &pb.k;
    let mut sheared = |rng: &mut R| -> Result<Vec<Poly<K::Elem>>, SolveError> {
        let shear = shears(pb, rng);
        let chart = sheared_chart(pb, curve, &shear)?;
        // `m` already excludes the discriminant locus; only zeros of `G`
        // are removed here.
        let (m_l, _) = cut(pb, &chart, false, rng)?;
        if m_l.len() != m.len() {
            return Err(SolveError::UnluckyEvaluationPoint);
        }
        Ok(unshear(k, &m_l, &shear, &m))
    };
    let f1 = sheared(rng)?;
    let mut last = None;
    for _ in 0..SHEAR_ATTEMPTS {
        let f2 = sheared(rng)?;
        match shape_lemma(k, &m, &f1, &f2) {
            Ok(v) => return Ok(NextFiber { m, v }),
            Err(e) => last = Some(e),
        }
    }
    Err(SolveError::ShapeViolation(
        last.map(|e| e.to_string()).unwrap_or_default(),
    ))
}
