use std::collections::HashSet;

use super::context::draw_fresh;
use super::lift::invert_unit;
use super::{Problem, SolveError};
use crate::poly::bivariate::{eval_x, BivPoly};
use crate::poly::{Poly, PolyRing, QuotientRing, SeriesRing};
use crate::ring::{Field, Ring};

/// A curve of level `s` in possibly sheared coordinates: `X` stands for
/// `y_c + shear * y_{c+1}`, `T` for `y_{c+1}`, and `y_{c+2+l} = w[l] / denom`
/// on the curve.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart<K: Field> {
    pub level: usize,
    /// Monic in `T`.
    pub m: BivPoly<K::Elem>,
    pub denom: BivPoly<K::Elem>,
    pub w: Vec<BivPoly<K::Elem>>,
    pub shear: K::Elem,
}

/// Extra draws allowed for points where the denominator is not invertible.
const RESAMPLE_SLACK: usize = 32;

/// The monic square-free part of the projection on `X` of the intersection
/// of the curve with `output = 0`, from its values at `bound + 1` sampled
/// points; one more point checks the interpolant.
pub fn project<K: Field, R: rand::Rng + ?Sized>(
    pb: &Problem<K>,
    chart: &Chart<K>,
    output: usize,
    bound: usize,
    rng: &mut R,
) -> Result<Poly<K::Elem>, SolveError> {
    let start = std::time::Instant::now();
    let out = project_inner(pb, chart, output, bound, rng);
    pb.projection_time
        .set(pb.projection_time.get() + start.elapsed());
    out
}

fn project_inner<K: Field, R: rand::Rng + ?Sized>(
    pb: &Problem<K>,
    chart: &Chart<K>,
    output: usize,
    bound: usize,
    rng: &mut R,
) -> Result<Poly<K::Elem>, SolveError> {
    let k = &pb.k;
    let kt = PolyRing::new(k.clone());
    let (n, s) = (pb.n, chart.level);
    let c = n - s - 1;
    let need = bound + 2;
    let mut used = HashSet::new();
    let mut xs = Vec::with_capacity(need);
    let mut ys = Vec::with_capacity(need);
    let mut budget = 4 * need + RESAMPLE_SLACK;
    while xs.len() < need {
        if budget == 0 {
            return Err(SolveError::UnluckyEvaluationPoint);
        }
        budget -= 1;
        let alpha = draw_fresh(k, pb.projection_set, &mut used, rng)
            .ok_or(SolveError::UnluckyEvaluationPoint)?;
        let ma = eval_x(k, &chart.m, &alpha);
        let q = QuotientRing::new(k.clone(), ma.clone());
        let da = q.reduce(&eval_x(k, &chart.denom, &alpha));
        let Ok(da_inv) = q.inv(&da) else {
            continue;
        };
        let mut inputs = Vec::with_capacity(n);
        for p in &pb.point[..c] {
            inputs.push(q.constant(p.clone()));
        }
        // y_c = X - shear * T
        let t = q.gen();
        inputs.push(q.sub(
            &q.constant(alpha.clone()),
            &q.mul(&q.constant(chart.shear.clone()), &t),
        ));
        inputs.push(t);
        for w in &chart.w {
            inputs.push(q.mul(&q.reduce(&eval_x(k, w, &alpha)), &da_inv));
        }
        let vals = pb.evaluate(&q, &inputs, |e| q.constant(e.clone()));
        ys.push(kt.resultant(&ma, &vals[output]));
        xs.push(alpha);
    }
    let a = kt
        .interpolate(&xs[..need - 1], &ys[..need - 1])
        .map_err(|_| SolveError::UnluckyEvaluationPoint)?;
    if kt.eval(&a, &xs[need - 1]) != ys[need - 1] {
        return Err(SolveError::ProjectionCheck);
    }
    if a.is_zero() {
        return Err(SolveError::ZeroConstantTerm);
    }
    Ok(kt.squarefree_part(&kt.monic(&a)))
}

/// `f(alpha - eps T, T)` to first order in `eps`, as a polynomial in `T`
/// with coefficients in `k[eps]/(eps^2)`.
fn on_sheared_line<K: Field>(
    ser: &SeriesRing<K>,
    f: &BivPoly<K::Elem>,
    alpha: &K::Elem,
) -> Poly<Poly<K::Elem>> {
    let k = ser.base();
    let kx = ser.poly_ring();
    let mut rows = vec![vec![k.zero(), k.zero()]; f.len() + 1];
    for (j, c) in f.coeffs().iter().enumerate() {
        rows[j][0] = kx.eval(c, alpha);
        rows[j + 1][1] = k.neg(&kx.eval(&kx.derivative(c), alpha));
    }
    PolyRing::new(ser.clone()).from_coeffs(rows.into_iter().map(|r| kx.from_coeffs(r)).collect())
}

/// Coefficient `i` in `eps` of every coefficient in `T`.
fn eps_part<K: Field>(kt: &PolyRing<K>, f: &Poly<Poly<K::Elem>>, i: usize) -> Poly<K::Elem> {
    kt.from_coeffs(f.coeffs().iter().map(|c| kt.coeff(c, i)).collect())
}

/// Power sums `sum t^j`, `j < deg m`, over the roots of a monic `m`.
pub(crate) fn power_sums<K: Field>(kt: &PolyRing<K>, m: &Poly<K::Elem>) -> Vec<K::Elem> {
    let k = kt.base();
    let d = m.len() - 1;
    let rev = kt.from_coeffs(m.coeffs().iter().rev().cloned().collect());
    // -z rev'(z) / rev(z) = sum_{j >= 1} p_j z^j
    let log_d = kt.mul_trunc(&kt.derivative(&rev), &kt.inv_series_monic(&rev, d), d);
    let mut sums = Vec::with_capacity(d);
    sums.push(k.from_i64(d as i64));
    sums.extend((1..d).map(|j| k.neg(&kt.coeff(&log_d, j - 1))));
    sums
}

/// [`project`] for the chart sheared by an infinitesimal `eps`: the
/// eliminant `A_0 + eps A_1` of the intersection with `output = 0`, before
/// any normalization. A point `(x, t)` of the intersection makes `x + eps t`
/// a root, so `A_1(x) = -t A_0'(x)` at every simple root `x` of `A_0`.
pub fn project_first_order<K: Field, R: rand::Rng + ?Sized>(
    pb: &Problem<K>,
    chart: &Chart<K>,
    output: usize,
    bound: usize,
    rng: &mut R,
) -> Result<(Poly<K::Elem>, Poly<K::Elem>), SolveError> {
    let start = std::time::Instant::now();
    let out = first_order_inner(pb, chart, output, bound, rng);
    pb.projection_time
        .set(pb.projection_time.get() + start.elapsed());
    out
}

fn first_order_inner<K: Field, R: rand::Rng + ?Sized>(
    pb: &Problem<K>,
    chart: &Chart<K>,
    output: usize,
    bound: usize,
    rng: &mut R,
) -> Result<(Poly<K::Elem>, Poly<K::Elem>), SolveError> {
    let k = &pb.k;
    let kt = PolyRing::new(k.clone());
    let ser = SeriesRing::new(k.clone(), 2);
    let (n, s) = (pb.n, chart.level);
    let c = n - s - 1;
    let need = bound + 2;
    let mut used = HashSet::new();
    let (mut xs, mut y0, mut y1) = (
        Vec::with_capacity(need),
        Vec::with_capacity(need),
        Vec::with_capacity(need),
    );
    let mut budget = 4 * need + RESAMPLE_SLACK;
    while xs.len() < need {
        if budget == 0 {
            return Err(SolveError::UnluckyEvaluationPoint);
        }
        budget -= 1;
        let alpha = draw_fresh(k, pb.projection_set, &mut used, rng)
            .ok_or(SolveError::UnluckyEvaluationPoint)?;
        let m_eps = on_sheared_line(&ser, &chart.m, &alpha);
        let Ok(lead_inv) = ser.inv(m_eps.coeffs().last().expect("monic in T")) else {
            continue;
        };
        let m_eps = PolyRing::new(ser.clone()).scale(&m_eps, &lead_inv);
        let (m0, m1) = (eps_part(&kt, &m_eps, 0), eps_part(&kt, &m_eps, 1));
        let q0 = QuotientRing::new(k.clone(), m0.clone());
        let dm0 = kt.derivative(&m0);
        let Ok(dm0_inv) = q0.inv(&dm0) else {
            continue;
        };
        let q = QuotientRing::new(ser.clone(), m_eps);
        let den = q.reduce(&on_sheared_line(&ser, &chart.denom, &alpha));
        let Some(den_inv) = invert_unit(&q, &den, &m0) else {
            continue;
        };
        let mut inputs = Vec::with_capacity(n);
        for p in &pb.point[..c] {
            inputs.push(q.constant(ser.constant(p.clone())));
        }
        // y_c = alpha - eps T
        let t = q.gen();
        inputs.push(q.sub(
            &q.constant(ser.constant(alpha.clone())),
            &q.mul(&q.constant(ser.poly_ring().var()), &t),
        ));
        inputs.push(t);
        for w in &chart.w {
            inputs.push(q.mul(&q.reduce(&on_sheared_line(&ser, w, &alpha)), &den_inv));
        }
        let vals = pb.evaluate(&q, &inputs, |e| q.constant(ser.constant(e.clone())));
        let g = &vals[output];
        let (g0, g1) = (eps_part(&kt, g, 0), eps_part(&kt, g, 1));
        let Ok(g0_inv) = q0.inv(&g0) else {
            continue;
        };
        // Res(m0 + eps m1, g0 + eps g1)
        //   = N(g0) (1 + eps Tr((g1 m0' - g0' m1) / (m0' g0)))
        let norm = kt.resultant(&m0, &g0);
        let num = q0.sub(
            &q0.mul(&g1, &dm0),
            &q0.reduce(&kt.mul(&kt.derivative(&g0), &m1)),
        );
        let h = q0.mul(&q0.mul(&num, &dm0_inv), &g0_inv);
        let sums = power_sums(&kt, &m0);
        let trace = h
            .coeffs()
            .iter()
            .zip(&sums)
            .fold(k.zero(), |acc, (a, b)| k.add(&acc, &k.mul(a, b)));
        y0.push(norm.clone());
        y1.push(k.mul(&norm, &trace));
        xs.push(alpha);
    }
    let fit = |ys: &[K::Elem]| -> Result<Poly<K::Elem>, SolveError> {
        let a = kt
            .interpolate(&xs[..need - 1], &ys[..need - 1])
            .map_err(|_| SolveError::UnluckyEvaluationPoint)?;
        if kt.eval(&a, &xs[need - 1]) != ys[need - 1] {
            return Err(SolveError::ProjectionCheck);
        }
        Ok(a)
    };
    Ok((fit(&y0)?, fit(&y1)?))
}
