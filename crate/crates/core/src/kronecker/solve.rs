use std::time::Instant;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::{extension_degree, inner_size, preprocessing_size, projection_size};
use super::{
    check_curve, conclude_fiber, finalize, initial_fiber, newton_lift, next_minpoly, verify,
    CurveRep, Fiber, Problem, SolveConfig, SolveError, SolveStats, StageTimings,
};
use crate::linalg::Matrix;
use crate::ring::{ExtField, Field, FieldEmbedding, FiniteField};
use crate::slp::SystemSpec;

/// A fiber of the full system together with what it took to compute it.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport<K: Field> {
    pub fiber: Fiber<K>,
    /// The lifted curves, level by level, when they live over the output
    /// field.
    pub curves: Vec<CurveRep<K>>,
    pub stats: SolveStats,
}

/// Result of [`solve_finite`]: over the input field, or over an extension
/// when the input field is too small to sample the change of variables.
#[derive(Clone, Debug, PartialEq)]
pub enum FiniteSolution<F: FiniteField> {
    Base(SolveReport<F>),
    Extended {
        field: ExtField,
        embedding: FieldEmbedding,
        report: SolveReport<ExtField>,
    },
}

impl<F: FiniteField> FiniteSolution<F> {
    pub fn stats(&self) -> &SolveStats {
        match self {
            FiniteSolution::Base(r) => &r.stats,
            FiniteSolution::Extended { report, .. } => &report.stats,
        }
    }

    fn stats_mut(&mut self) -> &mut SolveStats {
        match self {
            FiniteSolution::Base(r) => &mut r.stats,
            FiniteSolution::Extended { report, .. } => &mut report.stats,
        }
    }

    /// Degree of the minimal polynomial.
    pub fn degree(&self) -> usize {
        match self {
            FiniteSolution::Base(r) => r.fiber.degree(),
            FiniteSolution::Extended { report, .. } => report.fiber.degree(),
        }
    }
}

/// Draws the change of variables and the lifting point from
/// `{0 .. set_size-1}`.
pub fn sample_change<K: Field, R: rand::Rng + ?Sized>(
    k: &K,
    n: usize,
    set_size: u128,
    rng: &mut R,
) -> (Matrix<K::Elem>, Vec<K::Elem>) {
    if n == 1 {
        // Every nonzero scalar gives the same fiber up to scaling.
        return (vec![vec![k.one()]], Vec::new());
    }
    let mut draw = || {
        k.element_from_index(if set_size <= 1 {
            0
        } else {
            rng.gen_range(0..set_size)
        })
    };
    let lambda = (0..n).map(|_| (0..n).map(|_| draw()).collect()).collect();
    let point = (0..n.saturating_sub(1)).map(|_| draw()).collect();
    (lambda, point)
}

fn timed<T>(slot: &mut std::time::Duration, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    *slot += t.elapsed();
    out
}

/// One run of the incremental solver for a fixed change of variables and
/// lifting point. Returns the final fiber (with numerators) and the curves.
pub fn solve_with_point<K: Field, R: rand::Rng + ?Sized>(
    pb: &Problem<K>,
    rng: &mut R,
    timings: &mut StageTimings,
) -> Result<(Fiber<K>, Vec<CurveRep<K>>), SolveError> {
    let mut fiber = timed(&mut timings.initial, || initial_fiber(pb))?;
    let mut curves = Vec::with_capacity(pb.r.saturating_sub(1));
    for _ in 1..pb.r {
        let curve = timed(&mut timings.lift, || newton_lift(pb, &fiber))?;
        if pb.check_curves && !check_curve(pb, &fiber, &curve) {
            return Err(SolveError::VerificationFailed(format!(
                "lifted curve of level {} is inconsistent",
                fiber.level
            )));
        }
        let before = pb.projection_time.get();
        let next = timed(&mut timings.shape, || next_minpoly(pb, &curve, rng));
        let spent = pb.projection_time.get() - before;
        timings.project += spent;
        timings.shape = timings.shape.saturating_sub(spent);
        let next = next?;
        fiber = timed(&mut timings.conclude, || conclude_fiber(pb, &curve, &next))?;
        curves.push(curve);
    }
    finalize(&pb.k, &mut fiber);
    Ok((fiber, curves))
}

pub(crate) fn attempt<K: Field, R: rand::Rng + ?Sized>(
    k: &K,
    spec: &SystemSpec,
    cfg: &SolveConfig,
    lambda: Matrix<K::Elem>,
    point: Vec<K::Elem>,
    delta: u64,
    rng: &mut R,
    stats: &mut SolveStats,
) -> Result<(Fiber<K>, Vec<CurveRep<K>>), SolveError> {
    let mut pb = Problem::new(k, spec, lambda, point, delta, &cfg.epsilon)?;
    pb.check_curves = cfg.check_curves;
    let (fiber, curves) = solve_with_point(&pb, rng, &mut stats.timings)?;
    let rep = verify(k, spec, &fiber);
    if !rep.passed() {
        return Err(SolveError::VerificationFailed(rep.failures().join(", ")));
    }
    Ok((fiber, curves))
}

/// Retry loop shared by the drivers: doubles the degree bound when it is
/// exceeded, resamples after unlucky failures and reports an empty variety
/// after two consecutive empty outcomes.
pub(crate) fn drive<T>(
    spec: &SystemSpec,
    cfg: &SolveConfig,
    mut run: impl FnMut(u64, &mut ChaCha8Rng, &mut SolveStats) -> Result<T, SolveError>,
) -> Result<(T, SolveStats), SolveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut delta = cfg
        .delta_bound
        .or(spec.delta_bound)
        .unwrap_or_else(|| spec.delta())
        .max(1);
    let mut stats = SolveStats::default();
    let mut empties = 0;
    let mut last: Option<SolveError> = None;
    loop {
        // One extra attempt may confirm an empty outcome.
        let budget = cfg.max_retries + u32::from(empties == 1);
        if stats.attempts > budget {
            return Err(SolveError::RetriesExhausted {
                attempts: stats.attempts,
                last: Box::new(last.unwrap_or(SolveError::UnluckyEvaluationPoint)),
            });
        }
        stats.attempts += 1;
        match run(delta, &mut rng, &mut stats) {
            Ok(t) => return Ok((t, stats)),
            Err(SolveError::DegreeBoundExceeded { degree, .. }) => {
                stats.attempts -= 1;
                delta = delta.saturating_mul(2).max(degree);
            }
            Err(e) if e.suggests_empty() => {
                empties += 1;
                if empties >= 2 {
                    return Err(SolveError::EmptyVariety);
                }
                last = Some(e);
            }
            Err(e) if e.is_unlucky() => {
                empties = 0;
                last = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
}

fn cardinality_u128<K: Field>(k: &K) -> Option<u128> {
    k.cardinality().map(|c| c.to_u128().unwrap_or(u128::MAX))
}

fn too_small(requested: u128, available: u128) -> SolveError {
    SolveError::FieldTooSmall {
        requested,
        available,
    }
}

/// Solves over `k` itself, sampling the change of variables in `k`.
pub fn solve_in<K: Field>(
    k: &K,
    spec: &SystemSpec,
    cfg: &SolveConfig,
) -> Result<SolveReport<K>, SolveError> {
    let (n, r, d) = (spec.n, spec.r(), spec.max_degree());
    let ((fiber, curves), mut stats) = drive(spec, cfg, |delta, rng, stats| {
        let size = preprocessing_size(n, r, d, delta, &cfg.epsilon);
        if let Some(q) = cardinality_u128(k) {
            if q < size {
                return Err(too_small(size, q));
            }
        }
        let (lambda, point) = sample_change(k, n, size, rng);
        attempt(k, spec, cfg, lambda, point, delta, rng, stats)
    })?;
    stats.extension_degree = 1;
    Ok(SolveReport {
        fiber,
        curves,
        stats,
    })
}

/// Where a finite-field solve runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldPlan {
    /// The field is large enough for everything.
    Direct,
    /// Sample in the field, run the inner steps in an extension of this
    /// degree and bring the result back.
    Inner(usize),
    /// Sample and answer in an extension of this degree.
    Outer(usize),
}

/// Chooses how to run over a field with `q` elements.
pub fn field_plan(q: u128, spec: &SystemSpec, delta: u64, epsilon: &BigRational) -> FieldPlan {
    let (n, r, d) = (spec.n, spec.r(), spec.max_degree());
    let pre = preprocessing_size(n, r, d, delta, epsilon);
    let work = inner_size(r, delta, epsilon).max(projection_size(d, delta, epsilon));
    if q >= pre.max(work) {
        FieldPlan::Direct
    } else if q >= pre {
        FieldPlan::Inner(extension_degree(q, work))
    } else {
        FieldPlan::Outer(extension_degree(q, pre.max(work)))
    }
}

fn restrict_fiber<F: FiniteField>(
    k: &F,
    emb: &FieldEmbedding,
    big: &Fiber<ExtField>,
) -> Option<Fiber<F>> {
    let el = |y: &Vec<u64>| emb.restrict(k, y);
    let poly = |p: &crate::poly::Poly<Vec<u64>>| -> Option<crate::poly::Poly<F::Elem>> {
        let cs: Option<Vec<_>> = p.coeffs().iter().map(el).collect();
        Some(crate::poly::PolyRing::new(k.clone()).from_coeffs(cs?))
    };
    Some(Fiber {
        level: big.level,
        n: big.n,
        lambda: big
            .lambda
            .iter()
            .map(|row| row.iter().map(el).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?,
        point: big.point.iter().map(el).collect::<Option<Vec<_>>>()?,
        m: poly(&big.m)?,
        v: big.v.iter().map(poly).collect::<Option<Vec<_>>>()?,
        w: big.w.iter().map(poly).collect::<Option<Vec<_>>>()?,
    })
}

/// Runs one attempt over `big` for a change of variables drawn in `k`, then
/// brings the fiber back to `k` and checks it there.
pub(crate) fn attempt_inner<F: FiniteField, R: rand::Rng + ?Sized>(
    k: &F,
    big: &ExtField,
    emb: &FieldEmbedding,
    spec: &SystemSpec,
    cfg: &SolveConfig,
    lambda: &Matrix<F::Elem>,
    point: &[F::Elem],
    delta: u64,
    rng: &mut R,
    stats: &mut SolveStats,
) -> Result<Fiber<F>, SolveError> {
    let lambda = lambda
        .iter()
        .map(|row| row.iter().map(|x| emb.embed(k, x)).collect())
        .collect();
    let point = point.iter().map(|x| emb.embed(k, x)).collect();
    let (fiber, _) = attempt(big, spec, cfg, lambda, point, delta, rng, stats)?;
    let small = restrict_fiber(k, emb, &fiber).ok_or(SolveError::CoercionFailed)?;
    let rep = verify(k, spec, &small);
    if !rep.passed() {
        return Err(SolveError::VerificationFailed(rep.failures().join(", ")));
    }
    Ok(small)
}

/// Solves over a finite field, moving to an extension when the field is too
/// small for the sampling sets.
pub fn solve_finite<F: FiniteField>(
    k: &F,
    spec: &SystemSpec,
    cfg: &SolveConfig,
) -> Result<FiniteSolution<F>, SolveError> {
    let q = k.size();
    let n = spec.n;
    let (n_r, d) = (spec.r(), spec.max_degree());
    let mut cache: Option<(u64, FieldPlan, Option<(ExtField, FieldEmbedding)>)> = None;
    let (mut sol, stats) = drive(spec, cfg, |delta, rng, stats| {
        if cache.as_ref().map(|c| c.0) != Some(delta) {
            let plan = field_plan(q, spec, delta, &cfg.epsilon);
            let ext = match plan {
                FieldPlan::Direct => None,
                FieldPlan::Inner(e) | FieldPlan::Outer(e) => Some(k.extension(e, rng)?),
            };
            cache = Some((delta, plan, ext));
        }
        let (_, plan, ext) = cache.as_ref().unwrap();
        let pre = preprocessing_size(n, n_r, d, delta, &cfg.epsilon);
        match (plan, ext) {
            (FieldPlan::Direct, _) => {
                stats.extension_degree = 1;
                let (lambda, point) = sample_change(k, n, pre, rng);
                let (fiber, curves) = attempt(k, spec, cfg, lambda, point, delta, rng, stats)?;
                Ok(FiniteSolution::Base(SolveReport {
                    fiber,
                    curves,
                    stats: SolveStats::default(),
                }))
            }
            (FieldPlan::Inner(e), Some((big, emb))) => {
                stats.extension_degree = *e;
                let (lambda, point) = sample_change(k, n, pre, rng);
                let small =
                    attempt_inner(k, big, emb, spec, cfg, &lambda, &point, delta, rng, stats)?;
                Ok(FiniteSolution::Base(SolveReport {
                    fiber: small,
                    curves: Vec::new(),
                    stats: SolveStats::default(),
                }))
            }
            (FieldPlan::Outer(e), Some((big, emb))) => {
                stats.extension_degree = *e;
                let (lambda, point) = sample_change(big, n, pre, rng);
                let (fiber, curves) = attempt(big, spec, cfg, lambda, point, delta, rng, stats)?;
                Ok(FiniteSolution::Extended {
                    field: big.clone(),
                    embedding: emb.clone(),
                    report: SolveReport {
                        fiber,
                        curves,
                        stats: SolveStats::default(),
                    },
                })
            }
            _ => unreachable!("extension plans carry their field"),
        }
    })?;
    *sol.stats_mut() = stats;
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::identity;
    use crate::poly::PolyRing;
    use crate::ring::{PrimeField, Ring};

    fn spec(p: u64, f: &[&str]) -> SystemSpec {
        let n = f.len().max(2);
        SystemSpec::from_polys(
            n,
            format!("Fp:{p}").parse().unwrap(),
            BigRational::new(1.into(), 100.into()),
            f,
            None,
        )
        .unwrap()
    }

    #[test]
    fn parabola_with_identity_change() {
        let k = PrimeField::new(10_007).unwrap();
        let s = spec(10_007, &["x2^2 - x1", "x2 - x1 - 1"]);
        let mut pb = Problem::new(&k, &s, identity(&k, 2), vec![2], 2, &s.epsilon).unwrap();
        pb.check_curves = true;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let (fib, curves) = solve_with_point(&pb, &mut rng, &mut StageTimings::default()).unwrap();
        assert_eq!(fib.degree(), 2);
        assert_eq!(curves.len(), 1);
        // x1 = x2^2 and x2 = x1 + 1 give x1^2 + x1 + 1 = 0.
        assert_eq!(fib.m, PolyRing::new(k.clone()).from_i64s(&[1, 1, 1]));
        assert!(verify(&k, &s, &fib).passed());
    }

    #[test]
    fn plans() {
        let s = spec(7, &["x2^2 - x1", "x2 - x1 - 1"]);
        let e = &s.epsilon;
        assert_eq!(field_plan(1 << 40, &s, 2, e), FieldPlan::Direct);
        assert_eq!(field_plan(7, &s, 2, e), FieldPlan::Outer(6));
        let pre = preprocessing_size(2, 2, 2, 2, e);
        assert!(matches!(
            field_plan(pre, &s, 2, e),
            FieldPlan::Direct | FieldPlan::Inner(_)
        ));
    }

    #[test]
    fn random_change_over_large_prime() {
        let k = PrimeField::new(1_000_000_007).unwrap();
        let s = spec(1_000_000_007, &["x2^2 - x1", "x2 - x1 - 1"]);
        let cfg = SolveConfig {
            check_curves: true,
            ..SolveConfig::default()
        };
        let sol = solve_finite(&k, &s, &cfg).unwrap();
        assert_eq!(sol.degree(), 2);
        assert!(matches!(sol, FiniteSolution::Base(_)));
    }

    #[test]
    fn small_field_goes_outer() {
        let k = PrimeField::new(10_007).unwrap();
        let s = spec(10_007, &["x2^2 - x1", "x2 - x1 - 1"]);
        let sol = solve_finite(&k, &s, &SolveConfig::default()).unwrap();
        assert_eq!(sol.degree(), 2);
        match sol {
            FiniteSolution::Extended { field, report, .. } => {
                assert!(verify(&field, &s, &report.fiber).passed())
            }
            FiniteSolution::Base(_) => panic!("10007 is below the sampling bound"),
        }
    }

    #[test]
    fn inconsistent_system_is_empty() {
        let k = PrimeField::new(1_000_000_007).unwrap();
        let s = spec(1_000_000_007, &["x1", "x1 - 1"]);
        assert_eq!(
            solve_finite(&k, &s, &SolveConfig::default()),
            Err(SolveError::EmptyVariety)
        );
    }

    #[test]
    fn single_linear_equation() {
        let k = PrimeField::new(1_000_000_007).unwrap();
        let s = SystemSpec::from_polys(
            1,
            "Fp:1000000007".parse().unwrap(),
            BigRational::new(1.into(), 100.into()),
            &["x1 - 5"],
            None,
        )
        .unwrap();
        let rep = solve_in(&k, &s, &SolveConfig::default()).unwrap();
        assert_eq!(rep.fiber.degree(), 1);
        // The root of m is lambda * 5.
        let root = k.neg(&rep.fiber.m.coeffs()[0]);
        assert_eq!(root, k.mul(&rep.fiber.lambda[0][0], &5));
    }

    #[test]
    fn three_quadrics_reach_bezout_degree() {
        let p = 1_000_000_007u64;
        let k = PrimeField::new(p).unwrap();
        let s = SystemSpec::from_polys(
            3,
            format!("Fp:{p}").parse().unwrap(),
            BigRational::new(1.into(), 100.into()),
            &[
                "3*x1^2 + 5*x1*x2 - 7*x3^2 + x2 - 11",
                "x1*x3 - 2*x2^2 + 13*x3 + 4*x1 - 1",
                "x2*x3 + x1^2 - 6*x2 + 9*x3 + 17",
            ],
            None,
        )
        .unwrap();
        let cfg = SolveConfig {
            check_curves: true,
            ..SolveConfig::default()
        };
        let sol = solve_finite(&k, &s, &cfg).unwrap();
        assert_eq!(sol.degree(), 8);
        assert_eq!(sol.stats().attempts, 1);
    }
}
