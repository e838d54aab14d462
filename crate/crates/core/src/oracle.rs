//! Brute-force references for small finite fields: every zero by
//! enumeration, the fiber over a point, and the minimal polynomial of a
//! linear form on a finite point set.

use num_bigint::BigUint;

use crate::kronecker::Fiber;
use crate::linalg::{inverse, mat_vec, Matrix};
use crate::poly::{Poly, PolyRing};
use crate::ring::{find_root, FiniteField, Ring, RingDescriptor};
use crate::slp::SystemSpec;

/// Largest number of points [`brute_zeros`] will enumerate.
pub const ENUMERATION_LIMIT: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("enumerating {size} points exceeds the limit of {limit}")]
    TooLarge { size: u128, limit: u128 },
}

/// Distinct points of `K^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet<E> {
    pub field: RingDescriptor,
    pub points: Vec<Vec<E>>,
}

impl<E> PointSet<E> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// All `x` in `K^n` with `F_1(x) = ... = F_r(x) = 0` and `G(x) != 0`, in
/// lexicographic order of element indices.
pub fn brute_zeros<K: FiniteField>(
    k: &K,
    spec: &SystemSpec,
) -> Result<PointSet<K::Elem>, OracleError> {
    let n = spec.n;
    let q = k.size();
    let size = (0..n)
        .try_fold(1u128, |acc, _| acc.checked_mul(q))
        .unwrap_or(u128::MAX);
    if size > ENUMERATION_LIMIT {
        return Err(OracleError::TooLarge {
            size,
            limit: ENUMERATION_LIMIT,
        });
    }
    let r = spec.slp.num_outputs() - 1;
    let elems: Vec<K::Elem> = (0..q).map(|i| k.element_from_index(i)).collect();
    let params: Vec<K::Elem> = spec.slp.params().iter().map(|c| k.from_int(c)).collect();
    let mut idx = vec![0usize; n];
    let mut points = Vec::new();
    for _ in 0..size {
        let x: Vec<K::Elem> = idx.iter().map(|&i| elems[i].clone()).collect();
        let vals = spec.slp.evaluate_with_params(k, &x, &params);
        if vals[..r].iter().all(|v| k.is_zero(v)) && !k.is_zero(&vals[r]) {
            points.push(x);
        }
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < elems.len() {
                break;
            }
            *slot = 0;
        }
    }
    Ok(PointSet {
        field: k.descriptor(),
        points,
    })
}

fn dot<K: FiniteField>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> K::Elem {
    a.iter()
        .zip(b)
        .fold(k.zero(), |acc, (x, y)| k.add(&acc, &k.mul(x, y)))
}

/// The points whose first `n - r` coordinates after `y = A x` equal `point`.
pub fn fiber_points<K: FiniteField>(
    k: &K,
    zeros: &PointSet<K::Elem>,
    lambda: &Matrix<K::Elem>,
    point: &[K::Elem],
) -> PointSet<K::Elem> {
    let points = zeros
        .points
        .iter()
        .filter(|x| {
            point
                .iter()
                .zip(lambda)
                .all(|(p, row)| dot(k, row, x) == *p)
        })
        .cloned()
        .collect();
    PointSet {
        field: zeros.field.clone(),
        points,
    }
}

/// `prod (T - l(x))` over the distinct values of the linear form `l` on the
/// points.
pub fn minpoly_of_form<K: FiniteField>(
    k: &K,
    points: &PointSet<K::Elem>,
    form: &[K::Elem],
) -> Poly<K::Elem> {
    let mut values: Vec<K::Elem> = Vec::new();
    for x in &points.points {
        let v = dot(k, form, x);
        if !values.contains(&v) {
            values.push(v);
        }
    }
    PolyRing::new(k.clone()).from_roots(&values)
}

/// The product of the linear factors of a squarefree `m`: `gcd(m, T^q - T)`.
pub fn split_part<K: FiniteField>(k: &K, m: &Poly<K::Elem>) -> Poly<K::Elem> {
    let kt = PolyRing::new(k.clone());
    if m.len() < 2 {
        return kt.monic(m);
    }
    let t = kt.var();
    let tq = kt.powmod(&t, &BigUint::from(k.size()), m);
    kt.monic(&kt.gcd(m, &kt.sub(&tq, &t)))
}

/// The points of a fiber with coordinates in `k`, in the original
/// coordinates: one per root of `m` in `k`.
pub fn rational_points<K: FiniteField, R: rand::Rng + ?Sized>(
    k: &K,
    fiber: &Fiber<K>,
    rng: &mut R,
) -> Option<PointSet<K::Elem>> {
    let kt = PolyRing::new(k.clone());
    let inv = inverse(k, &fiber.lambda)?;
    let fixed = fiber.n - fiber.level;
    let mut rest = split_part(k, &fiber.m);
    let mut points = Vec::new();
    while rest.len() >= 2 {
        let t = find_root(k, &rest, rng)?;
        rest = kt.quo(&rest, &kt.linear_root(&t));
        let mut y = fiber.point[..fixed].to_vec();
        y.push(t.clone());
        y.extend(fiber.v.iter().map(|v| kt.eval(v, &t)));
        points.push(mat_vec(k, &inv, &y));
    }
    Some(PointSet {
        field: k.descriptor(),
        points,
    })
}

/// Equality of point sets up to order.
pub fn same_points<E: PartialEq>(a: &PointSet<E>, b: &PointSet<E>) -> bool {
    a.len() == b.len()
        && a.points.iter().all(|x| b.points.contains(x))
        && b.points.iter().all(|x| a.points.contains(x))
}
