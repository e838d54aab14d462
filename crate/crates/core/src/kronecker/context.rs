use std::cell::Cell;
use std::time::Duration;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::config::{projection_size, scaled_by_inverse_epsilon};
use super::SolveError;
use crate::linalg::Matrix;
use crate::ring::{Field, Ring};
use crate::slp::{compose_linear, jacobian_program, Slp, SystemSpec};

/// A system rewritten in the coordinates `y = A x` over a working field,
/// with the lifting point and the sampling-set sizes of one run.
#[derive(Clone, Debug)]
pub struct Problem<K: Field> {
    pub k: K,
    pub n: usize,
    pub r: usize,
    pub has_g: bool,
    /// Outputs `F_1 .. F_r, G` in the `y` coordinates.
    pub program: Slp<K::Elem>,
    /// `program`'s `F` outputs followed by their `r * n` partial derivatives.
    pub jacobian: Slp<K::Elem>,
    /// Degree bounds of `F_1 .. F_r, G`.
    pub degrees: Vec<usize>,
    pub lambda: Matrix<K::Elem>,
    pub point: Vec<K::Elem>,
    pub delta_bound: u64,
    /// Sampling set for projection points and interpolation nodes.
    pub projection_set: u128,
    /// Sampling set for the shears of the shape lemma.
    pub shear_set: u128,
    /// Re-check every lifted curve.
    pub check_curves: bool,
    /// Time spent in [`project`](super::project), which runs inside the
    /// shape-lemma stage.
    pub(crate) projection_time: Cell<Duration>,
}

impl<K: Field> Problem<K> {
    pub fn new(
        k: &K,
        spec: &SystemSpec,
        lambda: Matrix<K::Elem>,
        point: Vec<K::Elem>,
        delta_bound: u64,
        epsilon: &BigRational,
    ) -> Result<Self, SolveError> {
        let n = spec.n;
        assert_eq!(point.len(), n - 1, "lifting point needs n - 1 coordinates");
        let program =
            compose_linear(&spec.slp, k, &lambda).map_err(|_| SolveError::SingularChange)?;
        let r = spec.r();
        let fs: Vec<usize> = (0..r).collect();
        let jacobian = jacobian_program(&program, &fs, k.zero(), k.one());
        let d = spec.max_degree();
        let shear = scaled_by_inverse_epsilon(
            &(num_bigint::BigUint::from(2u32) * num_bigint::BigUint::from(delta_bound).pow(4)),
            epsilon,
        );
        Ok(Problem {
            k: k.clone(),
            n,
            r,
            has_g: spec.has_g,
            program,
            jacobian,
            degrees: spec.degrees.clone(),
            lambda,
            point,
            delta_bound,
            projection_set: cap(k, projection_size(d, delta_bound, epsilon)),
            shear_set: cap(k, shear),
            check_curves: false,
            projection_time: Cell::new(Duration::ZERO),
        })
    }

    /// Index of the `G` output.
    pub fn g_index(&self) -> usize {
        self.r
    }

    /// Evaluates the system at `inputs` in any ring containing the field.
    pub fn evaluate<R: Ring, E>(&self, ring: &R, inputs: &[R::Elem], embed: E) -> Vec<R::Elem>
    where
        E: Fn(&K::Elem) -> R::Elem,
    {
        self.program.evaluate(ring, inputs, embed)
    }
}

/// Clamps a sampling-set size to the field cardinality.
pub(crate) fn cap<K: Field>(k: &K, n: u128) -> u128 {
    match k.cardinality().and_then(|c| c.to_u128()) {
        Some(c) => n.min(c).max(1),
        None => n.max(1),
    }
}

/// Draws a fresh element of `{0 .. size-1}` not in `used`.
pub(crate) fn draw_fresh<K: Field, R: rand::Rng + ?Sized>(
    k: &K,
    size: u128,
    used: &mut std::collections::HashSet<u128>,
    rng: &mut R,
) -> Option<K::Elem> {
    if used.len() as u128 >= size {
        return None;
    }
    loop {
        let i = if size <= 1 { 0 } else { rng.gen_range(0..size) };
        if used.insert(i) {
            return Some(k.element_from_index(i));
        }
    }
}
