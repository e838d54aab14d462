//! Kronecker representations of the solutions of `F_1 = ... = F_r = 0,
//! G != 0` by incremental lifting and intersection.
//!
//! After a random linear change of coordinates `y = A x` and a random point
//! `p`, the `s`-th fiber is the set of solutions of `F_1 .. F_s` with
//! `y_1 .. y_{n-s}` fixed to `p_1 .. p_{n-s}`. It is described by the minimal
//! polynomial `m` of `y_{n-s+1}` and parametrizations `y_j = v_j(y_{n-s+1})`.
//! One step frees `y_{n-s}` (Newton lifting to a curve), intersects the curve
//! with `F_{s+1} = 0` (projection), and reads off the next fiber.

mod conclude;
mod config;
mod context;
mod fiber;
mod lift;
mod project;
mod shape;
mod solve;
mod verify;

use std::time::Duration;

use crate::linalg::Matrix;
use crate::poly::bivariate::BivPoly;
use crate::poly::Poly;
use crate::ring::Field;

pub use conclude::{conclude_fiber, finalize};
pub use config::{
    extension_degree, inner_size, preprocessing_size, projection_size, SolveConfig, DEFAULT_SEED,
};
pub use context::Problem;
pub use fiber::initial_fiber;
pub use lift::{check_curve, curve_from_rows, newton_lift, newton_lift_series, SeriesCurve};
pub use project::{project, Chart};
pub use shape::{minpoly_candidate, next_minpoly, next_minpoly_with, NextFiber};
pub use solve::{
    field_plan, sample_change, solve_finite, solve_in, solve_with_point, FieldPlan, FiniteSolution,
    SolveReport,
};
pub use verify::{verify, VerifyReport};

pub(crate) use config::scaled_by_inverse_epsilon;
pub(crate) use solve::{attempt, attempt_inner, drive};

/// Minimal polynomial and parametrization of one fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct Fiber<F: Field> {
    /// `s`: number of equations taken into account.
    pub level: usize,
    pub n: usize,
    /// Change of coordinates `y = A x`.
    pub lambda: Matrix<F::Elem>,
    /// Lifting point, `n - 1` coordinates.
    pub point: Vec<F::Elem>,
    /// Minimal polynomial of `y_{n-s+1}` on the fiber.
    pub m: Poly<F::Elem>,
    /// `y_{n-s+1+i} = v[i](y_{n-s+1})`.
    pub v: Vec<Poly<F::Elem>>,
    /// `w[i] = m' v[i] mod m`; filled in for the final fiber.
    pub w: Vec<Poly<F::Elem>>,
}

impl<F: Field> Fiber<F> {
    pub fn degree(&self) -> usize {
        self.m.len().saturating_sub(1)
    }

    /// Index (from zero) of the coordinate whose minimal polynomial is `m`.
    pub fn primitive_index(&self) -> usize {
        self.n - self.level
    }
}

/// The lifted curve of level `s`: `y_{n-s}` is free (written `X`), and
/// `M(X, T)` is the minimal polynomial of `T = y_{n-s+1}` over `k(X)`.
/// The other coordinates are `y_{n-s+1+i} = W[i](X, T) / M_T(X, T)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveRep<F: Field> {
    pub level: usize,
    pub m: BivPoly<F::Elem>,
    pub w: Vec<BivPoly<F::Elem>>,
}

/// Wall-clock time per stage, accumulated over all attempts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StageTimings {
    pub initial: Duration,
    pub lift: Duration,
    pub project: Duration,
    pub shape: Duration,
    pub conclude: Duration,
}

impl StageTimings {
    pub fn total(&self) -> Duration {
        self.initial + self.lift + self.project + self.shape + self.conclude
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub attempts: u32,
    pub timings: StageTimings,
    /// Degree of the working field over the input field.
    pub extension_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("degenerate initial fiber ({0})")]
    DegenerateFiber(&'static str),
    #[error("jacobian not invertible modulo the fiber at level {level}")]
    JacobianNonInvertible { level: usize },
    #[error("ran out of lucky evaluation points")]
    UnluckyEvaluationPoint,
    #[error("projection vanishes identically")]
    ZeroConstantTerm,
    #[error("projection failed its consistency check")]
    ProjectionCheck,
    #[error("{0}")]
    ShapeViolation(String),
    #[error("fiber degree collapsed to zero at level {level}")]
    DegreeCollapse { level: usize },
    #[error("fiber degree {degree} exceeds the bound {bound}")]
    DegreeBoundExceeded { degree: u64, bound: u64 },
    #[error("tangent not invertible on the new fiber")]
    NotInvertible,
    #[error("result does not descend to the input field")]
    CoercionFailed,
    #[error("random change of variables is singular")]
    SingularChange,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("field of size {available} is too small (need {requested})")]
    FieldTooSmall { requested: u128, available: u128 },
    #[error("no lucky run after {attempts} attempts; last failure: {last}")]
    RetriesExhausted {
        attempts: u32,
        last: Box<SolveError>,
    },
    #[error("the system has no solutions")]
    EmptyVariety,
    #[error("no reconstruction within the height budget")]
    NoReconstruction,
    #[error("{0}")]
    Unsupported(String),
}

impl SolveError {
    /// Failures caused by unlucky random choices; a fresh draw may succeed.
    pub fn is_unlucky(&self) -> bool {
        !matches!(
            self,
            SolveError::FieldTooSmall { .. }
                | SolveError::RetriesExhausted { .. }
                | SolveError::EmptyVariety
                | SolveError::Unsupported(_)
                | SolveError::DegreeBoundExceeded { .. }
        )
    }

    /// Failures that hint at an empty solution set.
    pub fn suggests_empty(&self) -> bool {
        matches!(
            self,
            SolveError::DegenerateFiber("constant") | SolveError::DegreeCollapse { .. }
        )
    }
}

impl From<crate::error::ArithError> for SolveError {
    fn from(e: crate::error::ArithError) -> Self {
        match e {
            crate::error::ArithError::FieldTooSmall { requested } => SolveError::FieldTooSmall {
                requested,
                available: 0,
            },
            other => SolveError::Unsupported(other.to_string()),
        }
    }
}
