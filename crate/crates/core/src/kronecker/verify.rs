use super::Fiber;
use crate::poly::{PolyRing, QuotientRing};
use crate::ring::{Field, Ring};
use crate::slp::{compose_linear, SystemSpec};

/// Outcome of [`verify`], one flag per check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    /// Shapes agree: `m` monic of degree at least one, `r - 1` parametrizations
    /// of degree below `deg m`, invertible change of variables.
    pub well_formed: bool,
    /// `disc(m) != 0`.
    pub squarefree: bool,
    /// `F_j` vanishes modulo `m` through the parametrization, per equation.
    pub equations: Vec<bool>,
    /// `G` through the parametrization is a unit modulo `m`.
    pub g_nonvanishing: bool,
    /// `w_i = m' v_i mod m`.
    pub numerators: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.well_formed
            && self.squarefree
            && self.equations.iter().all(|&e| e)
            && self.g_nonvanishing
            && self.numerators
    }

    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.well_formed {
            out.push("shape".to_string());
        }
        if !self.squarefree {
            out.push("squarefree".to_string());
        }
        for (j, ok) in self.equations.iter().enumerate() {
            if !ok {
                out.push(format!("F{}", j + 1));
            }
        }
        if !self.g_nonvanishing {
            out.push("G".to_string());
        }
        if !self.numerators {
            out.push("numerators".to_string());
        }
        out
    }
}

/// Checks a final fiber against the system it claims to describe.
pub fn verify<K: Field>(k: &K, spec: &SystemSpec, fiber: &Fiber<K>) -> VerifyReport {
    let n = spec.n;
    let r = spec.r();
    let kx = PolyRing::new(k.clone());
    let mut report = VerifyReport {
        well_formed: false,
        squarefree: false,
        equations: vec![false; r],
        g_nonvanishing: false,
        numerators: false,
    };
    let m = &fiber.m;
    let dm = m.len().saturating_sub(1);
    let shape_ok = fiber.n == n
        && fiber.level == r
        && dm >= 1
        && kx.is_monic(m)
        && fiber.point.len() + 1 == n
        && fiber.v.len() + 1 == r
        && fiber.v.iter().all(|v| v.len() <= dm)
        && fiber.lambda.len() == n;
    if !shape_ok {
        return report;
    }
    let Ok(program) = compose_linear(&spec.slp, k, &fiber.lambda) else {
        return report;
    };
    report.well_formed = true;
    report.squarefree = !k.is_zero(&kx.discriminant(m));

    let q = QuotientRing::new(k.clone(), m.clone());
    let mut inputs: Vec<_> = fiber.point[..n - r]
        .iter()
        .map(|c| q.constant(c.clone()))
        .collect();
    inputs.push(q.gen());
    inputs.extend(fiber.v.iter().cloned());
    let vals = program.evaluate(&q, &inputs, |c| q.constant(c.clone()));
    for j in 0..r {
        report.equations[j] = q.is_zero(&vals[j]);
    }
    report.g_nonvanishing = !k.is_zero(&kx.resultant(m, &vals[r]));
    let dmdt = kx.derivative(m);
    report.numerators = fiber.w.len() == fiber.v.len()
        && fiber
            .v
            .iter()
            .zip(&fiber.w)
            .all(|(v, w)| kx.rem(&kx.mul(&dmdt, v), m) == *w);
    report
}
