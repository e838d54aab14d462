use super::{Fiber, Problem, SolveError};
use crate::poly::PolyRing;
use crate::ring::Field;

/// The fiber of `F_1` over the lifting point: `y_1 .. y_{n-1}` fixed, and
/// the minimal polynomial of `y_n` with the zeros of `G` removed.
pub fn initial_fiber<K: Field>(pb: &Problem<K>) -> Result<Fiber<K>, SolveError> {
    let k = &pb.k;
    let kt = PolyRing::new(k.clone());
    let mut inputs: Vec<_> = pb.point.iter().map(|c| kt.constant(c.clone())).collect();
    inputs.push(kt.var());
    let vals = pb.evaluate(&kt, &inputs, |c| kt.constant(c.clone()));
    let f1 = &vals[0];
    if f1.is_zero() {
        return Err(SolveError::DegenerateFiber("zero"));
    }
    let g = &vals[pb.g_index()];
    let mut m = kt.squarefree_part(f1);
    if !g.is_zero() {
        let c = kt.gcd(&m, g);
        m = kt.quo(&m, &c);
    }
    let m = kt.monic(&m);
    if m.len() < 2 {
        return Err(SolveError::DegenerateFiber("constant"));
    }
    if (m.len() - 1) as u64 > pb.delta_bound {
        return Err(SolveError::DegreeBoundExceeded {
            degree: (m.len() - 1) as u64,
            bound: pb.delta_bound,
        });
    }
    Ok(Fiber {
        level: 1,
        n: pb.n,
        lambda: pb.lambda.clone(),
        point: pb.point.clone(),
        m,
        v: Vec::new(),
        w: Vec::new(),
    })
}
