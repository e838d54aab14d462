use num_bigint::BigInt;

use super::{Instr, Slp};
use crate::linalg::{inverse, Matrix};
use crate::ring::Field;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("the linear change of variables is singular")]
pub struct SingularChange;

/// Rewrites `slp` in the coordinates `y = A x`: the result computes
/// `F(A^{-1} y)`. Constants are mapped into `k`.
pub fn compose_linear<F: Field>(
    slp: &Slp<BigInt>,
    k: &F,
    a: &Matrix<F::Elem>,
) -> Result<Slp<F::Elem>, SingularChange> {
    let n = slp.num_inputs();
    assert_eq!(a.len(), n);
    let inv = inverse(k, a).ok_or(SingularChange)?;
    let mut out: Slp<F::Elem> = Slp::new(n);
    let ys: Vec<usize> = (0..n).map(|j| out.input(j)).collect();
    let mut zero_node = None;
    // x_i = sum_j inv[i][j] y_j
    let mut xs = Vec::with_capacity(n);
    for row in &inv {
        let mut acc: Option<usize> = None;
        for (j, c) in row.iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            let term = if k.is_one(c) {
                ys[j]
            } else {
                let cn = out.param(c.clone());
                out.mul(cn, ys[j])
            };
            acc = Some(match acc {
                None => term,
                Some(s) => out.add(s, term),
            });
        }
        xs.push(match acc {
            Some(s) => s,
            None => *zero_node.get_or_insert_with(|| out.param(k.zero())),
        });
    }
    let offset = out.params().len();
    let mut map = Vec::with_capacity(slp.instrs().len());
    for c in slp.params() {
        out.params.push(k.from_int(c));
    }
    for ins in slp.instrs() {
        let idx = match *ins {
            Instr::Input(i) => xs[i],
            Instr::Param(j) => out.push(Instr::Param(offset + j)),
            Instr::Add(a, b) => out.add(map[a], map[b]),
            Instr::Sub(a, b) => out.sub(map[a], map[b]),
            Instr::Mul(a, b) => out.mul(map[a], map[b]),
        };
        map.push(idx);
    }
    out.set_outputs(slp.outputs().iter().map(|&o| map[o]).collect());
    Ok(out)
}

/// Fixes the first `values.len()` inputs to the given constants; the result
/// has the remaining inputs, renumbered from zero.
pub fn specialize<C: Clone>(slp: &Slp<C>, values: &[C]) -> Slp<C> {
    let k = values.len();
    assert!(k <= slp.num_inputs());
    let mut out: Slp<C> = Slp::new(slp.num_inputs() - k);
    out.params = slp.params().to_vec();
    let mut fixed = Vec::with_capacity(k);
    for v in values {
        out.params.push(v.clone());
        fixed.push(out.params.len() - 1);
    }
    for ins in slp.instrs() {
        let mapped = match *ins {
            Instr::Input(i) if i < k => Instr::Param(fixed[i]),
            Instr::Input(i) => Instr::Input(i - k),
            other => other,
        };
        out.instrs.push(mapped);
    }
    out.outputs = slp.outputs().to_vec();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::mat_vec;
    use crate::ring::{PrimeField, Ring};
    use crate::slp::parse_polys;

    #[test]
    fn composition_undoes_change() {
        let k = PrimeField::new(10_007).unwrap();
        let (s, _) = parse_polys(&[(1, "x1^2 + 3*x2 - x1*x2"), (2, "x2 - 5")], 2).unwrap();
        let a = vec![vec![2, 3], vec![1, 7]];
        let c = compose_linear(&s, &k, &a).unwrap();
        assert_eq!(c.length(), s.length() + 2 * 2 + 2);
        let x = vec![11u64, 42];
        let y = mat_vec(&k, &a, &x);
        assert_eq!(c.evaluate(&k, &y, |v| *v), s.evaluate_int(&k, &x));
        assert!(compose_linear(&s, &k, &vec![vec![1, 2], vec![2, 4]]).is_err());
    }

    #[test]
    fn specialization_fixes_prefix() {
        let k = PrimeField::new(101).unwrap();
        let (s, _) = parse_polys(&[(1, "x1*x2 + x3")], 3).unwrap();
        let sp = specialize(&s, &[BigInt::from(4)]);
        assert_eq!(sp.num_inputs(), 2);
        assert_eq!(sp.evaluate_int(&k, &[5, 6]), vec![k.from_i64(26)]);
    }
}
