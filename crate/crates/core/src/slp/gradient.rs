//! Reverse-mode differentiation of straight-line programs.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Instr, Slp};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Adj {
    Zero,
    One,
    Node(usize),
}

struct Builder<C> {
    slp: Slp<C>,
    zero: C,
    one: C,
    zero_node: Option<usize>,
    one_node: Option<usize>,
}

impl<C: Clone> Builder<C> {
    fn node(&mut self, a: Adj) -> usize {
        match a {
            Adj::Node(i) => i,
            Adj::One => match self.one_node {
                Some(i) => i,
                None => {
                    let i = self.slp.param(self.one.clone());
                    self.one_node = Some(i);
                    i
                }
            },
            Adj::Zero => match self.zero_node {
                Some(i) => i,
                None => {
                    let i = self.slp.param(self.zero.clone());
                    self.zero_node = Some(i);
                    i
                }
            },
        }
    }

    /// `target += c` (or `-= c`), emitting at most one instruction.
    fn accumulate(&mut self, target: Adj, c: Adj, negate: bool) -> Adj {
        if c == Adj::Zero {
            return target;
        }
        match (target, negate) {
            (Adj::Zero, false) => c,
            (Adj::Zero, true) => {
                let z = self.node(Adj::Zero);
                let cn = self.node(c);
                Adj::Node(self.slp.sub(z, cn))
            }
            (t, false) => {
                let tn = self.node(t);
                let cn = self.node(c);
                Adj::Node(self.slp.add(tn, cn))
            }
            (t, true) => {
                let tn = self.node(t);
                let cn = self.node(c);
                Adj::Node(self.slp.sub(tn, cn))
            }
        }
    }

    /// `a * (value of forward node v)`.
    fn times(&mut self, a: Adj, v: usize) -> Adj {
        match a {
            Adj::Zero => Adj::Zero,
            Adj::One => Adj::Node(v),
            Adj::Node(i) => Adj::Node(self.slp.mul(i, v)),
        }
    }
}

/// A program whose outputs are the selected outputs of `slp` followed, for
/// each of them in turn, by its partial derivatives with respect to every
/// input.
///
/// The forward pass is shared; each reverse pass adds at most four
/// instructions per forward instruction, so a single gradient has length at
/// most `5 L`.
pub fn jacobian_program<C: Clone>(slp: &Slp<C>, outputs: &[usize], zero: C, one: C) -> Slp<C> {
    let forward = slp.instrs().len();
    let mut b = Builder {
        slp: slp.clone(),
        zero,
        one,
        zero_node: None,
        one_node: None,
    };
    let mut outs: Vec<usize> = outputs.iter().map(|&o| slp.outputs()[o]).collect();
    for &o in outputs {
        let mut adj = vec![Adj::Zero; forward];
        adj[slp.outputs()[o]] = Adj::One;
        let mut input_adj = vec![Adj::Zero; slp.num_inputs()];
        for i in (0..forward).rev() {
            let a = adj[i];
            if a == Adj::Zero {
                continue;
            }
            match slp.instrs()[i] {
                Instr::Input(v) => input_adj[v] = b.accumulate(input_adj[v], a, false),
                Instr::Param(_) => {}
                Instr::Add(x, y) => {
                    adj[x] = b.accumulate(adj[x], a, false);
                    adj[y] = b.accumulate(adj[y], a, false);
                }
                Instr::Sub(x, y) => {
                    adj[x] = b.accumulate(adj[x], a, false);
                    adj[y] = b.accumulate(adj[y], a, true);
                }
                Instr::Mul(x, y) => {
                    let cx = b.times(a, y);
                    adj[x] = b.accumulate(adj[x], cx, false);
                    let cy = b.times(a, x);
                    adj[y] = b.accumulate(adj[y], cy, false);
                }
            }
        }
        for a in input_adj {
            let n = b.node(a);
            outs.push(n);
        }
    }
    b.slp.set_outputs(outs);
    b.slp
}

/// The gradient of output `output` of an integer program: a program with one
/// output per input variable.
pub fn gradient(slp: &Slp<BigInt>, output: usize) -> Slp<BigInt> {
    let jp = jacobian_program(slp, &[output], BigInt::zero(), BigInt::one());
    let n = slp.num_inputs();
    jp.select_outputs(&(1..=n).collect::<Vec<_>>())
}
