//! Straight-line programs.
//!
//! A program is a sequence of instructions; instruction `i` defines value `i`
//! from inputs, constants or earlier values. The polynomial system is one
//! program with several outputs, so shared subexpressions are evaluated once.

mod gradient;
mod parse;
mod system;
mod transform;

use num_bigint::BigInt;

use crate::ring::Ring;

pub use gradient::{gradient, jacobian_program};
pub use parse::{parse_polys, ParseError};
pub use system::{parse_epsilon, SystemSpec};
pub use transform::{compose_linear, specialize, SingularChange};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Instr {
    /// The `i`-th input variable.
    Input(usize),
    /// The `i`-th constant of the parameter table.
    Param(usize),
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
}

/// A straight-line program with constants of type `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct Slp<C = BigInt> {
    num_inputs: usize,
    params: Vec<C>,
    instrs: Vec<Instr>,
    outputs: Vec<usize>,
}

impl<C: Clone> Slp<C> {
    pub fn new(num_inputs: usize) -> Self {
        Slp {
            num_inputs,
            params: Vec::new(),
            instrs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn params(&self) -> &[C] {
        &self.params
    }

    pub fn instrs(&self) -> &[Instr] {
        &self.instrs
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    /// Number of arithmetic instructions.
    pub fn length(&self) -> usize {
        self.instrs
            .iter()
            .filter(|i| matches!(i, Instr::Add(..) | Instr::Sub(..) | Instr::Mul(..)))
            .count()
    }

    fn push(&mut self, ins: Instr) -> usize {
        if let Instr::Add(a, b) | Instr::Sub(a, b) | Instr::Mul(a, b) = ins {
            assert!(
                a < self.instrs.len() && b < self.instrs.len(),
                "operand out of range"
            );
        }
        self.instrs.push(ins);
        self.instrs.len() - 1
    }

    pub fn input(&mut self, i: usize) -> usize {
        assert!(i < self.num_inputs, "input index out of range");
        self.push(Instr::Input(i))
    }

    pub fn param(&mut self, c: C) -> usize {
        self.params.push(c);
        let idx = self.params.len() - 1;
        self.push(Instr::Param(idx))
    }

    pub fn add(&mut self, a: usize, b: usize) -> usize {
        self.push(Instr::Add(a, b))
    }

    pub fn sub(&mut self, a: usize, b: usize) -> usize {
        self.push(Instr::Sub(a, b))
    }

    pub fn mul(&mut self, a: usize, b: usize) -> usize {
        self.push(Instr::Mul(a, b))
    }

    pub fn push_output(&mut self, node: usize) {
        assert!(node < self.instrs.len());
        self.outputs.push(node);
    }

    pub fn set_outputs(&mut self, outputs: Vec<usize>) {
        assert!(outputs.iter().all(|&o| o < self.instrs.len()));
        self.outputs = outputs;
    }

    /// The same program restricted to the listed outputs.
    pub fn select_outputs(&self, which: &[usize]) -> Slp<C> {
        let mut out = self.clone();
        out.outputs = which.iter().map(|&i| self.outputs[i]).collect();
        out
    }

    pub fn map_params<D, G: Fn(&C) -> D>(&self, f: G) -> Slp<D> {
        Slp {
            num_inputs: self.num_inputs,
            params: self.params.iter().map(f).collect(),
            instrs: self.instrs.clone(),
            outputs: self.outputs.clone(),
        }
    }

    /// Values of every output at `inputs`, computed in `ring`. `embed` maps
    /// constants into the ring.
    pub fn evaluate<R: Ring, G>(&self, ring: &R, inputs: &[R::Elem], embed: G) -> Vec<R::Elem>
    where
        G: Fn(&C) -> R::Elem,
    {
        let params: Vec<R::Elem> = self.params.iter().map(&embed).collect();
        self.evaluate_with_params(ring, inputs, &params)
    }

    /// As [`Slp::evaluate`], with constants already mapped into the ring.
    pub fn evaluate_with_params<R: Ring>(
        &self,
        ring: &R,
        inputs: &[R::Elem],
        params: &[R::Elem],
    ) -> Vec<R::Elem> {
        assert_eq!(inputs.len(), self.num_inputs, "wrong number of inputs");
        let mut vals: Vec<R::Elem> = Vec::with_capacity(self.instrs.len());
        for ins in &self.instrs {
            let v = match *ins {
                Instr::Input(i) => inputs[i].clone(),
                Instr::Param(j) => params[j].clone(),
                Instr::Add(a, b) => ring.add(&vals[a], &vals[b]),
                Instr::Sub(a, b) => ring.sub(&vals[a], &vals[b]),
                Instr::Mul(a, b) => ring.mul(&vals[a], &vals[b]),
            };
            vals.push(v);
        }
        self.outputs.iter().map(|&o| vals[o].clone()).collect()
    }

    /// Upper bounds on the total degree of every output.
    pub fn degree_bounds(&self) -> Vec<usize> {
        let mut deg: Vec<usize> = Vec::with_capacity(self.instrs.len());
        for ins in &self.instrs {
            deg.push(match *ins {
                Instr::Input(_) => 1,
                Instr::Param(_) => 0,
                Instr::Add(a, b) | Instr::Sub(a, b) => deg[a].max(deg[b]),
                Instr::Mul(a, b) => deg[a] + deg[b],
            });
        }
        self.outputs.iter().map(|&o| deg[o]).collect()
    }
}

impl Slp<BigInt> {
    /// Evaluation with integer constants mapped through `Ring::from_int`.
    pub fn evaluate_int<R: Ring>(&self, ring: &R, inputs: &[R::Elem]) -> Vec<R::Elem> {
        self.evaluate(ring, inputs, |c| ring.from_int(c))
    }

    /// Largest bit length among the constants.
    pub fn max_param_bits(&self) -> u64 {
        self.params.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PrimeField;

    #[test]
    fn evaluate_simple() {
        let mut s = Slp::<BigInt>::new(2);
        let x = s.input(0);
        let y = s.input(1);
        let xy = s.mul(x, y);
        let one = s.param(BigInt::from(1));
        let out = s.sub(xy, one);
        s.push_output(out);
        let k = PrimeField::new(7).unwrap();
        assert_eq!(s.evaluate_int(&k, &[3, 5]), vec![0]);
        assert_eq!(s.length(), 2);
        assert_eq!(s.degree_bounds(), vec![2]);
    }
}
