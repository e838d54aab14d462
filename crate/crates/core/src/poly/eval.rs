use super::{Poly, PolyRing};
use crate::ring::{Field, Ring};

/// Below this many points, evaluation and interpolation are quadratic.
const TREE_CUTOFF: usize = 24;

/// Two interpolation nodes coincide.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("interpolation nodes {first} and {second} coincide")]
pub struct DuplicateNode {
    pub first: usize,
    pub second: usize,
}

impl<R: Ring> PolyRing<R> {
    /// Levels of the subproduct tree, leaves first.
    fn subproduct_tree(&self, points: &[R::Elem]) -> Vec<Vec<Poly<R::Elem>>> {
        let mut levels = vec![points
            .iter()
            .map(|a| self.linear_root(a))
            .collect::<Vec<_>>()];
        while levels.last().unwrap().len() > 1 {
            let prev = levels.last().unwrap();
            let next = prev
                .chunks(2)
                .map(|c| {
                    if c.len() == 2 {
                        self.mul(&c[0], &c[1])
                    } else {
                        c[0].clone()
                    }
                })
                .collect();
            levels.push(next);
        }
        levels
    }

    /// Values of `f` at every point.
    pub fn multipoint_eval(&self, f: &Poly<R::Elem>, points: &[R::Elem]) -> Vec<R::Elem> {
        if points.len() <= TREE_CUTOFF {
            return points.iter().map(|x| self.eval(f, x)).collect();
        }
        let tree = self.subproduct_tree(points);
        let mut rems = vec![self.rem_monic(f, &tree.last().unwrap()[0])];
        for level in tree.iter().rev().skip(1) {
            let mut next = Vec::with_capacity(level.len());
            for (i, node) in level.iter().enumerate() {
                next.push(self.rem_monic(&rems[i / 2], node));
            }
            rems = next;
        }
        rems.into_iter().map(|r| self.coeff(&r, 0)).collect()
    }
}

impl<F: Field> PolyRing<F> {
    /// The unique polynomial of degree `< points.len()` taking `values[i]` at
    /// `points[i]`.
    pub fn interpolate(
        &self,
        points: &[F::Elem],
        values: &[F::Elem],
    ) -> Result<Poly<F::Elem>, DuplicateNode> {
        assert_eq!(points.len(), values.len());
        if points.is_empty() {
            return Ok(Poly::zero());
        }
        if points.len() <= TREE_CUTOFF {
            return self.interpolate_newton(points, values);
        }
        let k = self.base();
        let tree = self.subproduct_tree(points);
        let root = &tree.last().unwrap()[0];
        let weights = self.multipoint_eval(&self.derivative(root), points);
        let mut level: Vec<Poly<F::Elem>> = Vec::with_capacity(points.len());
        for (i, w) in weights.iter().enumerate() {
            let inv = match k.inv(w) {
                Ok(inv) => inv,
                Err(_) => return Err(self.find_duplicate(points, i)),
            };
            level.push(self.constant(k.mul(&values[i], &inv)));
        }
        for depth in 0..tree.len() - 1 {
            let nodes = &tree[depth];
            let mut next = Vec::with_capacity(level.len().div_ceil(2));
            for (pair, node_pair) in level.chunks(2).zip(nodes.chunks(2)) {
                if pair.len() == 2 {
                    next.push(self.add(
                        &self.mul(&pair[0], &node_pair[1]),
                        &self.mul(&pair[1], &node_pair[0]),
                    ));
                } else {
                    next.push(pair[0].clone());
                }
            }
            level = next;
        }
        Ok(level.pop().unwrap())
    }

    fn find_duplicate(&self, points: &[F::Elem], hint: usize) -> DuplicateNode {
        for j in 0..points.len() {
            if j != hint && points[j] == points[hint] {
                let (first, second) = if j < hint { (j, hint) } else { (hint, j) };
                return DuplicateNode { first, second };
            }
        }
        DuplicateNode {
            first: hint,
            second: hint,
        }
    }

    fn interpolate_newton(
        &self,
        points: &[F::Elem],
        values: &[F::Elem],
    ) -> Result<Poly<F::Elem>, DuplicateNode> {
        let k = self.base();
        let n = points.len();
        let mut dd = values.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let den = k.sub(&points[i], &points[i - level]);
                let inv = k.inv(&den).map_err(|_| DuplicateNode {
                    first: i - level,
                    second: i,
                })?;
                dd[i] = k.mul(&k.sub(&dd[i], &dd[i - 1]), &inv);
            }
        }
        let mut acc = self.constant(dd[n - 1].clone());
        for i in (0..n - 1).rev() {
            acc = self.add(
                &self.mul(&acc, &self.linear_root(&points[i])),
                &self.constant(dd[i].clone()),
            );
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PrimeField;
    use proptest::prelude::*;

    #[test]
    fn duplicate_nodes_are_reported() {
        let r = PolyRing::new(PrimeField::new(101).unwrap());
        let err = r.interpolate(&[1, 2, 1], &[0, 0, 0]).unwrap_err();
        assert_eq!((err.first, err.second), (0, 2));
        let mut pts: Vec<u64> = (0..40).collect();
        pts[33] = 5;
        let vals = vec![1; 40];
        let err = r.interpolate(&pts, &vals).unwrap_err();
        assert_eq!((err.first, err.second), (5, 33));
    }

    proptest! {
        #[test]
        fn interpolation_inverts_evaluation(
            coeffs in proptest::collection::vec(0u64..1_000_003, 0..70),
            seed in 0u64..1000,
        ) {
            let r = PolyRing::new(PrimeField::new(1_000_003).unwrap());
            let f = r.from_coeffs(coeffs);
            let n = f.len().max(1) + (seed % 3) as usize;
            let pts: Vec<u64> = (0..n as u64).map(|i| (i * 7919 + seed) % 1_000_003).collect();
            let vals = r.multipoint_eval(&f, &pts);
            for (x, v) in pts.iter().zip(&vals) {
                prop_assert_eq!(r.eval(&f, x), *v);
            }
            prop_assert_eq!(r.interpolate(&pts, &vals).unwrap(), f);
        }
    }
}
