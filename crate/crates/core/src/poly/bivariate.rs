//! Bivariate polynomials `k[X][T]`, stored as polynomials in `T` whose
//! coefficients are polynomials in `X`.

use super::{DuplicateNode, Poly, PolyRing};
use crate::ring::{Field, Ring};

pub type BivPoly<E> = Poly<Poly<E>>;

/// The ring `k[X][T]`.
pub fn biv_ring<R: Ring>(k: &R) -> PolyRing<PolyRing<R>> {
    PolyRing::new(PolyRing::new(k.clone()))
}

/// `M(x, T)` as a polynomial in `T`.
pub fn eval_x<R: Ring>(k: &R, m: &BivPoly<R::Elem>, x: &R::Elem) -> Poly<R::Elem> {
    let kx = PolyRing::new(k.clone());
    kx.from_coeffs(m.coeffs().iter().map(|c| kx.eval(c, x)).collect())
}

/// `M(x, t)`.
pub fn eval_point<R: Ring>(k: &R, m: &BivPoly<R::Elem>, x: &R::Elem, t: &R::Elem) -> R::Elem {
    PolyRing::new(k.clone()).eval(&eval_x(k, m, x), t)
}

/// `dM/dT`.
pub fn d_dt<R: Ring>(k: &R, m: &BivPoly<R::Elem>) -> BivPoly<R::Elem> {
    biv_ring(k).derivative(m)
}

/// Total degree (`-1` for zero).
pub fn total_degree<E>(m: &BivPoly<E>) -> isize {
    m.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| i as isize + c.deg())
        .max()
        .unwrap_or(-1)
}

/// Degree in `X` (`-1` for zero).
pub fn degree_x<E>(m: &BivPoly<E>) -> isize {
    m.coeffs().iter().map(|c| c.deg()).max().unwrap_or(-1)
}

/// `f(X + a T, T)`, one homogeneous component at a time: with
/// `H_e(X, T) = T^e h_e(X / T)`, the shear sends `h_e(u)` to `h_e(u + a)`.
pub fn shear<R: Ring>(k: &R, f: &BivPoly<R::Elem>, a: &R::Elem) -> BivPoly<R::Elem> {
    let kx = PolyRing::new(k.clone());
    let top = total_degree(f);
    if top < 0 {
        return Poly::zero();
    }
    let top = top as usize;
    let mut cols: Vec<Vec<R::Elem>> = vec![vec![k.zero(); top + 1]; top + 1];
    for e in 0..=top {
        // h_e(u) = sum_x c[x][e - x] u^x
        let h: Vec<R::Elem> = (0..=e)
            .map(|x| {
                f.get(e - x)
                    .and_then(|c| c.get(x))
                    .cloned()
                    .unwrap_or_else(|| k.zero())
            })
            .collect();
        let g = kx.taylor_shift(&kx.from_coeffs(h), a);
        for (x, c) in g.coeffs().iter().enumerate() {
            cols[e - x][x] = c.clone();
        }
    }
    biv_ring(k).from_coeffs(cols.into_iter().map(|c| kx.from_coeffs(c)).collect())
}

/// Recovers a bivariate polynomial of total degree `<= bound` from its values
/// along the Kronecker curve `(b, b^(bound+1))`.
///
/// `nodes` must hold at least `bound * (bound + 1) + 1` distinct elements;
/// `value(x, y)` must evaluate the target polynomial.
pub fn kronecker_interpolate<F: Field, V>(
    k: &F,
    bound: usize,
    nodes: &[F::Elem],
    mut value: V,
) -> Result<BivPoly<F::Elem>, DuplicateNode>
where
    V: FnMut(&F::Elem, &F::Elem) -> F::Elem,
{
    let need = bound * (bound + 1) + 1;
    assert!(nodes.len() >= need, "not enough interpolation nodes");
    let nodes = &nodes[..need];
    let stride = bound as u64 + 1;
    let values: Vec<F::Elem> = nodes.iter().map(|b| value(b, &k.pow(b, stride))).collect();
    let kx = PolyRing::new(k.clone());
    let packed = kx.interpolate(nodes, &values)?;
    let mut cols: Vec<Vec<F::Elem>> = vec![Vec::new(); bound + 1];
    for (idx, c) in packed.coeffs().iter().enumerate() {
        let (t_deg, x_deg) = (idx / (bound + 1), idx % (bound + 1));
        let col = &mut cols[t_deg];
        if col.len() <= x_deg {
            col.resize(x_deg + 1, k.zero());
        }
        col[x_deg] = c.clone();
    }
    let kxt = biv_ring(k);
    Ok(kxt.from_coeffs(cols.into_iter().map(|c| kx.from_coeffs(c)).collect()))
}
