//! Dense univariate polynomials over any [`Ring`].

pub mod bivariate;
mod eval;
mod gcd;
mod quotient;
mod series;
mod squarefree;

use std::fmt;

use num_bigint::BigInt;

use crate::ring::{Field, Ring};

pub use eval::DuplicateNode;
pub use gcd::NotCoprime;
pub use quotient::QuotientRing;
pub use series::SeriesRing;

/// Outer length from which nested products are packed into one.
const PACK_CUTOFF: usize = 4;

/// Degree above which multiplication switches to Karatsuba.
pub const KARATSUBA_CUTOFF: usize = 32;

/// Coefficient vector, lowest degree first, without trailing zeros.
///
/// Only a [`PolyRing`] can build a `Poly` from raw coefficients, so the
/// no-trailing-zero invariant holds everywhere.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with `-1` for zero.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn get(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

impl<E: fmt::Debug> fmt::Debug for Poly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c:?}")?,
                1 => write!(f, "{c:?}*T")?,
                _ => write!(f, "{c:?}*T^{i}")?,
            }
        }
        Ok(())
    }
}

/// The polynomial ring `R[T]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<R: Ring> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> Poly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_slice(&self, coeffs: &[R::Elem]) -> Poly<R::Elem> {
        self.from_coeffs(coeffs.to_vec())
    }

    pub fn from_i64s(&self, coeffs: &[i64]) -> Poly<R::Elem> {
        self.from_coeffs(coeffs.iter().map(|&c| self.base.from_i64(c)).collect())
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    /// `c * T^k`.
    pub fn monomial(&self, c: R::Elem, k: usize) -> Poly<R::Elem> {
        if self.base.is_zero(&c) {
            return Poly::zero();
        }
        let mut v = vec![self.base.zero(); k + 1];
        v[k] = c;
        Poly { coeffs: v }
    }

    /// The indeterminate `T`.
    pub fn var(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    /// `T - a`.
    pub fn linear_root(&self, a: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![self.base.neg(a), self.base.one()])
    }

    pub fn coeff(&self, f: &Poly<R::Elem>, i: usize) -> R::Elem {
        f.coeffs.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn lc(&self, f: &Poly<R::Elem>) -> R::Elem {
        f.coeffs.last().cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn is_monic(&self, f: &Poly<R::Elem>) -> bool {
        f.coeffs.last().is_some_and(|c| self.base.is_one(c))
    }

    pub fn map<S: Ring, G>(&self, target: &PolyRing<S>, f: &Poly<R::Elem>, g: G) -> Poly<S::Elem>
    where
        G: Fn(&R::Elem) -> S::Elem,
    {
        target.from_coeffs(f.coeffs.iter().map(g).collect())
    }

    pub fn scale(&self, f: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(f.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    /// `f * T^k`.
    pub fn shift(&self, f: &Poly<R::Elem>, k: usize) -> Poly<R::Elem> {
        if f.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![self.base.zero(); k];
        v.extend(f.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// `f mod T^n`.
    pub fn truncate(&self, f: &Poly<R::Elem>, n: usize) -> Poly<R::Elem> {
        self.from_slice(&f.coeffs[..n.min(f.len())])
    }

    pub fn derivative(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.from_coeffs(
            f.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.base.mul(c, &self.base.from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, f: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
        let mut acc = self.base.zero();
        for c in f.coeffs.iter().rev() {
            acc = self.base.add(&self.base.mul(&acc, x), c);
        }
        acc
    }

    /// Horner evaluation at an element of an `R`-algebra.
    pub fn eval_in<A: Ring, G>(&self, f: &Poly<R::Elem>, alg: &A, x: &A::Elem, embed: G) -> A::Elem
    where
        G: Fn(&R::Elem) -> A::Elem,
    {
        let mut acc = alg.zero();
        for c in f.coeffs.iter().rev() {
            acc = alg.add(&alg.mul(&acc, x), &embed(c));
        }
        acc
    }

    /// `f(g)`.
    pub fn compose(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        let mut acc = Poly::zero();
        for c in f.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, g), &self.constant(c.clone()));
        }
        acc
    }

    /// `f(T + a)`.
    pub fn taylor_shift(&self, f: &Poly<R::Elem>, a: &R::Elem) -> Poly<R::Elem> {
        let mut c = f.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = self.base.mul(&c[j + 1], a);
                c[j] = self.base.add(&c[j], &t);
            }
        }
        self.from_coeffs(c)
    }

    fn add_slices(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.to_vec();
        for (o, s) in out.iter_mut().zip(short) {
            *o = self.base.add(o, s);
        }
        out
    }

    fn schoolbook(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.base.mul(x, y);
                out[i + j] = self.base.add(&out[i + j], &t);
            }
        }
        out
    }

    fn karatsuba(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        if let Some(v) = self.base.mul_coeffs(a, b) {
            return v;
        }
        if a.len().min(b.len()) <= KARATSUBA_CUTOFF {
            return self.schoolbook(a, b);
        }
        let h = a.len().max(b.len()) / 2;
        let (a0, a1) = a.split_at(h.min(a.len()));
        let (b0, b1) = b.split_at(h.min(b.len()));
        let z0 = self.karatsuba(a0, b0);
        let z2 = self.karatsuba(a1, b1);
        let sa = self.add_slices(a0, a1);
        let sb = self.add_slices(b0, b1);
        let mut z1 = self.karatsuba(&sa, &sb);
        for (i, c) in z0.iter().enumerate() {
            z1[i] = self.base.sub(&z1[i], c);
        }
        for (i, c) in z2.iter().enumerate() {
            z1[i] = self.base.sub(&z1[i], c);
        }
        let mut out = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, c) in z0.into_iter().enumerate() {
            out[i] = c;
        }
        for (i, c) in z1.iter().enumerate() {
            if i + h < out.len() {
                out[i + h] = self.base.add(&out[i + h], c);
            }
        }
        for (i, c) in z2.iter().enumerate() {
            out[i + 2 * h] = self.base.add(&out[i + 2 * h], c);
        }
        out
    }

    /// Product of polynomials whose coefficients are polynomials over `R`,
    /// as one product in `R[Z]` after substituting `Z^stride` for the outer
    /// variable. Coefficients come back untrimmed; `None` for short inputs.
    pub(crate) fn packed_mul(
        &self,
        a: &[Poly<R::Elem>],
        b: &[Poly<R::Elem>],
    ) -> Option<Vec<Vec<R::Elem>>> {
        if a.len().min(b.len()) < PACK_CUTOFF {
            return None;
        }
        let la = a.iter().map(Poly::len).max().unwrap_or(0);
        let lb = b.iter().map(Poly::len).max().unwrap_or(0);
        let out_len = a.len() + b.len() - 1;
        if la == 0 || lb == 0 {
            return Some(vec![Vec::new(); out_len]);
        }
        let stride = la + lb - 1;
        let pack = |xs: &[Poly<R::Elem>]| {
            let mut v = vec![
                self.base.zero();
                (xs.len() - 1) * stride + xs.last().map_or(0, Poly::len).max(1)
            ];
            for (i, x) in xs.iter().enumerate() {
                v[i * stride..i * stride + x.len()].clone_from_slice(&x.coeffs);
            }
            v
        };
        let prod = self.karatsuba(&pack(a), &pack(b));
        Some(
            (0..out_len)
                .map(|i| {
                    prod[(i * stride).min(prod.len())..((i + 1) * stride).min(prod.len())].to_vec()
                })
                .collect(),
        )
    }

    pub fn mul_schoolbook(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.from_coeffs(self.schoolbook(&f.coeffs, &g.coeffs))
    }

    /// `1 / f mod T^n` for `f` with constant term one, by Newton iteration.
    pub fn inv_series_monic(&self, f: &Poly<R::Elem>, n: usize) -> Poly<R::Elem> {
        let k = &self.base;
        assert!(
            f.coeffs.first().is_some_and(|c| k.is_one(c)),
            "constant term must be one"
        );
        let two = k.add(&k.one(), &k.one());
        let mut g = self.one();
        let mut prec = 1;
        while prec < n {
            prec = (2 * prec).min(n);
            let fg = self.mul_trunc(f, &g, prec);
            let t = self.sub(&self.constant(two.clone()), &fg);
            g = self.mul_trunc(&g, &t, prec);
        }
        self.truncate(&g, n)
    }

    /// `f * g mod T^n`.
    pub fn mul_trunc(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>, n: usize) -> Poly<R::Elem> {
        let a = &f.coeffs[..f.len().min(n)];
        let b = &g.coeffs[..g.len().min(n)];
        if a.len().min(b.len()) > KARATSUBA_CUTOFF {
            let mut v = self.karatsuba(a, b);
            v.truncate(n);
            return self.from_coeffs(v);
        }
        if let Some(v) = self.base.mul_coeffs_trunc(a, b, n) {
            return self.from_coeffs(v);
        }
        let mut out = vec![self.base.zero(); (a.len() + b.len()).saturating_sub(1).min(n)];
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                let t = self.base.mul(x, y);
                out[i + j] = self.base.add(&out[i + j], &t);
            }
        }
        self.from_coeffs(out)
    }

    /// Division by a monic polynomial: `(q, r)` with `f = q g + r`, `deg r < deg g`.
    ///
    /// Panics if `g` is not monic.
    pub fn divrem_monic(
        &self,
        f: &Poly<R::Elem>,
        g: &Poly<R::Elem>,
    ) -> (Poly<R::Elem>, Poly<R::Elem>) {
        assert!(self.is_monic(g), "divisor must be monic");
        let dg = g.len() - 1;
        if f.len() <= dg {
            return (Poly::zero(), f.clone());
        }
        let mut r = f.coeffs.clone();
        let mut q = vec![self.base.zero(); f.len() - dg];
        for k in (dg..r.len()).rev() {
            let c = std::mem::replace(&mut r[k], self.base.zero());
            if self.base.is_zero(&c) {
                continue;
            }
            for i in 0..dg {
                let t = self.base.mul(&c, &g.coeffs[i]);
                r[k - dg + i] = self.base.sub(&r[k - dg + i], &t);
            }
            q[k - dg] = c;
        }
        r.truncate(dg);
        (self.from_coeffs(q), self.from_coeffs(r))
    }

    pub fn rem_monic(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        assert!(self.is_monic(g), "divisor must be monic");
        let dg = g.len() - 1;
        if f.len() <= dg {
            return f.clone();
        }
        let mut r = f.coeffs.clone();
        for k in (dg..r.len()).rev() {
            let c = std::mem::replace(&mut r[k], self.base.zero());
            if self.base.is_zero(&c) {
                continue;
            }
            for i in 0..dg {
                let t = self.base.mul(&c, &g.coeffs[i]);
                r[k - dg + i] = self.base.sub(&r[k - dg + i], &t);
            }
        }
        r.truncate(dg);
        self.from_coeffs(r)
    }

    /// `a * b mod m` for monic `m`.
    pub fn mulmod(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>, m: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.rem_monic(&self.mul(a, b), m)
    }

    /// Product of `T - a` over `roots`.
    pub fn from_roots(&self, roots: &[R::Elem]) -> Poly<R::Elem> {
        let mut acc = self.constant(self.base.one());
        for a in roots {
            acc = self.mul(&acc, &self.linear_root(a));
        }
        acc
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.from_coeffs(self.add_slices(&a.coeffs, &b.coeffs))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => self.base.sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => self.base.neg(y),
                (None, None) => unreachable!(),
            });
        }
        self.from_coeffs(out)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.from_coeffs(self.karatsuba(&a.coeffs, &b.coeffs))
    }
    fn mul_coeffs(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        let v = self.packed_mul(a, b)?;
        Some(v.into_iter().map(|c| self.from_coeffs(c)).collect())
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
}

impl<F: Field> PolyRing<F> {
    /// `f / lc(f)`; zero stays zero.
    pub fn monic(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        match f.lc() {
            None => Poly::zero(),
            Some(c) if self.base.is_one(c) => f.clone(),
            Some(c) => {
                let inv = self.base.inv(c).expect("nonzero leading coefficient");
                self.scale(f, &inv)
            }
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>) {
        let lc = g.lc().expect("division by the zero polynomial");
        if self.base.is_one(lc) {
            return self.divrem_monic(f, g);
        }
        let inv = self.base.inv(lc).expect("nonzero leading coefficient");
        let (q, r) = self.divrem_monic(f, &self.scale(g, &inv));
        (self.scale(&q, &inv), r)
    }

    pub fn rem(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        let lc = g.lc().expect("division by the zero polynomial");
        if self.base.is_one(lc) {
            return self.rem_monic(f, g);
        }
        self.divrem(f, g).1
    }

    pub fn quo(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.divrem(f, g).0
    }

    pub fn divides(&self, g: &Poly<F::Elem>, f: &Poly<F::Elem>) -> bool {
        if g.is_zero() {
            return f.is_zero();
        }
        self.rem(f, g).is_zero()
    }

    /// `a^e mod m` for monic `m`.
    pub fn powmod(
        &self,
        a: &Poly<F::Elem>,
        e: &num_bigint::BigUint,
        m: &Poly<F::Elem>,
    ) -> Poly<F::Elem> {
        let q = QuotientRing::new(self.base.clone(), m.clone());
        q.pow_big(&q.reduce(a), e)
    }
}
