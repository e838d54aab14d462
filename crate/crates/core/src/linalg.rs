//! Small dense matrices over a [`Ring`].

use crate::ring::{Field, Ring};

/// Row-major square or rectangular matrix.
pub type Matrix<E> = Vec<Vec<E>>;

pub fn identity<R: Ring>(k: &R, n: usize) -> Matrix<R::Elem> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { k.one() } else { k.zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul<R: Ring>(k: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = k.zero();
                    for t in 0..inner {
                        acc = k.add(&acc, &k.mul(&row[t], &b[t][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<R: Ring>(k: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(k.zero(), |acc, (x, y)| k.add(&acc, &k.mul(x, y)))
        })
        .collect()
}

/// Coefficients of `det(t I - A)`, leading coefficient first, by Berkowitz's
/// division-free algorithm.
pub fn charpoly<R: Ring>(k: &R, a: &Matrix<R::Elem>) -> Vec<R::Elem> {
    let n = a.len();
    if n == 0 {
        return vec![k.one()];
    }
    let mut vect = vec![k.one(), k.neg(&a[0][0])];
    for r in 1..n {
        // Leading block A_r (r x r), column c = A[0..r][r], row s = A[r][0..r].
        let col: Vec<R::Elem> = (0..r).map(|i| a[i][r].clone()).collect();
        let row: &[R::Elem] = &a[r][..r];
        // First column of the Toeplitz factor: 1, -a_rr, -s c, -s A c, ...
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(k.one());
        toeplitz.push(k.neg(&a[r][r]));
        let mut power_c = col;
        for _ in 0..r {
            let dot = row
                .iter()
                .zip(&power_c)
                .fold(k.zero(), |acc, (x, y)| k.add(&acc, &k.mul(x, y)));
            toeplitz.push(k.neg(&dot));
            power_c = (0..r)
                .map(|i| {
                    (0..r).fold(k.zero(), |acc, j| {
                        k.add(&acc, &k.mul(&a[i][j], &power_c[j]))
                    })
                })
                .collect();
        }
        let mut next = vec![k.zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, v) in vect.iter().enumerate() {
                if i >= j {
                    *slot = k.add(slot, &k.mul(&toeplitz[i - j], v));
                }
            }
        }
        vect = next;
    }
    vect
}

/// `(det A, adj A)` without divisions, through Cayley-Hamilton.
pub fn det_adjugate<R: Ring>(k: &R, a: &Matrix<R::Elem>) -> (R::Elem, Matrix<R::Elem>) {
    let n = a.len();
    if n == 0 {
        return (k.one(), Vec::new());
    }
    let cp = charpoly(k, a);
    // cp = [1, c_{n-1}, ..., c_0]
    let c0 = cp[n].clone();
    let det = if n % 2 == 0 { c0 } else { k.neg(&c0) };
    // Q = A^{n-1} + c_{n-1} A^{n-2} + ... + c_1 I, by Horner.
    let mut q = identity(k, n);
    for c in cp.iter().take(n).skip(1) {
        q = mat_mul(k, &q, a);
        for (i, row) in q.iter_mut().enumerate() {
            row[i] = k.add(&row[i], c);
        }
    }
    if n % 2 == 0 {
        for row in q.iter_mut() {
            for x in row.iter_mut() {
                *x = k.neg(x);
            }
        }
    }
    (det, q)
}

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub fn inverse<F: Field>(k: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = a.len();
    let mut m: Vec<Vec<F::Elem>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { k.one() } else { k.zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !k.is_zero(&m[r][col]))?;
        m.swap(col, piv);
        let inv = k.inv(&m[col][col]).ok()?;
        for x in m[col].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for r in 0..n {
            if r != col && !k.is_zero(&m[r][col]) {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let t = k.mul(&f, &m[col][c]);
                    m[r][c] = k.sub(&m[r][c], &t);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det<F: Field>(k: &F, a: &Matrix<F::Elem>) -> F::Elem {
    det_adjugate(k, a).0
}
