use num_bigint::{BigInt, BigUint};

use super::primes::prime_factors;
use super::{Field, FiniteField, PrimeField, Ring, RingDescriptor};
use crate::error::ArithError;
use crate::poly::{Poly, PolyRing, QuotientRing};

/// `F_{p^e} = F_p[t] / (f)` for a monic irreducible `f` of degree `e`.
///
/// Elements are coordinate vectors of length exactly `e` in the basis
/// `1, t, ..., t^(e-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtField {
    base: PrimeField,
    modulus: Vec<u64>,
}

impl ExtField {
    /// `modulus` lists the coefficients of `f`, lowest first; it must be monic
    /// and irreducible.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self, ArithError> {
        let base = PrimeField::new(p)?;
        let r = PolyRing::new(base.clone());
        let f = r.from_coeffs(modulus.iter().map(|&c| c % p).collect());
        if !r.is_monic(&f) || f.len() < 2 {
            return Err(ArithError::InvalidDescriptor(
                "extension modulus must be monic of positive degree".into(),
            ));
        }
        if !is_irreducible(&base, &f) {
            return Err(ArithError::InvalidDescriptor(format!(
                "extension modulus {f:?} is reducible over F_{p}"
            )));
        }
        Ok(ExtField {
            base,
            modulus: f.into_coeffs(),
        })
    }

    /// `F_{p^e}` with a random irreducible modulus.
    pub fn random<R: rand::Rng + ?Sized>(
        p: u64,
        e: usize,
        rng: &mut R,
    ) -> Result<Self, ArithError> {
        let base = PrimeField::new(p)?;
        let f = find_irreducible(&base, e, rng);
        Ok(ExtField {
            base,
            modulus: f.into_coeffs(),
        })
    }

    pub fn base_field(&self) -> &PrimeField {
        &self.base
    }

    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    pub fn modulus_poly(&self) -> Poly<u64> {
        PolyRing::new(self.base.clone()).from_slice(&self.modulus)
    }

    fn e(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Pads or reduces a coordinate vector into canonical form.
    pub fn from_coords_vec(&self, mut c: Vec<u64>) -> Vec<u64> {
        let e = self.e();
        let p = self.base.modulus();
        for x in c.iter_mut() {
            *x %= p;
        }
        if c.len() > e {
            let r = PolyRing::new(self.base.clone());
            let reduced = r.rem_monic(&r.from_coeffs(c), &self.modulus_poly());
            c = reduced.into_coeffs();
        }
        c.resize(e, 0);
        c
    }

    /// The class of `t`.
    pub fn gen(&self) -> Vec<u64> {
        self.from_coords_vec(vec![0, 1])
    }

    fn reduce_product(&self, mut prod: Vec<u64>) -> Vec<u64> {
        let e = self.e();
        let k = &self.base;
        if prod.len() > e {
            for top in (e..prod.len()).rev() {
                let c = prod[top];
                if c == 0 {
                    continue;
                }
                for i in 0..e {
                    let t = k.mul(&c, &self.modulus[i]);
                    prod[top - e + i] = k.sub(&prod[top - e + i], &t);
                }
            }
            prod.truncate(e);
        }
        prod.resize(e, 0);
        prod
    }
}

impl Ring for ExtField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.e()]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.e()];
        v[0] = 1;
        v
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let e = self.e();
        if e == 1 {
            return vec![self.base.mul(&a[0], &b[0])];
        }
        let p = self.base.modulus() as u128;
        let mut acc = vec![0u128; 2 * e - 1];
        // p < 2^62, so each product is < 2^124 and eight of them fit in a u128.
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let s = acc[i + j] + x as u128 * y as u128;
                acc[i + j] = if s >= 1 << 126 { s % p } else { s };
            }
        }
        let prod = acc.into_iter().map(|s| (s % p) as u64).collect();
        self.reduce_product(prod)
    }
    fn from_int(&self, n: &BigInt) -> Vec<u64> {
        let mut v = vec![0; self.e()];
        v[0] = self.base.from_int(n);
        v
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }
}

impl Field for ExtField {
    fn inv(&self, a: &Vec<u64>) -> Result<Vec<u64>, ArithError> {
        if self.is_zero(a) {
            return Err(ArithError::non_unit());
        }
        let r = PolyRing::new(self.base.clone());
        let inv = r
            .modinv(&r.from_slice(a), &self.modulus_poly())
            .map_err(|e| ArithError::NonUnit {
                witness: Some(format!("{:?}", e.gcd)),
            })?;
        Ok(self.from_coords_vec(inv.into_coeffs()))
    }
    fn characteristic(&self) -> BigUint {
        BigUint::from(self.base.modulus())
    }
    fn cardinality(&self) -> Option<BigUint> {
        Some(BigUint::from(self.base.modulus()).pow(self.e() as u32))
    }
    fn pth_root(&self, a: &Vec<u64>) -> Vec<u64> {
        // The inverse of Frobenius is Frobenius^(e-1).
        let p = BigUint::from(self.base.modulus());
        self.pow_big(a, &p.pow(self.e() as u32 - 1))
    }
    fn element_from_index(&self, index: u128) -> Vec<u64> {
        let p = self.base.modulus() as u128;
        let mut v = vec![0; self.e()];
        let mut n = index;
        for slot in v.iter_mut() {
            *slot = (n % p) as u64;
            n /= p;
        }
        v
    }
    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::ExtensionField {
            p: self.base.modulus(),
            e: self.e(),
            modulus: Some(self.modulus.clone()),
        }
    }
}

impl FiniteField for ExtField {
    fn prime(&self) -> u64 {
        self.base.modulus()
    }
    fn degree(&self) -> usize {
        self.e()
    }
    fn coords(&self, a: &Vec<u64>) -> Vec<u64> {
        a.clone()
    }
    fn from_coords(&self, coords: &[u64]) -> Vec<u64> {
        self.from_coords_vec(coords.to_vec())
    }
    fn extension<R: rand::Rng + ?Sized>(
        &self,
        factor: usize,
        rng: &mut R,
    ) -> Result<(ExtField, FieldEmbedding), ArithError> {
        let big = ExtField::random(self.prime(), self.e() * factor, rng)?;
        let emb = FieldEmbedding::between(self, &big, rng)?;
        Ok((big, emb))
    }
}

/// Rabin's test: `f` of degree `n` is irreducible over `F_p` iff
/// `T^(p^n) = T mod f` and `gcd(T^(p^(n/q)) - T, f) = 1` for every prime `q | n`.
pub fn is_irreducible(k: &PrimeField, f: &Poly<u64>) -> bool {
    let r = PolyRing::new(k.clone());
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = r.monic(f);
    let q = QuotientRing::new(k.clone(), f.clone());
    let p = BigUint::from(k.modulus());
    let t = q.gen();
    // frob[i] = T^(p^i) mod f
    let mut frob = vec![t.clone()];
    for i in 0..n {
        let next = q.pow_big(&frob[i], &p);
        frob.push(next);
    }
    if frob[n] != t {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|qf| {
        let d = frob[n / qf as usize].clone();
        r.gcd(&r.sub(&d, &t), &f).len() <= 1
    })
}

/// A random monic irreducible polynomial of degree `e` over `F_p`
/// (`T` itself when `e = 1`).
pub fn find_irreducible<R: rand::Rng + ?Sized>(k: &PrimeField, e: usize, rng: &mut R) -> Poly<u64> {
    assert!(e >= 1);
    let r = PolyRing::new(k.clone());
    if e == 1 {
        return r.var();
    }
    let p = k.modulus();
    loop {
        let mut c: Vec<u64> = (0..e).map(|_| rng.gen_range(0..p)).collect();
        c.push(1);
        let f = r.from_coeffs(c);
        if is_irreducible(k, &f) {
            return f;
        }
    }
}

/// A root in `k` of a polynomial that splits into linear factors over `k`.
pub fn find_root<K: FiniteField, R: rand::Rng + ?Sized>(
    k: &K,
    f: &Poly<K::Elem>,
    rng: &mut R,
) -> Option<K::Elem> {
    let r = PolyRing::new(k.clone());
    let q_size = k.cardinality().unwrap();
    // Keep only the roots that lie in k.
    let mut g = r.monic(f);
    if g.len() < 2 {
        return None;
    }
    let frob = r.powmod(&r.var(), &q_size, &g);
    g = r.gcd(&g, &r.sub(&frob, &r.var()));
    let p = k.prime();
    let e_total = k.degree();
    let sample = |rng: &mut R| {
        let c: Vec<u64> = (0..e_total).map(|_| rng.gen_range(0..p)).collect();
        k.from_coords(&c)
    };
    while g.len() > 2 {
        let qr = QuotientRing::new(k.clone(), g.clone());
        let delta = sample(rng);
        let probe = if p == 2 {
            // Absolute trace of delta*T.
            let mut y = qr.reduce(&r.scale(&r.var(), &delta));
            let mut acc = y.clone();
            for _ in 1..e_total {
                y = qr.mul(&y, &y);
                acc = qr.add(&acc, &y);
            }
            acc
        } else {
            let shifted = qr.reduce(&r.from_coeffs(vec![delta, k.one()]));
            let h = qr.pow_big(&shifted, &((&q_size - 1u32) / 2u32));
            qr.sub(&h, &qr.one())
        };
        let h = r.gcd(&probe, &g);
        if h.len() >= 2 && h.len() < g.len() {
            g = if 2 * h.len() <= g.len() {
                h
            } else {
                r.quo(&g, &h)
            };
        }
    }
    if g.len() != 2 {
        return None;
    }
    Some(k.neg(&g.coeffs()[0]))
}

/// An embedding `F_{p^a} -> F_{p^b}` (`a | b`), given by the image of the
/// generator of the small field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldEmbedding {
    /// `images[i]` = image of `t^i`, as coordinates in the big field.
    images: Vec<Vec<u64>>,
    big_degree: usize,
    p: u64,
}

impl FieldEmbedding {
    /// `F_p` into any extension.
    pub fn from_prime(big: &ExtField) -> Self {
        FieldEmbedding {
            images: vec![big.one()],
            big_degree: big.degree(),
            p: big.prime(),
        }
    }

    /// Embeds `small` into `big` by mapping its generator to a root of its
    /// modulus.
    pub fn between<R: rand::Rng + ?Sized>(
        small: &ExtField,
        big: &ExtField,
        rng: &mut R,
    ) -> Result<Self, ArithError> {
        if small.prime() != big.prime() || big.degree() % small.degree() != 0 {
            return Err(ArithError::Unsupported(format!(
                "no embedding of F_{}^{} into F_{}^{}",
                small.prime(),
                small.degree(),
                big.prime(),
                big.degree()
            )));
        }
        let r = PolyRing::new(big.clone());
        let f = r.from_coeffs(
            small
                .modulus_coeffs()
                .iter()
                .map(|&c| big.from_coords(&[c]))
                .collect(),
        );
        let theta = find_root(big, &f, rng)
            .ok_or_else(|| ArithError::Unsupported("modulus has no root in extension".into()))?;
        let mut images = vec![big.one()];
        for i in 1..small.degree() {
            let next = big.mul(&images[i - 1], &theta);
            images.push(next);
        }
        Ok(FieldEmbedding {
            images,
            big_degree: big.degree(),
            p: big.prime(),
        })
    }

    pub fn small_degree(&self) -> usize {
        self.images.len()
    }

    pub fn embed_coords(&self, c: &[u64]) -> Vec<u64> {
        let k = PrimeField::new(self.p).unwrap();
        let mut out = vec![0; self.big_degree];
        for (ci, img) in c.iter().zip(&self.images) {
            for (o, x) in out.iter_mut().zip(img) {
                *o = k.add(o, &k.mul(ci, x));
            }
        }
        out
    }

    pub fn embed<F: FiniteField>(&self, small: &F, x: &F::Elem) -> Vec<u64> {
        self.embed_coords(&small.coords(x))
    }

    /// Preimage of `y`, or `None` when `y` is outside the image.
    pub fn restrict_coords(&self, y: &[u64]) -> Option<Vec<u64>> {
        let k = PrimeField::new(self.p).unwrap();
        let a = self.images.len();
        // Rows: big coordinates; columns: small coordinates, then the target.
        let mut rows: Vec<Vec<u64>> = (0..self.big_degree)
            .map(|i| {
                let mut row: Vec<u64> = self.images.iter().map(|img| img[i]).collect();
                row.push(y[i]);
                row
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::with_capacity(a);
        for col in 0..a {
            let Some(sel) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(pivot_row, sel);
            let inv = k.inv(&rows[pivot_row][col]).unwrap();
            for x in rows[pivot_row].iter_mut() {
                *x = k.mul(x, &inv);
            }
            for r in 0..rows.len() {
                if r != pivot_row && rows[r][col] != 0 {
                    let factor = rows[r][col];
                    for c in 0..=a {
                        let t = k.mul(&factor, &rows[pivot_row][c]);
                        rows[r][c] = k.sub(&rows[r][c], &t);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        if rows[pivot_row..].iter().any(|row| row[a] != 0) {
            return None;
        }
        let mut c = vec![0; a];
        for (i, &col) in pivots.iter().enumerate() {
            c[col] = rows[i][a];
        }
        Some(c)
    }

    pub fn restrict<F: FiniteField>(&self, small: &F, y: &[u64]) -> Option<F::Elem> {
        self.restrict_coords(y).map(|c| small.from_coords(&c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn irreducible_examples() {
        let k2 = PrimeField::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let f = find_irreducible(&k2, 2, &mut rng);
        assert_eq!(f.coeffs(), &[1, 1, 1]);
        let k3 = PrimeField::new(3).unwrap();
        let r3 = PolyRing::new(k3.clone());
        assert!(is_irreducible(&k3, &r3.from_i64s(&[1, 0, 1])));
        assert!(!is_irreducible(&k3, &r3.from_i64s(&[-1, 0, 1])));
        assert_eq!(find_irreducible(&k3, 1, &mut rng), r3.var());
    }

    #[test]
    fn irreducible_has_no_small_degree_factor() {
        let k = PrimeField::new(5).unwrap();
        let r = PolyRing::new(k.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for e in 2..7 {
            let f = find_irreducible(&k, e, &mut rng);
            let t = r.var();
            for i in 1..e {
                let ti = r.powmod(&t, &BigUint::from(5u32).pow(i as u32), &f);
                assert_eq!(r.gcd(&r.sub(&ti, &t), &f), r.one(), "e={e} i={i}");
            }
        }
    }

    #[test]
    fn frobenius_root_in_f9() {
        let k = ExtField::new(3, vec![1, 0, 1]).unwrap();
        let t = k.gen();
        assert_eq!(k.pth_root(&t), k.neg(&t));
        let root = k.pth_root(&t);
        assert_eq!(k.pow(&root, 3), t);
    }

    #[test]
    fn field_axioms_f_5_4() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let k = ExtField::random(5, 4, &mut rng).unwrap();
        for _ in 0..50 {
            let a = k.element_from_index(rng.gen_range(0..625));
            let b = k.element_from_index(rng.gen_range(0..625));
            let c = k.element_from_index(rng.gen_range(0..625));
            assert_eq!(
                k.mul(&a, &k.add(&b, &c)),
                k.add(&k.mul(&a, &b), &k.mul(&a, &c))
            );
            if !k.is_zero(&a) {
                assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
            }
            assert_eq!(k.pow(&a, 625), a);
        }
    }

    #[test]
    fn index_embedding_is_injective() {
        let k = ExtField::new(3, vec![1, 0, 1]).unwrap();
        let mut all: Vec<_> = (0..9).map(|i| k.element_from_index(i)).collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 9);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (p, a, f) in [(7u64, 2usize, 3usize), (2, 3, 2), (5, 2, 2)] {
            let small = ExtField::random(p, a, &mut rng).unwrap();
            let (big, emb) = small.extension(f, &mut rng).unwrap();
            let n = (p as u128).pow(a as u32);
            for _ in 0..30 {
                let x = small.element_from_index(rng.gen_range(0..n));
                let y = small.element_from_index(rng.gen_range(0..n));
                let ex = emb.embed(&small, &x);
                let ey = emb.embed(&small, &y);
                assert_eq!(emb.embed(&small, &small.mul(&x, &y)), big.mul(&ex, &ey));
                assert_eq!(emb.embed(&small, &small.add(&x, &y)), big.add(&ex, &ey));
                assert_eq!(emb.restrict(&small, &ex), Some(x));
            }
            // Something outside the subfield.
            let outside = (0..)
                .map(|i| big.element_from_index(i))
                .find(|z| big.pow(z, n as u64) != *z)
                .unwrap();
            assert_eq!(emb.restrict(&small, &outside), None);
        }
    }

    #[test]
    fn prime_embedding() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let k = PrimeField::new(11).unwrap();
        let (big, emb) = k.extension(3, &mut rng).unwrap();
        assert_eq!(big.degree(), 3);
        assert_eq!(emb.embed(&k, &4), vec![4, 0, 0]);
        assert_eq!(emb.restrict(&k, &[4, 0, 0]), Some(4));
        assert_eq!(emb.restrict(&k, &[4, 1, 0]), None);
    }
}
