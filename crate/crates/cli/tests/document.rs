use geores::kronecker::{finalize, Fiber};
use geores::poly::PolyRing;
use geores::ring::{ExtField, FiniteField, PrimeField, RationalField, RingDescriptor};
use geores_cli::{Codec, FiberDocument, Metadata, Timings};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn meta(seed: u64) -> Metadata {
    Metadata {
        seed,
        attempts: 1 + (seed % 4) as u32,
        extension_degree: 1,
        prime: None,
        precision: None,
        timings: Timings {
            initial_us: seed % 100,
            total_us: seed % 1000,
            ..Timings::default()
        },
    }
}

fn round_trip<K: Codec>(k: &K, system: &RingDescriptor, fiber: &Fiber<K>, seed: u64) {
    let doc = FiberDocument::from_fiber(k, system, fiber, meta(seed));
    let back = FiberDocument::from_text(&doc.to_line()).unwrap();
    assert_eq!(back, doc);
    let f = back.to_fiber(k).unwrap();
    assert_eq!((f.level, f.n), (fiber.level, fiber.n));
    assert_eq!((&f.lambda, &f.point), (&fiber.lambda, &fiber.point));
    assert_eq!((&f.m, &f.v, &f.w), (&fiber.m, &fiber.v, &fiber.w));
}

fn shape(n: usize, r: usize) -> (usize, usize) {
    (n, r.min(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn prime_field_documents(seed: u64, n in 1usize..4, r in 1usize..4, deg in 1usize..5,
                             cs in proptest::collection::vec(0u64..10007, 64)) {
        let (n, r) = shape(n, r);
        let k = PrimeField::new(10007).unwrap();
        let kt = PolyRing::new(k.clone());
        let mut it = cs.into_iter().cycle();
        let mut m: Vec<u64> = (0..deg).map(|_| it.next().unwrap()).collect();
        m.push(1);
        let mut fib = Fiber {
            level: r,
            n,
            lambda: (0..n).map(|_| (0..n).map(|_| it.next().unwrap()).collect()).collect(),
            point: (0..n - 1).map(|_| it.next().unwrap()).collect(),
            m: kt.from_coeffs(m),
            v: (1..r).map(|_| kt.from_coeffs((0..deg).map(|_| it.next().unwrap()).collect())).collect(),
            w: vec![],
        };
        finalize(&k, &mut fib);
        round_trip(&k, &RingDescriptor::PrimeField { p: 10007 }, &fib, seed);
    }

    #[test]
    fn extension_documents(seed: u64, deg in 1usize..4, cs in proptest::collection::vec(0u64..7, 64)) {
        let big = ExtField::new(7, vec![1, 0, 1]).unwrap();
        let kt = PolyRing::new(big.clone());
        let mut it = cs.into_iter().cycle();
        let mut el = || big.from_coords(&[it.next().unwrap(), it.next().unwrap()]);
        let mut m: Vec<Vec<u64>> = (0..deg).map(|_| el()).collect();
        m.push(big.from_coords(&[1]));
        let fib = Fiber {
            level: 2,
            n: 2,
            lambda: vec![vec![el(), el()], vec![el(), el()]],
            point: vec![el()],
            m: kt.from_coeffs(m),
            v: vec![kt.from_coeffs((0..deg).map(|_| el()).collect())],
            w: vec![kt.from_coeffs((0..deg).map(|_| el()).collect())],
        };
        round_trip(&big, &RingDescriptor::PrimeField { p: 7 }, &fib, seed);
    }

    #[test]
    fn rational_documents(seed: u64, nums in proptest::collection::vec(-(1i64 << 40)..(1i64 << 40), 16),
                          dens in proptest::collection::vec(1i64..(1i64 << 30), 16)) {
        let q = RationalField;
        let kt = PolyRing::new(q);
        let fr: Vec<BigRational> = nums.iter().zip(&dens).map(|(&a, &b)| BigRational::new(BigInt::from(a), BigInt::from(b))).collect();
        let mut m = fr[..3].to_vec();
        m.push(BigRational::from_integer(1.into()));
        let fib = Fiber {
            level: 2,
            n: 2,
            lambda: vec![vec![fr[3].clone(), fr[4].clone()], vec![fr[5].clone(), fr[6].clone()]],
            point: vec![fr[7].clone()],
            m: kt.from_coeffs(m),
            v: vec![kt.from_coeffs(fr[8..11].to_vec())],
            w: vec![kt.from_coeffs(fr[11..14].to_vec())],
        };
        round_trip(&q, &RingDescriptor::Rationals, &fib, seed);
    }
}

#[test]
fn malformed_documents_are_rejected() {
    assert!(FiberDocument::from_text("").is_err());
    assert!(FiberDocument::from_text("{\"field\": 3}").is_err());
    let k = PrimeField::new(7).unwrap();
    let kt = PolyRing::new(k.clone());
    let fib = Fiber {
        level: 1,
        n: 1,
        lambda: vec![vec![1]],
        point: vec![],
        m: kt.from_i64s(&[3, 1]),
        v: vec![],
        w: vec![],
    };
    let mut doc =
        FiberDocument::from_fiber(&k, &RingDescriptor::PrimeField { p: 7 }, &fib, meta(0));
    doc.m[0] = "9".into();
    assert!(doc.to_fiber(&k).is_err());
    assert_eq!(k.prime(), 7);
}
