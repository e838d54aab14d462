//! Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
//! when a gated criterion fails. The scaling probe is reported but not gated.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use geores::dyneval::{biv_gcd, crt_combine};
use geores::kronecker::{
    check_curve, curve_from_rows, initial_fiber, newton_lift, solve_finite, solve_in,
    solve_with_point, verify, Fiber, FiniteSolution, Problem, SolveConfig, StageTimings,
};
use geores::linalg::identity;
use geores::oracle::{brute_zeros, minpoly_of_form, PointSet};
use geores::poly::{Poly, PolyRing};
use geores::rational_lift::{rational_reconstruct, solve_over_q, HeightBudget};
use geores::ring::{FiniteField, PrimeField, RationalField, Ring, RingDescriptor};
use geores::slp::{gradient, parse_epsilon, Slp, SystemSpec};
use geores_cli::{bench_csv, bench_rows, solve, verify_document, SolveOptions, Sweep};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

/// Every successful solve in the run, and how many of them verified.
#[derive(Default)]
struct Tally {
    solved: usize,
    verified: usize,
    failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, label: &str, passed: bool) {
        self.solved += 1;
        if passed {
            self.verified += 1;
        } else {
            self.failures.push(label.to_string());
        }
    }
}

fn eps() -> BigRational {
    parse_epsilon("0.01").unwrap()
}

fn system(n: usize, field: &str, polys: &[String]) -> SystemSpec {
    let refs: Vec<&str> = polys.iter().map(String::as_str).collect();
    SystemSpec::from_polys(n, field.parse().unwrap(), eps(), &refs, None).unwrap()
}

/// Dense polynomial of total degree `d` with small integer coefficients.
fn dense(n: usize, d: usize, rng: &mut ChaCha8Rng) -> String {
    let mut terms = Vec::new();
    let mut exps = vec![0usize; n];
    loop {
        if exps.iter().sum::<usize>() <= d {
            let c: i64 = rng.gen_range(-40..=40);
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{e}", i + 1)
                    }
                })
                .collect();
            if mono.is_empty() {
                terms.push(format!("({c})"));
            } else {
                terms.push(format!("({c})*{}", mono.join("*")));
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                // Force the leading monomial so the degree is exact.
                terms.push(format!("x1^{d}"));
                return terms.join(" + ");
            }
            exps[i] += 1;
            if exps[i] <= d {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Random products of `deg` affine lines in two variables.
fn lines(deg: usize, p: i64, rng: &mut ChaCha8Rng) -> Vec<(i64, i64, i64)> {
    (0..deg)
        .map(|_| loop {
            let l = (
                rng.gen_range(0..p),
                rng.gen_range(0..p),
                rng.gen_range(0..p),
            );
            if l.0 != 0 || l.1 != 0 {
                break l;
            }
        })
        .collect()
}

fn product_text(ls: &[(i64, i64, i64)]) -> String {
    ls.iter()
        .map(|(a, b, c)| format!("({a}*x1 + {b}*x2 + {c})"))
        .collect::<Vec<_>>()
        .join("*")
}

/// Lines proportional modulo `p`.
fn same_line(l: (i64, i64, i64), m: (i64, i64, i64), p: i64) -> bool {
    let cross = |a: i64, b: i64, c: i64, d: i64| (a * d - b * c).rem_euclid(p) == 0;
    cross(l.0, l.1, m.0, m.1) && cross(l.0, l.2, m.0, m.2) && cross(l.1, l.2, m.1, m.2)
}

/// The solver's `m` against the minimal polynomial the oracle computes from
/// the enumerated zeros, and the point count against the degree.
fn oracle_agrees<K: FiniteField>(big: &K, fiber: &Fiber<K>, zeros: &PointSet<K::Elem>) -> bool {
    let form = &fiber.lambda[fiber.n - fiber.level];
    minpoly_of_form(big, zeros, form) == fiber.m && zeros.len() == fiber.degree()
}

fn criterion_oracle(tally: &mut Tally) -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut solved, mut agreed, mut bad) = (0, 0, Vec::new());
    for i in 0..50u64 {
        let p: i64 = if i % 2 == 0 { 499 } else { 1009 };
        let f1 = lines(rng.gen_range(1..=3), p, &mut rng);
        let f2 = loop {
            let f2 = lines(rng.gen_range(1..=3), p, &mut rng);
            if !f1.iter().any(|&l| f2.iter().any(|&m| same_line(l, m, p))) {
                break f2;
            }
        };
        let spec = system(
            2,
            &format!("Fp:{p}"),
            &[product_text(&f1), product_text(&f2)],
        );
        let k = PrimeField::new(p as u64).unwrap();
        let zeros = brute_zeros(&k, &spec).unwrap();
        let cfg = SolveConfig {
            seed: i,
            ..SolveConfig::default()
        };
        let Ok(sol) = solve_finite(&k, &spec, &cfg) else {
            continue;
        };
        solved += 1;
        let ok = match &sol {
            FiniteSolution::Base(rep) => {
                tally.record("C1 base", verify(&k, &spec, &rep.fiber).passed());
                oracle_agrees(&k, &rep.fiber, &zeros)
            }
            FiniteSolution::Extended {
                field,
                embedding,
                report,
            } => {
                tally.record("C1 extended", verify(field, &spec, &report.fiber).passed());
                let embedded = PointSet {
                    field: RingDescriptor::PrimeField { p: p as u64 },
                    points: zeros
                        .points
                        .iter()
                        .map(|x| x.iter().map(|c| embedding.embed(&k, c)).collect())
                        .collect(),
                };
                oracle_agrees(field, &report.fiber, &embedded)
            }
        };
        if ok {
            agreed += 1;
        } else {
            bad.push(i);
        }
    }
    let secs = t.elapsed().as_secs_f64();
    Outcome {
        pass: solved > 0 && agreed == solved && secs < 60.0,
        detail: format!("{agreed}/{solved} solved systems match the oracle (50 drawn), {secs:.1} s, mismatches {bad:?}"),
    }
}

fn solve_and_verify(label: &str, spec: &SystemSpec, seed: u64, tally: &mut Tally) {
    let opts = SolveOptions {
        seed: Some(seed),
        ..SolveOptions::default()
    };
    if let Ok(doc) = solve(spec, &opts) {
        let passed = verify_document(&doc, spec)
            .map(|v| v.passed)
            .unwrap_or(false);
        tally.record(label, passed);
    }
}

fn criterion_verification(tally: &mut Tally) -> Outcome {
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");
    for name in [
        "parabola_7",
        "parabola_10007",
        "circle_49",
        "circle_1000003",
        "linear_q",
        "four_points_q",
    ] {
        let spec =
            SystemSpec::parse(&std::fs::read_to_string(format!("{fixtures}/{name}.sys")).unwrap())
                .unwrap();
        solve_and_verify(name, &spec, 1, tally);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..10 {
        let polys = vec![dense(2, 2, &mut rng), dense(2, 2, &mut rng)];
        solve_and_verify("Fp n=2", &system(2, "Fp:1000003", &polys), i, tally);
        solve_and_verify("Fq n=2", &system(2, "Fq:5^3", &polys), i, tally);
    }
    for i in 0..5 {
        let polys = vec![
            dense(3, 2, &mut rng),
            dense(3, 2, &mut rng),
            dense(3, 1, &mut rng),
        ];
        solve_and_verify("Fp n=3", &system(3, "Fp:2147483647", &polys), i, tally);
    }
    for i in 0..5 {
        let f1 = lines(2, 7, &mut rng);
        let f2 = lines(2, 7, &mut rng);
        let polys = vec![product_text(&f1), format!("{} - 1", product_text(&f2))];
        solve_and_verify("Q", &system(2, "Q", &polys), i, tally);
    }
    Outcome {
        pass: tally.solved > 0 && tally.verified == tally.solved,
        detail: format!(
            "{}/{} successful solves pass checks (a)-(d); failing: {:?}",
            tally.verified, tally.solved, tally.failures
        ),
    }
}

fn criterion_newton(tally: &mut Tally) -> Outcome {
    let mut notes = Vec::new();
    let mut parabola_ok = true;
    for (p, x) in [(7u64, 2u64), (10007, 4)] {
        let k = PrimeField::new(p).unwrap();
        let spec = system(
            2,
            &format!("Fp:{p}"),
            &["x2^2 - x1".into(), "x2 - x1 - 1".into()],
        );
        let pb = Problem::new(&k, &spec, identity(&k, 2), vec![x], 2, &eps()).unwrap();
        let kx = PolyRing::new(k.clone());
        let expected = curve_from_rows(&k, &[kx.from_i64s(&[0, -1]), kx.zero(), kx.one()]);
        let got = initial_fiber(&pb)
            .and_then(|f| newton_lift(&pb, &f))
            .map(|c| c.m);
        if got.as_ref() != Ok(&expected) {
            parabola_ok = false;
            notes.push(format!("parabola over F_{p}: {got:?}"));
        }
    }

    let k = PrimeField::new(2147483647).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut instances, mut curves_ok, mut draws) = (0, 0, 0);
    while instances < 30 && draws < 100 {
        draws += 1;
        let n = if draws % 3 == 0 { 3 } else { 2 };
        let polys: Vec<String> = (0..n)
            .map(|i| dense(n, if i == 0 && n == 2 { 3 } else { 2 }, &mut rng))
            .collect();
        let spec = system(n, "Fp:2147483647", &polys);
        let cfg = SolveConfig {
            seed: draws,
            ..SolveConfig::default()
        };
        let Ok(rep) = solve_in(&k, &spec, &cfg) else {
            continue;
        };
        tally.record("C3", verify(&k, &spec, &rep.fiber).passed());
        instances += 1;
        let (lambda, point) = (rep.fiber.lambda.clone(), rep.fiber.point.clone());
        let full = Problem::new(
            &k,
            &spec,
            lambda.clone(),
            point.clone(),
            spec.delta(),
            &eps(),
        )
        .unwrap();
        let mut all = rep.curves.len() == n - 1;
        for curve in &rep.curves {
            let s = curve.level;
            // The level-s fiber, recomputed from the first s equations alone.
            let sub = system(n, "Fp:2147483647", &polys[..s]);
            let pb = Problem::new(
                &k,
                &sub,
                lambda.clone(),
                point.clone(),
                spec.delta(),
                &eps(),
            )
            .unwrap();
            let fiber =
                solve_with_point(&pb, &mut rng, &mut StageTimings::default()).map(|(f, _)| f);
            all &= fiber
                .map(|f| f.level == s && check_curve(&full, &f, curve))
                .unwrap_or(false);
        }
        if all {
            curves_ok += 1;
        }
    }
    Outcome {
        pass: parabola_ok && instances == 30 && curves_ok == instances,
        detail: format!(
            "parabola M = T^2 - X over F_7, F_10007: {}; {curves_ok}/{instances} random instances check out {notes:?}",
            if parabola_ok { "exact" } else { "WRONG" }
        ),
    }
}

type Dense = BTreeMap<Vec<u32>, u64>;

fn dense_op(k: &PrimeField, a: &Dense, b: &Dense, op: char) -> Dense {
    let mut out = Dense::new();
    let mut put = |e: Vec<u32>, c: u64| {
        let slot = out.entry(e).or_insert(0);
        *slot = k.add(slot, &c);
    };
    match op {
        '*' => {
            for (ea, ca) in a {
                for (eb, cb) in b {
                    put(
                        ea.iter().zip(eb).map(|(x, y)| x + y).collect(),
                        k.mul(ca, cb),
                    );
                }
            }
        }
        _ => {
            for (e, c) in a {
                put(e.clone(), *c);
            }
            for (e, c) in b {
                put(e.clone(), if op == '-' { k.neg(c) } else { *c });
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn dense_eval(k: &PrimeField, f: &Dense, x: &[u64]) -> u64 {
    let mut acc = 0;
    for (e, c) in f {
        let mut t = *c;
        for (xi, &ei) in x.iter().zip(e) {
            t = k.mul(&t, &k.pow(xi, u64::from(ei)));
        }
        acc = k.add(&acc, &t);
    }
    acc
}

fn dense_partial(k: &PrimeField, f: &Dense, i: usize) -> Dense {
    let mut out = Dense::new();
    for (e, c) in f {
        if e[i] > 0 {
            let mut e2 = e.clone();
            e2[i] -= 1;
            let c2 = k.mul(c, &k.from_i64(i64::from(e[i])));
            if c2 != 0 {
                out.insert(e2, c2);
            }
        }
    }
    out
}

fn criterion_gradient() -> Outcome {
    let k = PrimeField::new(1_000_003).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut agree, mut short, mut worst) = (0, 0, 0.0f64);
    for _ in 0..20 {
        let n = rng.gen_range(1..=4);
        let target = rng.gen_range(5..=30);
        let mut slp: Slp<BigInt> = Slp::new(n);
        let mut nodes: Vec<(usize, Dense, u32)> = Vec::new();
        for i in 0..n {
            let mut e = vec![0u32; n];
            e[i] = 1;
            nodes.push((slp.input(i), Dense::from([(e, 1)]), 1));
        }
        for _ in 0..2 {
            let c: i64 = rng.gen_range(-1000..=1000);
            let poly = Dense::from([(vec![0u32; n], k.from_i64(c))]);
            nodes.push((
                slp.param(BigInt::from(c)),
                poly.into_iter().filter(|(_, c)| *c != 0).collect(),
                0,
            ));
        }
        while slp.length() < target {
            let (a, b) = (rng.gen_range(0..nodes.len()), rng.gen_range(0..nodes.len()));
            let (ia, fa, da) = nodes[a].clone();
            let (ib, fb, db) = nodes[b].clone();
            let op = match rng.gen_range(0..3) {
                0 if da + db <= 6 => '*',
                1 => '-',
                _ => '+',
            };
            let idx = match op {
                '*' => slp.mul(ia, ib),
                '-' => slp.sub(ia, ib),
                _ => slp.add(ia, ib),
            };
            let deg = if op == '*' { da + db } else { da.max(db) };
            nodes.push((idx, dense_op(&k, &fa, &fb, op), deg));
        }
        let (out, f, _) = nodes.last().unwrap().clone();
        slp.push_output(out);
        let grad = gradient(&slp, 0);
        let partials: Vec<Dense> = (0..n).map(|i| dense_partial(&k, &f, i)).collect();
        let all = (0..10).all(|_| {
            let x: Vec<u64> = (0..n).map(|_| rng.gen_range(0..1_000_003)).collect();
            let want: Vec<u64> = partials.iter().map(|d| dense_eval(&k, d, &x)).collect();
            grad.evaluate_int(&k, &x) == want
                && slp.evaluate_int(&k, &x)[0] == dense_eval(&k, &f, &x)
        });
        agree += usize::from(all);
        short += usize::from(grad.length() <= 5 * slp.length());
        worst = worst.max(grad.length() as f64 / slp.length() as f64);
    }
    Outcome {
        pass: agree == 20 && short == 20,
        detail: format!("{agree}/20 programs match dense partials at 10 points; {short}/20 within 5L (worst {worst:.2}L)"),
    }
}

/// Monic `(T - a)^2 - c`, irreducible for a non-square `c`.
fn shifted_quadratic<K: FiniteField>(kx: &PolyRing<K>, a: &K::Elem, c: &K::Elem) -> Poly<K::Elem> {
    let k = kx.base();
    let two_a = k.add(a, a);
    kx.from_coeffs(vec![k.sub(&k.mul(a, a), c), k.neg(&two_a), k.one()])
}

fn squarefree_case<K: FiniteField>(k: &K, inseparable: bool, rng: &mut ChaCha8Rng) -> bool {
    let kx = PolyRing::new(k.clone());
    let q = k.size();
    let p = k.prime();
    let half = u64::try_from((q - 1) / 2).unwrap();
    let nonsquare = (1..q)
        .map(|i| k.element_from_index(i))
        .find(|c| !k.is_one(&k.pow(c, half)))
        .unwrap();
    let mut used = Vec::new();
    let mut factors = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let idx = rng.gen_range(0..q);
        if used.contains(&idx) {
            continue;
        }
        used.push(idx);
        let a = k.element_from_index(idx);
        factors.push(if rng.gen_bool(0.3) {
            shifted_quadratic(&kx, &a, &nonsquare)
        } else {
            kx.linear_root(&a)
        });
    }
    let mut f = kx.constant(k.element_from_index(rng.gen_range(1..q)));
    let mut radical = kx.one();
    for g in &factors {
        let mult = if inseparable {
            p * rng.gen_range(1..=2)
        } else {
            rng.gen_range(1..=p + 2)
        };
        f = kx.mul(&f, &kx.pow(g, mult));
        radical = kx.mul(&radical, g);
    }
    if inseparable && !kx.derivative(&f).is_zero() {
        return false;
    }
    kx.squarefree_part(&f) == kx.monic(&radical)
}

fn shape_case(k: &PrimeField, rng: &mut ChaCha8Rng) -> bool {
    let kx = PolyRing::new(k.clone());
    let p = k.prime();
    let rand_poly = |deg: usize, rng: &mut ChaCha8Rng| {
        kx.from_coeffs((0..deg).map(|_| rng.gen_range(0..p)).collect())
    };
    let m = loop {
        let mut m = kx.one();
        for _ in 0..rng.gen_range(1..=3) {
            let mut g = rand_poly(rng.gen_range(1..=2), rng);
            g = kx.add(&g, &kx.monomial(1, g.len()));
            m = kx.mul(&m, &g);
        }
        if kx.is_squarefree(&m) {
            break m;
        }
    };
    let dm = m.len() - 1;
    let unit = |a: &Poly<u64>, b: &Poly<u64>| kx.modinv(&kx.sub(a, b), &m).is_ok();
    let (v, u) = loop {
        let v = rand_poly(dm, rng);
        let u: Vec<Poly<u64>> = (0..4).map(|_| rand_poly(dm, rng)).collect();
        let (left, right) = ([&v, &u[0], &u[2]], [&u[1], &u[3]]);
        let coprime = left.iter().all(|a| right.iter().all(|b| unit(a, b)))
            && unit(&v, &u[0])
            && unit(&v, &u[2]);
        if coprime {
            break (v, u);
        }
    };
    let ymul = |a: &[Poly<u64>], b: &[Poly<u64>]| -> Vec<Poly<u64>> {
        let mut out = vec![Poly::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = kx.rem(&kx.add(&out[i + j], &kx.mul(x, y)), &m);
            }
        }
        out
    };
    let lin = |a: &Poly<u64>| vec![kx.neg(a), kx.one()];
    let f1 = ymul(&ymul(&lin(&v), &lin(&u[0])), &lin(&u[2]));
    let f2 = ymul(&ymul(&lin(&v), &lin(&u[1])), &lin(&u[3]));
    let Ok(branches) = biv_gcd(k, &m, &f1, &f2) else {
        return false;
    };
    let mut parts = Vec::new();
    for (mi, g) in branches {
        if g.len() != 2 || g[1] != kx.one() {
            return false;
        }
        parts.push((mi, kx.neg(&g[0])));
    }
    let (modulus, glued) = crt_combine(&kx, &parts);
    kx.monic(&modulus) == m && glued == v
}

fn criterion_squarefree_and_splitting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut sf_ok = 0;
    let mut insep = 0;
    for i in 0..200 {
        let inseparable = i % 4 == 0;
        insep += usize::from(inseparable);
        let p = [3u64, 5, 7, 11, 13][i % 5];
        let ok = if i % 3 == 2 {
            let big = format!("Fq:{p}^2")
                .parse::<RingDescriptor>()
                .unwrap()
                .build_extension()
                .unwrap();
            squarefree_case(&big, inseparable, &mut rng)
        } else {
            squarefree_case(&PrimeField::new(p).unwrap(), inseparable, &mut rng)
        };
        sf_ok += usize::from(ok);
    }
    let mut shape_ok = 0;
    for i in 0..100 {
        let k = PrimeField::new([5u64, 7, 101][i % 3]).unwrap();
        shape_ok += usize::from(shape_case(&k, &mut rng));
    }
    Outcome {
        pass: sf_ok == 200 && shape_ok == 100,
        detail: format!("square-free parts {sf_ok}/200 ({insep} inseparable); shape-lemma parametrizations {shape_ok}/100"),
    }
}

fn criterion_rationals(tally: &mut Tally) -> Outcome {
    let t = Instant::now();
    let q = RationalField;
    let spec = system(2, "Q", &["x1^2 + x2^2 - 5".into(), "x1*x2 - 2".into()]);
    let points_ok = match solve_over_q(&spec, &SolveConfig::default()) {
        Ok(sol) => {
            let fib = &sol.fiber;
            tally.record("C6", verify(&q, &spec, fib).passed());
            let qx = PolyRing::new(q);
            let r = |a: i64| BigRational::from_integer(BigInt::from(a));
            let form = |row: &[BigRational], pt: &[i64; 2]| &row[0] * r(pt[0]) + &row[1] * r(pt[1]);
            let pts = [[1, 2], [2, 1], [-1, -2], [-2, -1]];
            let ts: Vec<BigRational> = pts.iter().map(|pt| form(&fib.lambda[0], pt)).collect();
            let distinct = (0..4).all(|i| (0..i).all(|j| ts[i] != ts[j]));
            let on = pts.iter().zip(&ts).all(|(pt, t)| {
                qx.eval(&fib.m, t).is_zero() && qx.eval(&fib.v[0], t) == form(&fib.lambda[1], pt)
            });
            fib.degree() == 4 && qx.is_monic(&fib.m) && distinct && on
        }
        Err(_) => false,
    };
    let solve_secs = t.elapsed().as_secs_f64();

    let prime = BigInt::from(2_305_843_009_213_693_951u64);
    let budget = HeightBudget {
        eta: 40,
        doubling: false,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut round_trips = 0;
    for _ in 0..500 {
        let a = BigInt::from(rng.gen_range(-(1i64 << 20)..(1i64 << 20)));
        let b = BigInt::from(rng.gen_range(1i64..(1i64 << 20)));
        let g = (&a * b.modpow(&(&prime - 2), &prime)) % &prime;
        let want = BigRational::new(a, b);
        round_trips += usize::from(rational_reconstruct(&g, &prime, &budget).ok() == Some(want));
    }
    let secs = t.elapsed().as_secs_f64();
    Outcome {
        pass: points_ok && round_trips == 500 && secs < 30.0,
        detail: format!(
            "degree-4 fiber pulls back to {{(1,2),(2,1),(-1,-2),(-2,-1)}}: {points_ok} ({solve_secs:.2} s); {round_trips}/500 fractions round-trip; {secs:.2} s"
        ),
    }
}

fn criterion_probability(tally: &mut Tally) -> Outcome {
    let (n, r, d, delta) = (2u64, 2u64, 2u64, 4u64);
    let threshold = 4 * 100 * n * n * r * d * delta.pow(3);
    let p = 1_000_003u64;
    assert!(p >= threshold);
    let k = PrimeField::new(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = 0;
    for seed in 0..200 {
        let spec = system(
            2,
            &format!("Fp:{p}"),
            &[dense(2, 2, &mut rng), dense(2, 2, &mut rng)],
        );
        let cfg = SolveConfig {
            seed,
            max_retries: 0,
            ..SolveConfig::default()
        };
        match solve_finite(&k, &spec, &cfg) {
            Ok(FiniteSolution::Base(rep)) => {
                tally.record("C7", verify(&k, &spec, &rep.fiber).passed())
            }
            Ok(FiniteSolution::Extended { field, report, .. }) => {
                tally.record("C7", verify(&field, &spec, &report.fiber).passed())
            }
            Err(_) => failures += 1,
        }
    }
    let rate = failures as f64 / 200.0;
    Outcome {
        pass: rate <= 0.25,
        detail: format!("{failures}/200 single attempts failed (rate {rate:.3}, bound 0.25) at p = {p} >= {threshold}"),
    }
}

fn criterion_scaling() -> Outcome {
    let sweep = Sweep::parse("n=2;d=4,8,16,32").unwrap();
    let rows = bench_rows(&sweep, 1);
    let csv = bench_csv(&rows);
    let path = concat!(env!("CARGO_TARGET_TMPDIR"), "/ladder.csv");
    let _ = std::fs::write(path, &csv);
    let mut ratios = Vec::new();
    for w in rows.windows(2) {
        ratios.push(w[1].wall_us as f64 / w[0].wall_us.max(1) as f64);
    }
    let all_ok = rows.iter().all(|r| r.degree.is_some());
    let mut detail = String::new();
    for (w, ratio) in rows.windows(2).zip(&ratios) {
        let _ = write!(
            detail,
            "delta {}->{}: x{ratio:.2}; ",
            w[0].delta, w[1].delta
        );
    }
    let _ = write!(detail, "csv at {path} (trend only, not gated)");
    Outcome {
        pass: all_ok && ratios.iter().all(|&r| r <= 6.0),
        detail,
    }
}

fn main() {
    let mut tally = Tally::default();
    let c1 = criterion_oracle(&mut tally);
    let c3 = criterion_newton(&mut tally);
    let c4 = criterion_gradient();
    let c5 = criterion_squarefree_and_splitting();
    let c6 = criterion_rationals(&mut tally);
    let c7 = criterion_probability(&mut tally);
    // Runs last so that it sees every success recorded above.
    let c2 = criterion_verification(&mut tally);
    let c8 = criterion_scaling();
    let results = [
        ("1 oracle equivalence", c1, true),
        ("2 unconditional verification", c2, true),
        ("3 newton-lift exactness", c3, true),
        ("4 gradient oracle", c4, true),
        ("5 square-free and splitting suites", c5, true),
        ("6 rational end-to-end", c6, true),
        ("7 probability probe", c7, true),
        ("8 scaling probe", c8, false),
    ];
    let mut failed = false;
    for (name, o, gated) in &results {
        println!(
            "{} criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed |= *gated && !o.pass;
    }
    if failed {
        std::process::exit(1);
    }
}
