use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use geores::kronecker::{solve_finite, SolveConfig};
use geores::rational_lift::solve_over_q;
use geores::ring::PrimeField;
use geores::slp::{gradient, parse_epsilon, SystemSpec};
use geores_cli::{ladder_system, LADDER_PRIME};

fn ladder(c: &mut Criterion) {
    let k = PrimeField::new(LADDER_PRIME).unwrap();
    let mut g = c.benchmark_group("ladder_n2");
    g.sample_size(10);
    for d in [2usize, 4, 8, 16] {
        let spec = ladder_system(2, d, 1);
        let cfg = SolveConfig {
            seed: 1,
            ..SolveConfig::default()
        };
        g.bench_with_input(
            BenchmarkId::from_parameter(spec.delta()),
            &spec,
            |b, spec| b.iter(|| solve_finite(&k, spec, &cfg).unwrap()),
        );
    }
    g.finish();

    let mut g = c.benchmark_group("ladder_n3");
    g.sample_size(10);
    for d in [2usize, 4] {
        let spec = ladder_system(3, d, 1);
        let cfg = SolveConfig {
            seed: 1,
            ..SolveConfig::default()
        };
        g.bench_with_input(
            BenchmarkId::from_parameter(spec.delta()),
            &spec,
            |b, spec| b.iter(|| solve_finite(&k, spec, &cfg).unwrap()),
        );
    }
    g.finish();
}

fn derivatives(c: &mut Criterion) {
    let k = PrimeField::new(LADDER_PRIME).unwrap();
    let spec = ladder_system(4, 6, 3);
    let grad = gradient(&spec.slp, 0);
    let x: Vec<u64> = (1..=4).map(|i| i * 1_000_003).collect();
    c.bench_function("evaluate_f1", |b| b.iter(|| spec.slp.evaluate_int(&k, &x)));
    c.bench_function("evaluate_gradient", |b| {
        b.iter(|| grad.evaluate_int(&k, &x))
    });
    c.bench_function("build_gradient", |b| b.iter(|| gradient(&spec.slp, 0)));
}

fn rational(c: &mut Criterion) {
    let eps = parse_epsilon("0.01").unwrap();
    let four = SystemSpec::from_polys(
        2,
        "Q".parse().unwrap(),
        eps,
        &["x1^2 + x2^2 - 5", "x1*x2 - 2"],
        None,
    )
    .unwrap();
    let cfg = SolveConfig {
        seed: 2,
        ..SolveConfig::default()
    };
    let mut g = c.benchmark_group("rational");
    g.sample_size(10);
    g.bench_function("four_points", |b| {
        b.iter(|| solve_over_q(&four, &cfg).unwrap())
    });
    g.finish();
}

criterion_group!(benches, ladder, derivatives, rational);
criterion_main!(benches);
