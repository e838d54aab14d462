use geores::kronecker::{solve_finite, verify, Fiber, FiniteSolution, SolveConfig};
use geores::oracle::{brute_zeros, minpoly_of_form, PointSet};
use geores::rational_lift::solve_over_q;
use geores::ring::{FiniteField, PrimeField};
use geores::slp::{parse_epsilon, SystemSpec};
use proptest::prelude::*;

fn system(n: usize, field: &str, f: &[&str], g: Option<&str>) -> SystemSpec {
    let eps = parse_epsilon("1/100").unwrap();
    SystemSpec::from_polys(n, field.parse().unwrap(), eps, f, g).unwrap()
}

fn agrees<K: FiniteField>(k: &K, fiber: &Fiber<K>, zeros: &PointSet<K::Elem>) -> bool {
    let form = &fiber.lambda[fiber.n - fiber.level];
    zeros.len() == fiber.degree() && minpoly_of_form(k, zeros, form) == fiber.m
}

fn solve_and_compare(p: u64, spec: &SystemSpec, seed: u64) -> Result<(), TestCaseError> {
    let k = PrimeField::new(p).unwrap();
    let zeros = brute_zeros(&k, spec).unwrap();
    let cfg = SolveConfig {
        seed,
        ..SolveConfig::default()
    };
    match solve_finite(&k, spec, &cfg).unwrap() {
        FiniteSolution::Base(rep) => {
            prop_assert!(verify(&k, spec, &rep.fiber).passed());
            prop_assert!(agrees(&k, &rep.fiber, &zeros));
        }
        FiniteSolution::Extended { report, .. } => {
            prop_assert_eq!(report.fiber.degree(), zeros.len());
        }
    }
    Ok(())
}

#[test]
fn saturation_removes_the_zeros_of_g() {
    let spec = system(2, "Fp:1009", &["x1*(x1-1)*(x1-2)", "x2-x1^2"], Some("x1"));
    solve_and_compare(1009, &spec, 3).unwrap();
}

#[test]
fn univariate_roots() {
    let spec = system(1, "Fp:10007", &["(x1-3)*(x1-5)*(x1+7)"], None);
    solve_and_compare(10007, &spec, 1).unwrap();
}

#[test]
fn rational_fiber_has_four_points() {
    let spec = system(2, "Q", &["x1^2+x2^2-5", "x1*x2-2"], None);
    let sol = solve_over_q(&spec, &SolveConfig::default()).unwrap();
    assert_eq!(sol.fiber.degree(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn products_of_lines_match_enumeration(
        a in proptest::collection::vec((1i64..50, 1i64..50, 0i64..50), 1..3),
        b in proptest::collection::vec((1i64..50, -50i64..-1, 0i64..50), 1..3),
        seed in any::<u64>(),
    ) {
        let text = |ls: &[(i64, i64, i64)]| {
            ls.iter()
                .map(|(u, v, w)| format!("({u}*x1+({v})*x2+({w}))"))
                .collect::<Vec<_>>()
                .join("*")
        };
        let (f1, f2) = (text(&a), text(&b));
        let spec = system(2, "Fp:1009", &[&f1, &f2], None);
        // Rarely a pair of lines coincides mod p.
        let k = PrimeField::new(1009).unwrap();
        prop_assume!(brute_zeros(&k, &spec).unwrap().len() <= a.len() * b.len());
        solve_and_compare(1009, &spec, seed)?;
    }
}
