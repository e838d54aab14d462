use std::fmt::Write as _;
use std::time::Instant;

use geores::kronecker::{
    solve_finite, solve_in, verify, Fiber, FiniteSolution, SolveConfig, SolveError, VerifyReport,
};
use geores::oracle::{
    brute_zeros, fiber_points, minpoly_of_form, rational_points, same_points, OracleError, PointSet,
};
use geores::poly::PolyRing;
use geores::rational_lift::solve_over_q;
use geores::ring::{ExtField, Field, FieldEmbedding, FiniteField, PrimeField, RingDescriptor};
use geores::slp::{ParseError, SystemSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::document::{Codec, DocError, DocField, FiberDocument, Metadata};
use crate::workload::{ladder_system, Sweep};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Document(#[from] DocError),
    #[error("field mismatch: document is for {document}, system is over {system}")]
    FieldMismatch { document: String, system: String },
    #[error("{0}")]
    Usage(String),
    #[error("oracle: {0}")]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Solve(#[from] SolveError),
    #[error("verification failed: {0}")]
    Rejected(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_)
            | CliError::Parse(_)
            | CliError::Document(_)
            | CliError::FieldMismatch { .. }
            | CliError::Usage(_)
            | CliError::Oracle(_) => 2,
            CliError::Solve(SolveError::RetriesExhausted { .. }) => 3,
            CliError::Solve(SolveError::EmptyVariety) => 4,
            CliError::Solve(SolveError::FieldTooSmall { .. }) => 5,
            CliError::Solve(_) | CliError::Rejected(_) => 1,
        }
    }

    /// Short machine-readable name.
    pub fn kind(&self) -> String {
        match self {
            CliError::Io(_) => "Io".into(),
            CliError::Parse(_) => "Parse".into(),
            CliError::Document(_) => "Document".into(),
            CliError::FieldMismatch { .. } => "FieldMismatch".into(),
            CliError::Usage(_) => "Usage".into(),
            CliError::Oracle(OracleError::TooLarge { .. }) => "TooLarge".into(),
            CliError::Rejected(_) => "VerificationFailed".into(),
            CliError::Solve(e) => format!("{e:?}")
                .split(['(', ' ', '{'])
                .next()
                .unwrap_or("Solve")
                .to_string(),
        }
    }

    /// One-line JSON for standard error.
    pub fn to_json(&self) -> String {
        let cause = match self {
            CliError::Solve(SolveError::RetriesExhausted { last, .. }) => Some(last.to_string()),
            _ => None,
        };
        serde_json::json!({
            "error": self.kind(),
            "message": self.to_string(),
            "cause": cause,
            "exit_code": self.exit_code(),
        })
        .to_string()
    }
}

/// Solver options shared by the subcommands.
#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub seed: Option<u64>,
    pub epsilon: Option<String>,
    pub delta_bound: Option<u64>,
    pub retries: Option<u32>,
    pub check_curves: bool,
    /// Fail with `FieldTooSmall` instead of moving to an extension field.
    pub no_extension: bool,
}

impl SolveOptions {
    pub fn config(&self, spec: &SystemSpec) -> Result<SolveConfig, CliError> {
        let mut cfg = SolveConfig {
            epsilon: spec.epsilon.clone(),
            delta_bound: spec.delta_bound,
            check_curves: self.check_curves,
            ..SolveConfig::default()
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(e) = &self.epsilon {
            cfg.epsilon = geores::slp::parse_epsilon(e)
                .ok_or_else(|| CliError::Usage(format!("epsilon must lie in (0, 1), got {e:?}")))?;
        }
        if self.delta_bound.is_some() {
            cfg.delta_bound = self.delta_bound;
        }
        if let Some(k) = self.retries {
            cfg.max_retries = k;
        }
        Ok(cfg)
    }
}

pub fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

pub fn load_system(path: &str) -> Result<SystemSpec, CliError> {
    Ok(SystemSpec::parse(&read_file(path)?)?)
}

fn finite_document<F: FiniteField + Codec>(
    spec: &SystemSpec,
    cfg: &SolveConfig,
    sol: &FiniteSolution<F>,
    k: &F,
) -> FiberDocument {
    let meta = Metadata::from_stats(cfg.seed, sol.stats());
    match sol {
        FiniteSolution::Base(rep) => FiberDocument::from_fiber(k, &spec.field, &rep.fiber, meta),
        FiniteSolution::Extended { field, report, .. } => {
            FiberDocument::from_fiber(field, &spec.field, &report.fiber, meta)
        }
    }
}

fn solve_over<F: FiniteField + Codec>(
    k: &F,
    spec: &SystemSpec,
    cfg: &SolveConfig,
    no_extension: bool,
) -> Result<FiberDocument, CliError> {
    let sol = if no_extension {
        FiniteSolution::Base(solve_in(k, spec, cfg)?)
    } else {
        solve_finite(k, spec, cfg)?
    };
    Ok(finite_document(spec, cfg, &sol, k))
}

/// Solves `spec` over its declared field.
pub fn solve(spec: &SystemSpec, opts: &SolveOptions) -> Result<FiberDocument, CliError> {
    let cfg = opts.config(spec)?;
    match &spec.field {
        RingDescriptor::PrimeField { p } => {
            let k = PrimeField::new(*p).map_err(|e| CliError::Usage(e.to_string()))?;
            solve_over(&k, spec, &cfg, opts.no_extension)
        }
        d @ RingDescriptor::ExtensionField { .. } => {
            let k = d
                .build_extension()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            solve_over(&k, spec, &cfg, opts.no_extension)
        }
        RingDescriptor::Rationals => {
            let sol = solve_over_q(spec, &cfg)?;
            let mut meta = Metadata::from_stats(cfg.seed, &sol.stats);
            meta.prime = Some(sol.prime);
            meta.precision = Some(sol.exponent);
            Ok(FiberDocument::from_fiber(
                &geores::ring::RationalField,
                &spec.field,
                &sol.fiber,
                meta,
            ))
        }
        d @ RingDescriptor::ResidueRing { .. } => Err(CliError::Usage(format!(
            "cannot solve over {d}: not a field"
        ))),
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutput {
    pub passed: bool,
    /// (a) `m` monic and squarefree, shapes consistent.
    pub minimal_polynomial: bool,
    /// (b) every equation vanishes through the parametrization.
    pub equations: Vec<bool>,
    /// (c) `G` is a unit modulo `m`.
    pub g_nonvanishing: bool,
    /// (d) `w_i = m' v_i mod m`.
    pub numerators: bool,
    pub failures: Vec<String>,
}

impl From<&VerifyReport> for VerifyOutput {
    fn from(r: &VerifyReport) -> Self {
        VerifyOutput {
            passed: r.passed(),
            minimal_polynomial: r.well_formed && r.squarefree,
            equations: r.equations.clone(),
            g_nonvanishing: r.g_nonvanishing,
            numerators: r.numerators,
            failures: r.failures(),
        }
    }
}

fn verify_in<K: Codec>(
    k: &K,
    spec: &SystemSpec,
    doc: &FiberDocument,
) -> Result<VerifyOutput, CliError> {
    let fiber: Fiber<K> = doc.to_fiber(k)?;
    Ok(VerifyOutput::from(&verify(k, spec, &fiber)))
}

/// Checks a document against a system. The document must come from a
/// system over the same field.
pub fn verify_document(doc: &FiberDocument, spec: &SystemSpec) -> Result<VerifyOutput, CliError> {
    let mismatch = || CliError::FieldMismatch {
        document: doc.system_field.clone(),
        system: spec.field.to_string(),
    };
    let declared: RingDescriptor = doc.system_field.parse().map_err(|_| mismatch())?;
    if declared != spec.field || doc.n != spec.n || doc.r != spec.r() {
        return Err(mismatch());
    }
    match doc.doc_field()? {
        DocField::Prime(k) => {
            if spec.field != (RingDescriptor::PrimeField { p: k.modulus() }) {
                return Err(mismatch());
            }
            verify_in(&k, spec, doc)
        }
        DocField::Ext(k) => {
            let ok = match &spec.field {
                RingDescriptor::PrimeField { p } => *p == k.prime(),
                RingDescriptor::ExtensionField { p, e, .. } => {
                    *p == k.prime() && k.degree() % e == 0
                }
                _ => false,
            };
            if !ok {
                return Err(mismatch());
            }
            verify_in(&k, spec, doc)
        }
        DocField::Rational => {
            if spec.field != RingDescriptor::Rationals {
                return Err(mismatch());
            }
            verify_in(&geores::ring::RationalField, spec, doc)
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    /// `MATCH`, `MISMATCH` or `SOLVER_FAILURE`.
    pub outcome: String,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver_degree: Option<usize>,
    /// Fiber points with coordinates in the system's field, per the oracle.
    pub oracle_points: usize,
    /// The same, read off the solver's fiber.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl OracleReport {
    pub fn matched(&self) -> bool {
        self.outcome == "MATCH"
    }
}

/// Compares the fiber over `big` against the oracle's zeros, embedded by
/// `embed`. Only points with coordinates in the small field are compared.
fn compare<K: FiniteField>(
    big: &K,
    fiber: &Fiber<K>,
    zeros: &PointSet<K::Elem>,
    in_small: impl Fn(&K::Elem) -> bool,
    rng: &mut ChaCha8Rng,
) -> (bool, usize, usize) {
    let fixed = fiber.n - fiber.level;
    let oracle = fiber_points(
        big,
        zeros,
        &fiber.lambda[..fixed].to_vec(),
        &fiber.point[..fixed],
    );
    let Some(mut mine) = rational_points(big, fiber, rng) else {
        return (false, oracle.len(), 0);
    };
    mine.points.retain(|x| x.iter().all(&in_small));
    let form = &fiber.lambda[fixed];
    let oracle_m = minpoly_of_form(big, &oracle, form);
    let mine_m = minpoly_of_form(big, &mine, form);
    let kt = PolyRing::new(big.clone());
    let divides = kt.divides(&oracle_m, &fiber.m);
    let ok = same_points(&oracle, &mine) && oracle_m == mine_m && divides;
    (ok, oracle.len(), mine.len())
}

fn oracle_in<F: FiniteField>(
    k: &F,
    spec: &SystemSpec,
    cfg: &SolveConfig,
) -> Result<OracleReport, CliError> {
    let zeros = brute_zeros(k, spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let sol = match solve_finite(k, spec, cfg) {
        Ok(s) => s,
        Err(e) => {
            return Ok(OracleReport {
                outcome: "SOLVER_FAILURE".into(),
                field: spec.field.to_string(),
                solver_degree: None,
                oracle_points: zeros.len(),
                solver_points: None,
                error: Some(e.to_string()),
            })
        }
    };
    let (ok, o, s) = match &sol {
        FiniteSolution::Base(rep) => compare(k, &rep.fiber, &zeros, |_| true, &mut rng),
        FiniteSolution::Extended {
            field,
            embedding,
            report,
        } => {
            let embedded = embed_points(k, field, embedding, &zeros);
            compare(
                field,
                &report.fiber,
                &embedded,
                |y| embedding.restrict(k, y).is_some(),
                &mut rng,
            )
        }
    };
    Ok(OracleReport {
        outcome: if ok { "MATCH" } else { "MISMATCH" }.into(),
        field: spec.field.to_string(),
        solver_degree: Some(sol.degree()),
        oracle_points: o,
        solver_points: Some(s),
        error: None,
    })
}

fn embed_points<F: FiniteField>(
    k: &F,
    big: &ExtField,
    emb: &FieldEmbedding,
    zeros: &PointSet<F::Elem>,
) -> PointSet<Vec<u64>> {
    PointSet {
        field: big.descriptor(),
        points: zeros
            .points
            .iter()
            .map(|x| x.iter().map(|c| emb.embed(k, c)).collect())
            .collect(),
    }
}

/// Runs the solver and the brute-force oracle on a system over a small
/// finite field and compares the fibers.
pub fn oracle_check(spec: &SystemSpec, opts: &SolveOptions) -> Result<OracleReport, CliError> {
    let cfg = opts.config(spec)?;
    match &spec.field {
        RingDescriptor::PrimeField { p } => {
            let k = PrimeField::new(*p).map_err(|e| CliError::Usage(e.to_string()))?;
            oracle_in(&k, spec, &cfg)
        }
        d @ RingDescriptor::ExtensionField { .. } => {
            let k = d
                .build_extension()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            oracle_in(&k, spec, &cfg)
        }
        d => Err(CliError::Usage(format!(
            "oracle-check needs a finite field, got {d}"
        ))),
    }
}

/// One row of a benchmark sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub d: usize,
    pub delta: u64,
    pub degree: Option<usize>,
    pub attempts: u32,
    pub timings: crate::document::Timings,
    /// Wall-clock time of the whole solve in microseconds.
    pub wall_us: u64,
}

pub const BENCH_HEADER: &str = "n,d,delta,degree,attempts,ok,initial_us,lift_us,project_us,shape_us,conclude_us,total_us,ratio";

/// Runs the ladder systems of a sweep with a fixed seed.
pub fn bench_rows(sweep: &Sweep, seed: u64) -> Vec<BenchRow> {
    sweep
        .points()
        .map(|(n, d)| {
            let spec = ladder_system(n, d, seed);
            let cfg = SolveConfig {
                seed,
                ..SolveConfig::default()
            };
            let k = PrimeField::new(crate::workload::LADDER_PRIME).expect("ladder prime");
            let t = Instant::now();
            let res = solve_finite(&k, &spec, &cfg);
            let wall_us = t.elapsed().as_micros() as u64;
            let (degree, attempts, timings) = match &res {
                Ok(sol) => (
                    Some(sol.degree()),
                    sol.stats().attempts,
                    (&sol.stats().timings).into(),
                ),
                Err(_) => (None, 0, Default::default()),
            };
            BenchRow {
                n,
                d,
                delta: spec.delta(),
                degree,
                attempts,
                timings,
                wall_us,
            }
        })
        .collect()
}

/// CSV with one line per row; `ratio` is the total time over the previous
/// row's.
pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(BENCH_HEADER);
    out.push('\n');
    let mut prev: Option<u64> = None;
    for r in rows {
        let t = &r.timings;
        let ratio = match prev {
            Some(p) if p > 0 && r.degree.is_some() => format!("{:.3}", r.wall_us as f64 / p as f64),
            _ => String::new(),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.n,
            r.d,
            r.delta,
            r.degree.map(|x| x.to_string()).unwrap_or_default(),
            r.attempts,
            r.degree.is_some(),
            t.initial_us,
            t.lift_us,
            t.project_us,
            t.shape_us,
            t.conclude_us,
            r.wall_us,
            ratio
        );
        prev = r.degree.map(|_| r.wall_us);
    }
    out
}
