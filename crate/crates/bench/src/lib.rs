//! Criterion benchmarks for the solver; see `benches/solver.rs`.
//!
//! `cargo bench -p geores-bench` runs the degree ladder over `F_{2^61-1}`,
//! derivative programs and the rational lift.
