//! Library side of the `geores` command: documents, subcommands and the
//! benchmark workload.

pub mod commands;
pub mod document;
pub mod workload;

pub use commands::{
    bench_csv, bench_rows, load_system, oracle_check, solve, verify_document, BenchRow, CliError,
    OracleReport, SolveOptions, VerifyOutput, BENCH_HEADER,
};
pub use document::{Codec, DocError, FiberDocument, Metadata, Timings};
pub use workload::{ladder_system, Sweep, LADDER_PRIME};
