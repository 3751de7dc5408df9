//! Benchmark harness behind the `qaoa-bench` binary: instance generation,
//! seeded QAOA runs with approximation-ratio statistics, compiled-depth
//! curves, and per-instance self checks.

pub mod bench;
pub mod depth;
pub mod generate;
pub mod instance;
pub mod summary;
pub mod verify;

pub use bench::{cmd_bench, BenchOptions, BenchOutcome, BenchRecord, Timing};
pub use depth::{cmd_depth, DepthRow};
pub use generate::{cmd_generate, DEFAULT_SIZES};
pub use instance::Instance;
pub use summary::{population_std, summarize, SummaryRow};
pub use verify::{cmd_verify, Check, VerifyReport};
