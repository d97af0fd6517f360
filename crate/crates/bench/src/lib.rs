//! Criterion benchmarks for the halftwist engine; see `benches/state_sum.rs`.
