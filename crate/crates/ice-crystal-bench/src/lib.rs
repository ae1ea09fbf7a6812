//! Benchmark-only crate; see `benches/crystal.rs`.
