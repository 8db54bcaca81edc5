//! Benchmark-only crate; see `benches/compute.rs`.
