//! Benchmark-only crate; see `benches/certify.rs`.
