//! Benchmark-only crate; see `benches/recognize.rs`.
