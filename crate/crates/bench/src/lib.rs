//! Benchmark support crate; see `benches/toolkit.rs`.
