//! Benchmark-only crate; the targets live in benches/core.rs. Run with
//! `cargo bench -p reduction-bench`.
