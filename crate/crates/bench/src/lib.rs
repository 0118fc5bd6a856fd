//! This crate only hosts the criterion benchmarks in `benches/`.
