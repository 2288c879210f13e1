//! Criterion benchmarks for abl-core; see `benches/`.
