//! Criterion benchmarks for `sash-core`; see `benches/`.
