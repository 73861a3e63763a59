//! Benchmarks for thetalab; see `benches/`.
