//! Criterion benchmarks for the region and threshold routines; see `benches/`.
