//! Criterion benchmarks for the skew-incidence library; see `benches/`.
