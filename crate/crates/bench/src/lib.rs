//! Criterion benchmarks for the l1fixed solvers; see `benches/`.
