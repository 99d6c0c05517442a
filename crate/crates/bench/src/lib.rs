//! Criterion benchmarks for `catgame-core`; see `benches/`.
