//! Benchmarks for `gfusion-core` live in `benches/`.
