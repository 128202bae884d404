//! Benchmark-only crate; the criterion suites live under `benches/`.
