//! Placeholder library target. The crate exists for its `benches/` directory;
//! run `cargo bench -p asdm-bench` to exercise them.
