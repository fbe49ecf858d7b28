//! Benchmarks for the subset-lattice searches; see `benches/search.rs`.
