//! Inputs shared by the criterion benches.

use nilbniz_core::{fuzz, presets, MultiIndex, StructureTensor};

/// `(name, tensor, α)` triples spanning the common workloads.
pub fn workloads() -> Vec<(&'static str, StructureTensor, MultiIndex)> {
    vec![
        ("h1_t4", presets::heisenberg(1), MultiIndex::new(vec![0, 0, 4])),
        ("h2_mixed", presets::heisenberg(2), MultiIndex::new(vec![1, 0, 1, 0, 2])),
        ("h3_t3", presets::heisenberg(3), MultiIndex::new(vec![0, 0, 0, 0, 0, 0, 3])),
        (
            "fuzz_6_4",
            fuzz::seeded_tensor(6, 4, 0.8, 42).expect("valid fuzz parameters"),
            MultiIndex::new(vec![1, 0, 1, 0, 1, 1]),
        ),
    ]
}
