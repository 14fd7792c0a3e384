//! Fixtures shared by the benchmarks.

use gelfand_core::{make_cyclic, make_symmetric, FiniteGroup};

/// Base groups benchmarked in wreath products, smallest first.
pub fn bases() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("Z2", make_cyclic(2).expect("Z2")),
        ("Z3", make_cyclic(3).expect("Z3")),
        ("S3", make_symmetric(3).expect("S3")),
    ]
}
