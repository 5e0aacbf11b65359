//! Inputs shared by the benchmarks.

use homlor::{make_family, Family, WeightedGraph};

pub fn family(kind: Family, params: &[usize]) -> WeightedGraph {
    make_family(kind, params).expect("valid family")
}

/// A 3-vertex antiferromagnetic target with two distinct edge weights.
pub fn g0() -> WeightedGraph {
    WeightedGraph::from_int_matrix(&[&[0, 0, 1], &[0, 0, 2], &[1, 2, 0]]).expect("symmetric")
}
