//! Small example graphs used throughout the guide and the test suite.
//!
//! Each fixture is tiny enough to work through by hand, and together they
//! exercise every corner of weighted chip-firing: multiple vertex weights,
//! a weight-2 edge, parallel-free multigraph structure, and the unweighted
//! specialization.

use crate::graph::{GraphSpec, WeightedGraph};

/// Triangle with vertex weights (1, 2, 2) and edge weights (1, 1, 2): the
/// heavier edge joins the two heavy vertices. Charges are (2, 1, 1).
pub fn weighted_triangle() -> WeightedGraph {
    let spec = GraphSpec::from_parts(
        &[("a", 1), ("b", 2), ("c", 2)],
        &[("a", "c", 1), ("a", "b", 1), ("b", "c", 2)],
    );
    WeightedGraph::from_spec(&spec).expect("fixture is valid")
}

/// Star with center `v3` (weight 1), leaves `v1`, `v2` (weight 2) and `v4`
/// (weight 1); all edges weight 1. Charges are (1, 1, 2, 2). The smallest
/// graph on which a divisor class carries two distinct q-reduced forms.
pub fn weighted_star() -> WeightedGraph {
    let spec = GraphSpec::from_parts(
        &[("v1", 2), ("v2", 2), ("v3", 1), ("v4", 1)],
        &[("v1", "v3", 1), ("v2", "v3", 1), ("v3", "v4", 1)],
    );
    WeightedGraph::from_spec(&spec).expect("fixture is valid")
}

/// Diamond (complete graph on four vertices minus the `v1`-`v4` edge) with
/// vertex weights (2, 2, 1, 2) and a weight-2 edge between `v1` and `v2`.
/// Charges are (1, 1, 2, 1).
pub fn weighted_diamond() -> WeightedGraph {
    let spec = GraphSpec::from_parts(
        &[("v1", 2), ("v2", 2), ("v3", 1), ("v4", 2)],
        &[
            ("v1", "v2", 2),
            ("v2", "v3", 1),
            ("v1", "v3", 1),
            ("v3", "v4", 1),
            ("v2", "v4", 1),
        ],
    );
    WeightedGraph::from_spec(&spec).expect("fixture is valid")
}

/// Unweighted five-cycle `u1-u2-u3-u4-u5-u1` with the chord `u1-u3`.
pub fn chorded_pentagon() -> WeightedGraph {
    let spec = GraphSpec::from_parts(
        &[("u1", 1), ("u2", 1), ("u3", 1), ("u4", 1), ("u5", 1)],
        &[
            ("u1", "u2", 1),
            ("u1", "u3", 1),
            ("u1", "u5", 1),
            ("u3", "u2", 1),
            ("u3", "u4", 1),
            ("u5", "u4", 1),
        ],
    );
    WeightedGraph::from_spec(&spec).expect("fixture is valid")
}

/// Four-cycle `a-b-c-d-a` with a single weight-2 vertex `b`; all edges
/// weight 1. Charges are (2, 1, 2, 2).
pub fn weighted_cycle() -> WeightedGraph {
    let spec = GraphSpec::from_parts(
        &[("a", 1), ("b", 2), ("c", 1), ("d", 1)],
        &[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)],
    );
    WeightedGraph::from_spec(&spec).expect("fixture is valid")
}

/// Unweighted triangle.
pub fn triangle() -> WeightedGraph {
    let spec = GraphSpec::from_parts(
        &[("v1", 1), ("v2", 1), ("v3", 1)],
        &[("v1", "v2", 1), ("v2", "v3", 1), ("v1", "v3", 1)],
    );
    WeightedGraph::from_spec(&spec).expect("fixture is valid")
}

/// Two vertices joined by a single unweighted edge.
pub fn path2() -> WeightedGraph {
    let spec = GraphSpec::from_parts(&[("v1", 1), ("v2", 1)], &[("v1", "v2", 1)]);
    WeightedGraph::from_spec(&spec).expect("fixture is valid")
}

/// One isolated vertex of weight 1; its Laplacian is the 1x1 zero matrix.
pub fn single_vertex() -> WeightedGraph {
    let spec = GraphSpec::from_parts(&[("v", 1)], &[]);
    WeightedGraph::from_spec(&spec).expect("fixture is valid")
}
