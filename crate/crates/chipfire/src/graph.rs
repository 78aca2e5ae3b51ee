//! The weighted-graph data model and its derived quantities.
//!
//! A weighted graph is a finite connected multigraph (no loops) with
//! positive integer weights on vertices and edges, subject to the
//! divisibility rule: the weight of an edge divides the weight of each of
//! its endpoints. From the weights we derive
//!
//! - the *weighted valency* `val(v) = sum over e at v of w(v)/w(e)`,
//! - the *charge* `c(v) = lcm of all vertex weights / w(v)` (the graph
//!   charge `c(G)` is the lcm itself), and
//! - the *weighted Laplacian* `L` with `L[i][i] = val(v_i)` and
//!   `L[i][j] = -(chips received by v_i when v_j lends once)` for `i != j`.
//!
//! Lending once at `v` sends `w(v)/w(e)` chips along each incident edge
//! `e`; a script `s` of net lending moves turns a divisor `D` into
//! `D - L*s`. The Laplacian is asymmetric in general, every column sums to
//! zero, and the charges vector generates its kernel.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::divisor::{Divisor, FiringScript};

/// Serializable graph description, mirroring the JSON graph file format:
///
/// ```json
/// {"vertices":[{"id":"v1","weight":2}],
///  "edges":[{"u":"v1","v":"v3","weight":1,"mult":1}]}
/// ```
///
/// `weight` defaults to 1 on vertices and edges, `mult` defaults to 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<VertexSpec>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSpec {
    pub id: String,
    #[serde(default = "one")]
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub u: String,
    pub v: String,
    #[serde(default = "one")]
    pub weight: i64,
    #[serde(default = "one")]
    pub mult: i64,
}

fn one() -> i64 {
    1
}

impl GraphSpec {
    /// Shorthand for building a spec from `(id, weight)` vertices and
    /// `(u, v, weight)` single edges.
    pub fn from_parts(vertices: &[(&str, i64)], edges: &[(&str, &str, i64)]) -> GraphSpec {
        GraphSpec {
            vertices: vertices
                .iter()
                .map(|&(id, weight)| VertexSpec { id: id.to_owned(), weight })
                .collect(),
            edges: edges
                .iter()
                .map(|&(u, v, weight)| EdgeSpec {
                    u: u.to_owned(),
                    v: v.to_owned(),
                    weight,
                    mult: 1,
                })
                .collect(),
        }
    }
}

/// Validation failure when building a [`WeightedGraph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("duplicate vertex id {id:?}")]
    DuplicateVertexId { id: String },
    #[error("edge references unknown vertex {id:?}")]
    UnknownVertex { id: String },
    #[error("vertex {id:?} has non-positive weight {weight}")]
    NonPositiveWeight { id: String, weight: i64 },
    #[error("edge {u:?}-{v:?} has non-positive weight {weight}")]
    NonPositiveEdgeWeight { u: String, v: String, weight: i64 },
    #[error("edge {u:?}-{v:?} has non-positive multiplicity {mult}")]
    NonPositiveMultiplicity { u: String, v: String, mult: i64 },
    #[error("edge at {id:?} is a loop")]
    LoopEdge { id: String },
    #[error(
        "edge {u:?}-{v:?} of weight {edge_weight} does not divide the weight \
         {vertex_weight} of its endpoint {endpoint:?}"
    )]
    DivisibilityViolation {
        u: String,
        v: String,
        edge_weight: i64,
        endpoint: String,
        vertex_weight: i64,
    },
    #[error("graph is not connected: vertex {id:?} is unreachable from {root:?}")]
    DisconnectedGraph { id: String, root: String },
    #[error(
        "edge {u:?}-{v:?} has multiplicity {mult}; graphs used under a group \
         action must list parallel edges as separate entries"
    )]
    ImplicitMultiplicity { u: String, v: String, mult: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub weight: i64,
}

/// An undirected edge between distinct vertex indices, stored once with an
/// explicit parallel-edge multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: i64,
    pub mult: i64,
}

/// The weighted Laplacian, a dense `n x n` integer matrix in row-major
/// order. `apply` realizes a firing script as its principal divisor `L*s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laplacian {
    n: usize,
    entries: Vec<i64>,
}

impl Laplacian {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// The principal divisor `L*s` of a firing script.
    pub fn apply(&self, s: &FiringScript) -> Divisor {
        assert_eq!(s.len(), self.n, "script length must match vertex count");
        let values = (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(s.counts())
                    .map(|(l, x)| l * x)
                    .sum()
            })
            .collect();
        Divisor::new(values)
    }
}

/// A validated weighted graph with dense vertex indices in listed order.
///
/// The graph is immutable after construction; the Laplacian and the charges
/// are computed eagerly and cached. All operations are pure, so a shared
/// reference can serve any number of concurrent callers.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    index_of: HashMap<String, usize>,
    neighbors: Vec<Vec<usize>>,
    laplacian: Laplacian,
    charges: Vec<i64>,
    graph_charge: i64,
}

impl WeightedGraph {
    /// Validates a description and builds the graph, or reports the first
    /// offending element.
    pub fn from_spec(spec: &GraphSpec) -> Result<WeightedGraph, BuildError> {
        if spec.vertices.is_empty() {
            return Err(BuildError::EmptyGraph);
        }
        let mut index_of = HashMap::new();
        let mut vertices = Vec::with_capacity(spec.vertices.len());
        for v in &spec.vertices {
            if v.weight <= 0 {
                return Err(BuildError::NonPositiveWeight { id: v.id.clone(), weight: v.weight });
            }
            if index_of.insert(v.id.clone(), vertices.len()).is_some() {
                return Err(BuildError::DuplicateVertexId { id: v.id.clone() });
            }
            vertices.push(Vertex { id: v.id.clone(), weight: v.weight });
        }

        let mut edges = Vec::with_capacity(spec.edges.len());
        for e in &spec.edges {
            let u = *index_of
                .get(&e.u)
                .ok_or_else(|| BuildError::UnknownVertex { id: e.u.clone() })?;
            let v = *index_of
                .get(&e.v)
                .ok_or_else(|| BuildError::UnknownVertex { id: e.v.clone() })?;
            if e.weight <= 0 {
                return Err(BuildError::NonPositiveEdgeWeight {
                    u: e.u.clone(),
                    v: e.v.clone(),
                    weight: e.weight,
                });
            }
            if e.mult <= 0 {
                return Err(BuildError::NonPositiveMultiplicity {
                    u: e.u.clone(),
                    v: e.v.clone(),
                    mult: e.mult,
                });
            }
            if u == v {
                return Err(BuildError::LoopEdge { id: e.u.clone() });
            }
            for endpoint in [u, v] {
                if vertices[endpoint].weight % e.weight != 0 {
                    return Err(BuildError::DivisibilityViolation {
                        u: e.u.clone(),
                        v: e.v.clone(),
                        edge_weight: e.weight,
                        endpoint: vertices[endpoint].id.clone(),
                        vertex_weight: vertices[endpoint].weight,
                    });
                }
            }
            edges.push(Edge { u, v, weight: e.weight, mult: e.mult });
        }

        let n = vertices.len();
        let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &edges {
            neighbors[e.u].push(e.v);
            neighbors[e.v].push(e.u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
        }

        // Connectivity from the first-listed vertex.
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &neighbors[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(BuildError::DisconnectedGraph {
                id: vertices[v].id.clone(),
                root: vertices[0].id.clone(),
            });
        }

        let graph_charge = vertices.iter().fold(1i64, |acc, v| lcm(acc, v.weight));
        let charges: Vec<i64> = vertices.iter().map(|v| graph_charge / v.weight).collect();

        // L[i][i] = val(v_i); L[i][j] = -(chips sent to v_i per lending
        // move at v_j), summed with multiplicity.
        let mut entries = vec![0i64; n * n];
        for e in &edges {
            let to_v = e.mult * (vertices[e.u].weight / e.weight);
            let to_u = e.mult * (vertices[e.v].weight / e.weight);
            entries[e.u * n + e.u] += to_v;
            entries[e.v * n + e.v] += to_u;
            entries[e.v * n + e.u] -= to_v;
            entries[e.u * n + e.v] -= to_u;
        }
        let laplacian = Laplacian { n, entries };

        Ok(WeightedGraph {
            vertices,
            edges,
            index_of,
            neighbors,
            laplacian,
            charges,
            graph_charge,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.index_of.get(id).copied()
    }

    pub fn vertex_weight(&self, v: usize) -> i64 {
        self.vertices[v].weight
    }

    /// Distinct neighbors of `v`, in increasing index order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Weighted valency: total chips `v` sends out per lending move.
    pub fn weighted_valency(&self, v: usize) -> i64 {
        self.laplacian.entry(v, v)
    }

    /// Chips received by `to` when `from` lends once, summed with
    /// multiplicity over all connecting edges. Zero for non-neighbors.
    pub fn transfer(&self, from: usize, to: usize) -> i64 {
        assert_ne!(from, to, "transfer requires distinct vertices");
        -self.laplacian.entry(to, from)
    }

    /// lcm of all vertex weights.
    pub fn graph_charge(&self) -> i64 {
        self.graph_charge
    }

    /// Charge of a vertex: `graph_charge / w(v)`.
    pub fn charge(&self, v: usize) -> i64 {
        self.charges[v]
    }

    /// Charges of all vertices, in vertex order.
    pub fn charges(&self) -> &[i64] {
        &self.charges
    }

    pub fn laplacian(&self) -> &Laplacian {
        &self.laplacian
    }

    /// Applies a firing script: returns `d - L*s`. Degree is preserved.
    pub fn apply_script(&self, d: &Divisor, s: &FiringScript) -> Divisor {
        assert_eq!(d.len(), self.vertex_count(), "divisor length must match vertex count");
        d - &self.laplacian.apply(s)
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexSpec { id: v.id.clone(), weight: v.weight })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    u: self.vertices[e.u].id.clone(),
                    v: self.vertices[e.v].id.clone(),
                    weight: e.weight,
                    mult: e.mult,
                })
                .collect(),
        }
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn quotient_triangle_builds_and_derives() {
        // Vertices (1,2,2) with edge weights (1,1,2) on a triangle.
        let g = fixtures::weighted_triangle();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.graph_charge(), 2);
        assert_eq!(g.charges(), &[2, 1, 1]);
        assert_eq!(g.weighted_valency(0), 2);
        assert_eq!(g.weighted_valency(1), 3);
        assert_eq!(g.weighted_valency(2), 3);
        assert_eq!(
            g.laplacian().rows(),
            vec![vec![2, -2, -2], vec![-1, 3, -1], vec![-1, -1, 3]]
        );
    }

    #[test]
    fn single_vertex_graph_is_valid() {
        let g = WeightedGraph::from_spec(&GraphSpec::from_parts(&[("v", 1)], &[])).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.laplacian().rows(), vec![vec![0]]);
        assert_eq!(g.charges(), &[1]);
    }

    #[test]
    fn divisibility_violation_names_the_edge() {
        let spec = GraphSpec::from_parts(&[("a", 2), ("b", 1)], &[("a", "b", 2)]);
        match WeightedGraph::from_spec(&spec) {
            Err(BuildError::DivisibilityViolation { edge_weight: 2, endpoint, .. }) => {
                assert_eq!(endpoint, "b");
            }
            other => panic!("expected divisibility violation, got {other:?}"),
        }
    }

    #[test]
    fn loops_and_disconnections_are_rejected() {
        let spec = GraphSpec::from_parts(&[("a", 1)], &[("a", "a", 1)]);
        assert!(matches!(WeightedGraph::from_spec(&spec), Err(BuildError::LoopEdge { .. })));

        let spec = GraphSpec::from_parts(&[("a", 1), ("b", 1), ("c", 1)], &[("a", "b", 1)]);
        match WeightedGraph::from_spec(&spec) {
            Err(BuildError::DisconnectedGraph { id, root }) => {
                assert_eq!(id, "c");
                assert_eq!(root, "a");
            }
            other => panic!("expected disconnected graph, got {other:?}"),
        }
    }

    #[test]
    fn non_positive_weights_are_rejected() {
        let spec = GraphSpec::from_parts(&[("a", 0)], &[]);
        assert!(matches!(
            WeightedGraph::from_spec(&spec),
            Err(BuildError::NonPositiveWeight { .. })
        ));
        let spec = GraphSpec::from_parts(&[("a", 1), ("b", 1)], &[("a", "b", -1)]);
        assert!(matches!(
            WeightedGraph::from_spec(&spec),
            Err(BuildError::NonPositiveEdgeWeight { .. })
        ));
    }

    #[test]
    fn star_laplacian_and_charges() {
        let g = fixtures::weighted_star();
        assert_eq!(
            g.laplacian().rows(),
            vec![
                vec![2, 0, -1, 0],
                vec![0, 2, -1, 0],
                vec![-2, -2, 3, -1],
                vec![0, 0, -1, 1],
            ]
        );
        assert_eq!(g.charges(), &[1, 1, 2, 2]);
        // Kernel membership of the charges vector.
        let principal = g.laplacian().apply(&FiringScript::new(vec![1, 1, 2, 2]));
        assert_eq!(principal, Divisor::zeros(4));
    }

    #[test]
    fn diamond_laplacian_and_charges() {
        let g = fixtures::weighted_diamond();
        assert_eq!(g.weighted_valency(1), 5);
        assert_eq!(g.charges(), &[1, 1, 2, 1]);
        let principal = g.laplacian().apply(&FiringScript::new(vec![1, 1, 2, 1]));
        assert_eq!(principal, Divisor::zeros(4));
    }

    #[test]
    fn unweighted_valency_is_edge_count() {
        let g = fixtures::chorded_pentagon();
        assert_eq!(g.weighted_valency(0), 3);
        assert_eq!(g.weighted_valency(1), 2);
        assert_eq!(g.charges(), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn script_application_matches_figures() {
        let star = fixtures::weighted_star();
        let d = Divisor::new(vec![1, 0, 0, -1]);
        let s = FiringScript::new(vec![1, 0, 1, 1]);
        assert_eq!(star.apply_script(&d, &s), Divisor::new(vec![0, 1, 0, -1]));

        let tri = fixtures::weighted_triangle();
        let lend_at_b = FiringScript::unit(3, 1);
        assert_eq!(
            tri.apply_script(&Divisor::zeros(3), &lend_at_b),
            Divisor::new(vec![2, -3, 1])
        );

        // The zero script is the identity.
        let d = Divisor::new(vec![5, -2, 7]);
        assert_eq!(tri.apply_script(&d, &FiringScript::zeros(3)), d);
    }

    #[test]
    fn transfer_counts_parallel_edges() {
        let spec = GraphSpec {
            vertices: vec![
                VertexSpec { id: "a".into(), weight: 2 },
                VertexSpec { id: "b".into(), weight: 2 },
            ],
            edges: vec![EdgeSpec { u: "a".into(), v: "b".into(), weight: 1, mult: 3 }],
        };
        let g = WeightedGraph::from_spec(&spec).unwrap();
        assert_eq!(g.transfer(0, 1), 6);
        assert_eq!(g.weighted_valency(0), 6);
    }
}
