//! Group actions on graphs and weighted quotient construction.
//!
//! A graph is presented here with explicit half-edges: edge `k` of the
//! base graph contributes half-edges `2k` (rooted at the listed `u`) and
//! `2k+1` (rooted at `v`), named `e{k}a` and `e{k}b` in files. An action
//! is given by generators, each a permutation of the vertices and of the
//! half-edges that preserves roots and the involution. Admissible actions
//! never map a half-edge to its own partner and never map a vertex to a
//! neighbor, so the quotient has no legs or loops.
//!
//! The quotient has one vertex per vertex orbit and one edge per edge
//! orbit, weighted by stabilizer orders. With those weights the orbit-sum
//! map on divisors ([`Quotient::pushforward`]) carries principal divisors
//! to principal divisors.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::divisor::Divisor;
use crate::graph::{BuildError, EdgeSpec, GraphSpec, VertexSpec, WeightedGraph};

/// Default cap on the materialized group order during closure.
pub const DEFAULT_GROUP_ORDER_CAP: usize = 10_000;

/// A graph together with its half-edge structure. Parallel edges must be
/// listed as separate entries so that every half-edge has a name.
#[derive(Debug, Clone)]
pub struct HalfEdgeGraph {
    base: WeightedGraph,
}

impl HalfEdgeGraph {
    pub fn from_spec(spec: &GraphSpec) -> Result<HalfEdgeGraph, BuildError> {
        for e in &spec.edges {
            if e.mult != 1 {
                return Err(BuildError::ImplicitMultiplicity {
                    u: e.u.clone(),
                    v: e.v.clone(),
                    mult: e.mult,
                });
            }
        }
        Ok(HalfEdgeGraph { base: WeightedGraph::from_spec(spec)? })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.base
    }

    pub fn half_edge_count(&self) -> usize {
        2 * self.base.edges().len()
    }

    /// The edge a half-edge belongs to.
    pub fn edge_of(&self, h: usize) -> usize {
        h / 2
    }

    /// The root vertex of a half-edge.
    pub fn root(&self, h: usize) -> usize {
        let e = &self.base.edges()[h / 2];
        if h % 2 == 0 {
            e.u
        } else {
            e.v
        }
    }

    /// The involution partner of a half-edge.
    pub fn partner(&self, h: usize) -> usize {
        h ^ 1
    }

    /// File name of a half-edge: `e{k}a` / `e{k}b` by edge list order.
    pub fn half_edge_id(&self, h: usize) -> String {
        format!("e{}{}", h / 2, if h % 2 == 0 { "a" } else { "b" })
    }

    pub fn half_edge_index(&self, id: &str) -> Option<usize> {
        let side = match id.as_bytes().last()? {
            b'a' => 0,
            b'b' => 1,
            _ => return None,
        };
        let k: usize = id.strip_prefix('e')?[..id.len() - 2].parse().ok()?;
        let h = 2 * k + side;
        (h < self.half_edge_count()).then_some(h)
    }
}

/// A permutation of the vertices and half-edges of a fixed graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphPerm {
    pub vertices: Vec<usize>,
    pub half_edges: Vec<usize>,
}

impl GraphPerm {
    pub fn identity(n_vertices: usize, n_half_edges: usize) -> GraphPerm {
        GraphPerm {
            vertices: (0..n_vertices).collect(),
            half_edges: (0..n_half_edges).collect(),
        }
    }

    /// Composition `self` after `other`.
    fn compose(&self, other: &GraphPerm) -> GraphPerm {
        GraphPerm {
            vertices: other.vertices.iter().map(|&v| self.vertices[v]).collect(),
            half_edges: other.half_edges.iter().map(|&h| self.half_edges[h]).collect(),
        }
    }
}

/// A group action presented by generators.
#[derive(Debug, Clone)]
pub struct GroupAction {
    pub generators: Vec<GraphPerm>,
}

/// Serializable action description:
///
/// ```json
/// {"generators":[{"vertices":{"v1":"v4","v4":"v1"},
///                 "half_edges":{"e0a":"e3a","e3a":"e0a"}}]}
/// ```
///
/// Entries missing from a map are fixed points.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionSpec {
    pub generators: Vec<GeneratorSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(default)]
    pub vertices: BTreeMap<String, String>,
    #[serde(default)]
    pub half_edges: BTreeMap<String, String>,
}

/// Validation failure for a group action.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("generator {generator} is not a graph automorphism: {detail}")]
    NotAutomorphism { generator: usize, detail: String },
    #[error("group element #{element} maps half-edge {half_edge} to its involution")]
    HalfEdgeToInvolution { element: usize, half_edge: String },
    #[error("group element #{element} maps vertex {vertex:?} to its neighbor {image:?}")]
    VertexToNeighbor { element: usize, vertex: String, image: String },
    #[error("group closure exceeded the order cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("generator {generator} names an unknown {kind} {id:?}")]
    UnknownElement { generator: usize, kind: &'static str, id: String },
}

impl GroupAction {
    /// Resolves names in an [`ActionSpec`] against a graph.
    pub fn from_spec(g: &HalfEdgeGraph, spec: &ActionSpec) -> Result<GroupAction, ActionError> {
        let n = g.graph().vertex_count();
        let h = g.half_edge_count();
        let mut generators = Vec::with_capacity(spec.generators.len());
        for (gi, gen) in spec.generators.iter().enumerate() {
            let mut perm = GraphPerm::identity(n, h);
            for (from, to) in &gen.vertices {
                let from = g.graph().vertex_index(from).ok_or(ActionError::UnknownElement {
                    generator: gi,
                    kind: "vertex",
                    id: from.clone(),
                })?;
                let to = g.graph().vertex_index(to).ok_or(ActionError::UnknownElement {
                    generator: gi,
                    kind: "vertex",
                    id: to.clone(),
                })?;
                perm.vertices[from] = to;
            }
            for (from, to) in &gen.half_edges {
                let from = g.half_edge_index(from).ok_or(ActionError::UnknownElement {
                    generator: gi,
                    kind: "half-edge",
                    id: from.clone(),
                })?;
                let to = g.half_edge_index(to).ok_or(ActionError::UnknownElement {
                    generator: gi,
                    kind: "half-edge",
                    id: to.clone(),
                })?;
                perm.half_edges[from] = to;
            }
            generators.push(perm);
        }
        Ok(GroupAction { generators })
    }
}

/// The fully enumerated group of a validated action. Element 0 is the
/// identity.
#[derive(Debug, Clone)]
pub struct ActionGroup {
    pub elements: Vec<GraphPerm>,
}

impl ActionGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Checks that every generator is a graph automorphism (bijective,
/// root-compatible, involution-compatible), closes the generators into the
/// full group, and verifies admissibility: no element may map a half-edge
/// to its involution or a vertex to a neighbor.
pub fn validate_action(
    g: &HalfEdgeGraph,
    action: &GroupAction,
) -> Result<ActionGroup, ActionError> {
    validate_action_with_cap(g, action, DEFAULT_GROUP_ORDER_CAP)
}

pub fn validate_action_with_cap(
    g: &HalfEdgeGraph,
    action: &GroupAction,
    cap: usize,
) -> Result<ActionGroup, ActionError> {
    let n = g.graph().vertex_count();
    let nh = g.half_edge_count();

    for (gi, perm) in action.generators.iter().enumerate() {
        let fail = |detail: String| ActionError::NotAutomorphism { generator: gi, detail };
        if perm.vertices.len() != n || perm.half_edges.len() != nh {
            return Err(fail("permutation lengths do not match the graph".into()));
        }
        let mut seen = vec![false; n];
        for &v in &perm.vertices {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(fail("vertex map is not a permutation".into()));
            }
        }
        let mut seen = vec![false; nh];
        for &hh in &perm.half_edges {
            if hh >= nh || std::mem::replace(&mut seen[hh], true) {
                return Err(fail("half-edge map is not a permutation".into()));
            }
        }
        for h in 0..nh {
            if g.root(perm.half_edges[h]) != perm.vertices[g.root(h)] {
                return Err(fail(format!(
                    "image of half-edge {} is not rooted at the image of its root",
                    g.half_edge_id(h)
                )));
            }
            if perm.half_edges[g.partner(h)] != g.partner(perm.half_edges[h]) {
                return Err(fail(format!(
                    "half-edge {} does not respect the involution",
                    g.half_edge_id(h)
                )));
            }
        }
    }

    // Close the generators into the full group.
    let identity = GraphPerm::identity(n, nh);
    let mut elements = vec![identity.clone()];
    let mut known: HashSet<GraphPerm> = elements.iter().cloned().collect();
    let mut frontier = vec![identity];
    while let Some(e) = frontier.pop() {
        for gen in &action.generators {
            let next = gen.compose(&e);
            if known.insert(next.clone()) {
                if known.len() > cap {
                    return Err(ActionError::OrderCapExceeded { cap });
                }
                elements.push(next.clone());
                frontier.push(next);
            }
        }
    }

    // Admissibility over every element.
    for (ei, perm) in elements.iter().enumerate() {
        for h in 0..nh {
            if perm.half_edges[h] == g.partner(h) {
                return Err(ActionError::HalfEdgeToInvolution {
                    element: ei,
                    half_edge: g.half_edge_id(h),
                });
            }
        }
        for v in 0..n {
            let image = perm.vertices[v];
            if image != v && g.graph().neighbors(v).contains(&image) {
                return Err(ActionError::VertexToNeighbor {
                    element: ei,
                    vertex: g.graph().vertex_id(v).to_owned(),
                    image: g.graph().vertex_id(image).to_owned(),
                });
            }
        }
    }

    Ok(ActionGroup { elements })
}

/// Orbit partition and stabilizer orders of a validated action. Orbits are
/// listed by smallest member, members in increasing order; stabilizer
/// orders come from the orbit-stabilizer theorem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData {
    pub group_order: usize,
    pub vertex_orbits: Vec<Vec<usize>>,
    pub vertex_orbit_of: Vec<usize>,
    pub vertex_stabilizer_order: Vec<i64>,
    pub edge_orbits: Vec<Vec<usize>>,
    pub edge_orbit_of: Vec<usize>,
    pub edge_stabilizer_order: Vec<i64>,
}

pub fn orbits_and_stabilizers(g: &HalfEdgeGraph, group: &ActionGroup) -> OrbitData {
    let n = g.graph().vertex_count();
    let ne = g.graph().edges().len();
    let order = group.order();

    let orbit_partition = |count: usize, image: &dyn Fn(&GraphPerm, usize) -> usize| {
        let mut orbit_of = vec![usize::MAX; count];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..count {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> =
                group.elements.iter().map(|p| image(p, start)).collect();
            members.sort_unstable();
            members.dedup();
            let idx = orbits.len();
            for &m in &members {
                orbit_of[m] = idx;
            }
            orbits.push(members);
        }
        (orbits, orbit_of)
    };

    let (vertex_orbits, vertex_orbit_of) = orbit_partition(n, &|p, v| p.vertices[v]);
    let (edge_orbits, edge_orbit_of) =
        orbit_partition(ne, &|p, e| g.edge_of(p.half_edges[2 * e]));

    let stab = |orbits: &[Vec<usize>]| -> Vec<i64> {
        orbits.iter().map(|o| (order / o.len()) as i64).collect()
    };
    let vertex_stabilizer_order = stab(&vertex_orbits);
    let edge_stabilizer_order = stab(&edge_orbits);

    // Stab(e) = Stab(h) sits inside Stab(r(h)); its order divides both
    // endpoint stabilizer orders, which is what quotient divisibility
    // needs.
    for (ei, &es) in edge_stabilizer_order.iter().enumerate() {
        let e = g.graph().edges()[edge_orbits[ei][0]];
        for endpoint in [e.u, e.v] {
            debug_assert_eq!(vertex_stabilizer_order[vertex_orbit_of[endpoint]] % es, 0);
        }
    }

    OrbitData {
        group_order: order,
        vertex_orbits,
        vertex_orbit_of,
        vertex_stabilizer_order,
        edge_orbits,
        edge_orbit_of,
        edge_stabilizer_order,
    }
}

/// A weighted quotient graph together with the orbit map from the base.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub graph: WeightedGraph,
    pub orbits: OrbitData,
}

impl Quotient {
    /// Orbit-sum of a divisor on the base graph. Degree is preserved, and
    /// principal divisors map to principal divisors.
    pub fn pushforward(&self, d: &Divisor) -> Divisor {
        let mut values = vec![0i64; self.graph.vertex_count()];
        for (v, &x) in d.values().iter().enumerate() {
            values[self.orbits.vertex_orbit_of[v]] += x;
        }
        Divisor::new(values)
    }
}

/// Builds the weighted quotient: one vertex per vertex orbit weighted by
/// its stabilizer order, one edge per edge orbit weighted likewise.
/// Quotient vertices are ordered by smallest orbit member and named by
/// joining member ids with `+` (singleton orbits keep their name).
pub fn build_quotient(g: &HalfEdgeGraph, group: &ActionGroup) -> Quotient {
    let orbits = orbits_and_stabilizers(g, group);
    let base = g.graph();

    let vertices: Vec<VertexSpec> = orbits
        .vertex_orbits
        .iter()
        .zip(&orbits.vertex_stabilizer_order)
        .map(|(members, &w)| VertexSpec {
            id: members
                .iter()
                .map(|&v| base.vertex_id(v))
                .collect::<Vec<_>>()
                .join("+"),
            weight: w,
        })
        .collect();

    let edges: Vec<EdgeSpec> = orbits
        .edge_orbits
        .iter()
        .zip(&orbits.edge_stabilizer_order)
        .map(|(members, &w)| {
            let e = base.edges()[members[0]];
            EdgeSpec {
                u: vertices[orbits.vertex_orbit_of[e.u]].id.clone(),
                v: vertices[orbits.vertex_orbit_of[e.v]].id.clone(),
                weight: w,
                mult: 1,
            }
        })
        .collect();

    let graph = WeightedGraph::from_spec(&GraphSpec { vertices, edges })
        .expect("an admissible action always yields a valid weighted quotient");
    Quotient { graph, orbits }
}

/// Convenience map from base vertex ids to quotient values of a
/// pushforward, for label-based checks.
pub fn pushforward_by_id(q: &Quotient, base: &WeightedGraph, d: &Divisor) -> HashMap<String, i64> {
    let pf = q.pushforward(d);
    (0..base.vertex_count())
        .map(|v| {
            let orbit = q.orbits.vertex_orbit_of[v];
            (base.vertex_id(v).to_owned(), pf[orbit])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSpec;

    /// Square `v1-v2-v4-v3-v1` with the diagonal `v3-v2`, all weights 1.
    fn square_with_diagonal() -> HalfEdgeGraph {
        let spec = GraphSpec::from_parts(
            &[("v1", 1), ("v2", 1), ("v3", 1), ("v4", 1)],
            &[
                ("v1", "v2", 1),
                ("v1", "v3", 1),
                ("v3", "v4", 1),
                ("v4", "v2", 1),
                ("v3", "v2", 1),
            ],
        );
        HalfEdgeGraph::from_spec(&spec).unwrap()
    }

    /// The reflection across the diagonal: swaps v1 and v4.
    fn reflection(g: &HalfEdgeGraph) -> GroupAction {
        let spec = ActionSpec {
            generators: vec![GeneratorSpec {
                vertices: [("v1", "v4"), ("v4", "v1"), ("v2", "v2"), ("v3", "v3")]
                    .into_iter()
                    .map(|(a, b)| (a.to_owned(), b.to_owned()))
                    .collect(),
                half_edges: [
                    // v1-v2 <-> v4-v2, v1-v3 <-> v3-v4, diagonal fixed.
                    ("e0a", "e3a"),
                    ("e0b", "e3b"),
                    ("e3a", "e0a"),
                    ("e3b", "e0b"),
                    ("e1a", "e2b"),
                    ("e1b", "e2a"),
                    ("e2b", "e1a"),
                    ("e2a", "e1b"),
                    ("e4a", "e4a"),
                    ("e4b", "e4b"),
                ]
                .into_iter()
                .map(|(a, b)| (a.to_owned(), b.to_owned()))
                .collect(),
            }],
        };
        GroupAction::from_spec(g, &spec).unwrap()
    }

    fn four_cycle() -> HalfEdgeGraph {
        let spec = GraphSpec::from_parts(
            &[("v1", 1), ("v2", 1), ("v3", 1), ("v4", 1)],
            &[("v1", "v2", 1), ("v2", "v3", 1), ("v3", "v4", 1), ("v4", "v1", 1)],
        );
        HalfEdgeGraph::from_spec(&spec).unwrap()
    }

    fn rotation(steps: usize) -> GroupAction {
        // vertex i -> i + steps (mod 4); edge i -> i + steps (mod 4)
        // orientation-preserving, so a-halves map to a-halves.
        let vertices: Vec<usize> = (0..4).map(|v| (v + steps) % 4).collect();
        let half_edges: Vec<usize> =
            (0..8).map(|h| 2 * ((h / 2 + steps) % 4) + h % 2).collect();
        GroupAction { generators: vec![GraphPerm { vertices, half_edges }] }
    }

    #[test]
    fn reflection_is_valid() {
        let g = square_with_diagonal();
        let group = validate_action(&g, &reflection(&g)).unwrap();
        assert_eq!(group.order(), 2);
    }

    #[test]
    fn identity_action_is_valid() {
        let g = square_with_diagonal();
        let action = GroupAction { generators: vec![] };
        let group = validate_action(&g, &action).unwrap();
        assert_eq!(group.order(), 1);
        let data = orbits_and_stabilizers(&g, &group);
        assert_eq!(data.vertex_orbits.len(), 4);
        assert!(data.vertex_stabilizer_order.iter().all(|&s| s == 1));
        let quotient = build_quotient(&g, &group);
        assert_eq!(quotient.graph.vertex_count(), 4);
        assert_eq!(quotient.graph.edges().len(), 5);
        assert!(quotient.graph.vertices().iter().all(|v| v.weight == 1));
        // Pushforward is the identity up to relabeling.
        let d = Divisor::new(vec![3, -1, 4, 1]);
        assert_eq!(quotient.pushforward(&d), d);
    }

    #[test]
    fn quarter_rotation_maps_vertex_to_neighbor() {
        let g = four_cycle();
        match validate_action(&g, &rotation(1)) {
            Err(ActionError::VertexToNeighbor { vertex, image, .. }) => {
                assert_eq!(vertex, "v1");
                assert_eq!(image, "v2");
            }
            other => panic!("expected VertexToNeighbor, got {other:?}"),
        }
    }

    #[test]
    fn half_rotation_gives_doubled_edge() {
        let g = four_cycle();
        let group = validate_action(&g, &rotation(2)).unwrap();
        assert_eq!(group.order(), 2);
        let data = orbits_and_stabilizers(&g, &group);
        assert_eq!(data.vertex_orbits, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(data.edge_orbits, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(data.vertex_stabilizer_order, vec![1, 1]);
        assert_eq!(data.edge_stabilizer_order, vec![1, 1]);
        let quotient = build_quotient(&g, &group);
        assert_eq!(quotient.graph.vertex_count(), 2);
        assert_eq!(quotient.graph.edges().len(), 2);
        assert!(quotient.graph.vertices().iter().all(|v| v.weight == 1));
        assert!(quotient.graph.edges().iter().all(|e| e.weight == 1));
    }

    #[test]
    fn reflection_orbits_and_weights() {
        let g = square_with_diagonal();
        let group = validate_action(&g, &reflection(&g)).unwrap();
        let data = orbits_and_stabilizers(&g, &group);
        assert_eq!(data.vertex_orbits, vec![vec![0, 3], vec![1], vec![2]]);
        assert_eq!(data.vertex_stabilizer_order, vec![1, 2, 2]);
        // Outer edges pair up; the diagonal is fixed.
        assert_eq!(data.edge_orbits, vec![vec![0, 3], vec![1, 2], vec![4]]);
        assert_eq!(data.edge_stabilizer_order, vec![1, 1, 2]);
    }

    #[test]
    fn reflection_quotient_is_the_weighted_triangle() {
        let g = square_with_diagonal();
        let group = validate_action(&g, &reflection(&g)).unwrap();
        let quotient = build_quotient(&g, &group);
        let q = &quotient.graph;
        assert_eq!(q.vertex_count(), 3);
        assert_eq!(q.vertex_id(0), "v1+v4");
        assert_eq!(q.vertex_id(1), "v2");
        assert_eq!(q.vertex_id(2), "v3");
        let weights: Vec<i64> = q.vertices().iter().map(|v| v.weight).collect();
        assert_eq!(weights, vec![1, 2, 2]);
        let edge_weights: Vec<i64> = q.edges().iter().map(|e| e.weight).collect();
        assert_eq!(edge_weights, vec![1, 1, 2]);
        // The heavy edge joins the two heavy vertices.
        let heavy = q.edges().iter().find(|e| e.weight == 2).unwrap();
        assert_eq!((q.vertex_id(heavy.u), q.vertex_id(heavy.v)), ("v3", "v2"));
    }

    #[test]
    fn pushforward_sums_orbits() {
        let g = square_with_diagonal();
        let group = validate_action(&g, &reflection(&g)).unwrap();
        let quotient = build_quotient(&g, &group);
        let d = Divisor::new(vec![1, 1, -3, 1]);
        let pf = quotient.pushforward(&d);
        assert_eq!(pf, Divisor::new(vec![2, 1, -3]));
        assert_eq!(pf.degree(), d.degree());
        assert_eq!(quotient.pushforward(&Divisor::zeros(4)), Divisor::zeros(3));
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let g = four_cycle();
        // Swap two vertices without moving the half-edges.
        let mut perm = GraphPerm::identity(4, 8);
        perm.vertices.swap(0, 2);
        let action = GroupAction { generators: vec![perm] };
        assert!(matches!(
            validate_action(&g, &action),
            Err(ActionError::NotAutomorphism { .. })
        ));
    }

    #[test]
    fn half_edge_flip_is_rejected() {
        // Two vertices joined by two parallel edges; swapping the parallel
        // edges is fine, but flipping one edge end-for-end maps a
        // half-edge to its involution.
        let spec = GraphSpec::from_parts(&[("a", 1), ("b", 1)], &[("a", "b", 1), ("a", "b", 1)]);
        let g = HalfEdgeGraph::from_spec(&spec).unwrap();
        let flip = GraphPerm {
            vertices: vec![1, 0],
            half_edges: vec![1, 0, 3, 2],
        };
        let action = GroupAction { generators: vec![flip] };
        match validate_action(&g, &action) {
            Err(ActionError::HalfEdgeToInvolution { half_edge, .. }) => {
                assert_eq!(half_edge, "e0a");
            }
            other => panic!("expected HalfEdgeToInvolution, got {other:?}"),
        }
    }

    #[test]
    fn multiplicity_must_be_explicit() {
        let spec = GraphSpec {
            vertices: vec![
                VertexSpec { id: "a".into(), weight: 1 },
                VertexSpec { id: "b".into(), weight: 1 },
            ],
            edges: vec![EdgeSpec { u: "a".into(), v: "b".into(), weight: 1, mult: 2 }],
        };
        assert!(matches!(
            HalfEdgeGraph::from_spec(&spec),
            Err(BuildError::ImplicitMultiplicity { .. })
        ));
    }
}
