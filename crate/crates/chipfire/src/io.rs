//! JSON file formats.
//!
//! Graph files carry a [`GraphSpec`]:
//!
//! ```json
//! {"vertices":[{"id":"v1","weight":2},{"id":"v3","weight":1}],
//!  "edges":[{"u":"v1","v":"v3","weight":1,"mult":1}]}
//! ```
//!
//! Divisor files map every vertex id to its chip count, each id exactly
//! once: `{"v1":1,"v3":0}`. Action files carry an
//! [`ActionSpec`](crate::quotient::ActionSpec); half-edge names `e{k}a` /
//! `e{k}b` follow the edge list order of the graph file.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::divisor::{Divisor, FiringScript};
use crate::graph::{BuildError, GraphSpec, WeightedGraph};
use crate::quotient::ActionSpec;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("divisor file is missing vertex {id:?}")]
    MissingVertex { id: String },
    #[error("divisor file names unknown vertex {id:?}")]
    UnknownVertex { id: String },
}

/// Parses and validates a graph file.
pub fn graph_from_json(text: &str) -> Result<WeightedGraph, IoError> {
    let spec: GraphSpec = serde_json::from_str(text)?;
    Ok(WeightedGraph::from_spec(&spec)?)
}

pub fn graph_to_json(g: &WeightedGraph) -> String {
    serde_json::to_string(&g.to_spec()).expect("graph specs serialize")
}

/// Parses a divisor file against a graph; every vertex id must appear
/// exactly once.
pub fn divisor_from_json(g: &WeightedGraph, text: &str) -> Result<Divisor, IoError> {
    let map: BTreeMap<String, i64> = serde_json::from_str(text)?;
    for id in map.keys() {
        if g.vertex_index(id).is_none() {
            return Err(IoError::UnknownVertex { id: id.clone() });
        }
    }
    let values = (0..g.vertex_count())
        .map(|v| {
            map.get(g.vertex_id(v))
                .copied()
                .ok_or_else(|| IoError::MissingVertex { id: g.vertex_id(v).to_owned() })
        })
        .collect::<Result<Vec<i64>, IoError>>()?;
    Ok(Divisor::new(values))
}

/// Serializes a divisor as an id-keyed map with sorted keys.
pub fn divisor_to_json(g: &WeightedGraph, d: &Divisor) -> String {
    let map: BTreeMap<&str, i64> =
        (0..g.vertex_count()).map(|v| (g.vertex_id(v), d[v])).collect();
    serde_json::to_string(&map).expect("divisor maps serialize")
}

/// Serializes a firing script as an id-keyed map with sorted keys.
pub fn script_to_json(g: &WeightedGraph, s: &FiringScript) -> String {
    let map: BTreeMap<&str, i64> =
        (0..g.vertex_count()).map(|v| (g.vertex_id(v), s[v])).collect();
    serde_json::to_string(&map).expect("script maps serialize")
}

/// Parses an action file.
pub fn action_from_json(text: &str) -> Result<ActionSpec, IoError> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn graph_round_trip() {
        let g = fixtures::weighted_star();
        let text = graph_to_json(&g);
        let reparsed = graph_from_json(&text).unwrap();
        assert_eq!(reparsed.to_spec(), g.to_spec());
    }

    #[test]
    fn graph_defaults_apply() {
        let g = graph_from_json(
            r#"{"vertices":[{"id":"a"},{"id":"b","weight":2}],"edges":[{"u":"a","v":"b"}]}"#,
        )
        .unwrap();
        assert_eq!(g.vertex_weight(0), 1);
        assert_eq!(g.vertex_weight(1), 2);
        assert_eq!(g.edges()[0].weight, 1);
        assert_eq!(g.edges()[0].mult, 1);
    }

    #[test]
    fn divisor_requires_every_vertex_once() {
        let g = fixtures::path2();
        assert_eq!(
            divisor_from_json(&g, r#"{"v1":3,"v2":-1}"#).unwrap(),
            Divisor::new(vec![3, -1])
        );
        assert!(matches!(
            divisor_from_json(&g, r#"{"v1":3}"#),
            Err(IoError::MissingVertex { .. })
        ));
        assert!(matches!(
            divisor_from_json(&g, r#"{"v1":3,"v2":0,"v9":1}"#),
            Err(IoError::UnknownVertex { .. })
        ));
    }

    #[test]
    fn divisor_serialization_is_sorted() {
        let g = fixtures::path2();
        assert_eq!(
            divisor_to_json(&g, &Divisor::new(vec![1, -2])),
            r#"{"v1":1,"v2":-2}"#
        );
    }
}
