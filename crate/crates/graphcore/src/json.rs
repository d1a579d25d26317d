//! JSON exchange format for multi-oriented graphs.
//!
//! ```json
//! {"k": 1, "vertices": 2,
//!  "edges": [{"tail": 0, "head": 1, "orient": "+"}],
//!  "legs": [{"vertex": 0, "label": "a", "multidir": "io"}]}
//! ```

use crate::graph::MultiGraph;
use crate::word::{MultiDir, OrientWord};
use crate::{GraphError, Result};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    tail: u8,
    head: u8,
    orient: String,
}

#[derive(Serialize, Deserialize)]
struct LegJson {
    vertex: u8,
    label: String,
    multidir: String,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    k: u8,
    vertices: u8,
    edges: Vec<EdgeJson>,
    legs: Vec<LegJson>,
}

pub fn to_json(g: &MultiGraph) -> String {
    let j = GraphJson {
        k: g.k,
        vertices: g.n_vertices,
        edges: g
            .edges
            .iter()
            .map(|e| EdgeJson {
                tail: e.tail,
                head: e.head,
                orient: e.orient.to_string_pm(),
            })
            .collect(),
        legs: g
            .legs
            .iter()
            .map(|l| LegJson {
                vertex: l.vertex,
                label: l.label.clone(),
                multidir: l.multidir.to_string_oi(),
            })
            .collect(),
    };
    serde_json::to_string(&j).expect("graph serialization cannot fail")
}

pub fn from_json(s: &str) -> Result<MultiGraph> {
    let j: GraphJson =
        serde_json::from_str(s).map_err(|e| GraphError::Parse(format!("json: {e}")))?;
    let mut g = MultiGraph::new(j.k, j.vertices);
    for e in j.edges {
        let w = OrientWord::parse_pm(&e.orient)?;
        if w.len() != j.k {
            return Err(GraphError::WordLength(w.len(), j.k));
        }
        g.add_edge(e.tail, e.head, w);
    }
    for l in j.legs {
        let m = MultiDir::parse_oi(&l.multidir)?;
        if m.len() != j.k + 1 {
            return Err(GraphError::WordLength(m.len(), j.k + 1));
        }
        g.add_leg(l.vertex, l.label, m);
    }
    g.validate()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Dir;

    #[test]
    fn roundtrip() {
        let mut g = MultiGraph::new(1, 2);
        g.add_edge(0, 1, OrientWord::parse_pm("-").unwrap());
        g.add_leg(
            0,
            "x",
            MultiDir::from_dirs(&[Dir::In, Dir::Out]),
        );
        let s = to_json(&g);
        let h = from_json(&s).unwrap();
        assert_eq!(g, h);
    }
}
