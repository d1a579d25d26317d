//! DOT export. Internal edges carry their orientation word as the label;
//! legs are rendered as half-edges to phantom nodes.

use crate::graph::MultiGraph;
use crate::word::Dir;
use std::fmt::Write;

pub fn to_dot(g: &MultiGraph, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {name} {{");
    for v in 0..g.n_vertices {
        let _ = writeln!(s, "  v{v} [shape=circle];");
    }
    for (i, e) in g.edges.iter().enumerate() {
        let label = e.orient.to_string_pm();
        let _ = writeln!(s, "  v{} -> v{} [label=\"{}\" id=\"e{}\"];", e.tail, e.head, label, i);
    }
    for (i, l) in g.legs.iter().enumerate() {
        let _ = writeln!(s, "  p{i} [shape=none label=\"{}\"];", l.label);
        let rel = l.multidir.relative().to_string_pm();
        match l.multidir.basic() {
            Dir::Out => {
                let _ = writeln!(s, "  v{} -> p{} [label=\"{}\" style=dashed];", l.vertex, i, rel);
            }
            Dir::In => {
                let _ = writeln!(s, "  p{} -> v{} [label=\"{}\" style=dashed];", i, l.vertex, rel);
            }
        }
    }
    let _ = writeln!(s, "}}");
    s
}
