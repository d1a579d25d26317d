//! The multi-oriented graph datatype and its basic predicates.

use crate::word::{Dir, MultiDir, OrientWord};
use crate::{GraphError, Result};
use std::collections::BTreeSet;

/// Parity of the degree parameter `d`; decides whether edges (even) or
/// vertices (odd) carry the sign order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DParity {
    Even,
    Odd,
}

impl DParity {
    pub fn of(d: i64) -> DParity {
        if d % 2 == 0 {
            DParity::Even
        } else {
            DParity::Odd
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub tail: u8,
    pub head: u8,
    pub orient: OrientWord,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Leg {
    pub vertex: u8,
    pub label: String,
    pub multidir: MultiDir,
}

/// A `(k+1)`-directed graph with labelled legs. Vertex ids are contiguous
/// `0..n_vertices`; the edge list order and the vertex id order are the two
/// sign-carrying orders.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiGraph {
    pub k: u8,
    pub n_vertices: u8,
    pub edges: Vec<Edge>,
    pub legs: Vec<Leg>,
}

impl MultiGraph {
    pub fn new(k: u8, n_vertices: u8) -> Self {
        MultiGraph {
            k,
            n_vertices,
            edges: Vec::new(),
            legs: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, tail: u8, head: u8, orient: OrientWord) {
        debug_assert_eq!(orient.len(), self.k);
        self.edges.push(Edge {
            tail,
            head,
            orient,
        });
    }

    pub fn add_leg(&mut self, vertex: u8, label: impl Into<String>, multidir: MultiDir) {
        self.legs.push(Leg {
            vertex,
            label: label.into(),
            multidir,
        });
    }

    /// Checks the structural invariants: id ranges, word lengths, distinct leg
    /// labels, and the basic-bit consistency of every leg.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_vertices;
        for e in &self.edges {
            if e.tail >= n {
                return Err(GraphError::VertexOutOfRange(e.tail, n));
            }
            if e.head >= n {
                return Err(GraphError::VertexOutOfRange(e.head, n));
            }
            if e.orient.len() != self.k {
                return Err(GraphError::WordLength(e.orient.len(), self.k));
            }
        }
        let mut seen = BTreeSet::new();
        for l in &self.legs {
            if l.vertex >= n {
                return Err(GraphError::VertexOutOfRange(l.vertex, n));
            }
            if l.multidir.len() != self.k + 1 {
                return Err(GraphError::WordLength(l.multidir.len(), self.k + 1));
            }
            if !seen.insert(l.label.clone()) {
                return Err(GraphError::DuplicateLegLabel(l.label.clone()));
            }
            // A leg anchored at a vertex leaves it when its basic bit is
            // `out`; there is nothing else to check structurally, but
            // parsing external data may still produce words of wrong kind,
            // which the length check above catches. The basic-bit rule is
            // what the `Dir` stored in the multidirection *means*, so it is
            // consistent by construction here.
        }
        Ok(())
    }

    pub fn valence(&self, v: u8) -> usize {
        let mut c = 0;
        for e in &self.edges {
            if e.tail == v {
                c += 1;
            }
            if e.head == v {
                c += 1;
            }
        }
        for l in &self.legs {
            if l.vertex == v {
                c += 1;
            }
        }
        c
    }

    pub fn has_tadpole(&self) -> bool {
        self.edges.iter().any(|e| e.tail == e.head)
    }

    /// Flips every direction (basic and extra) on all edges and legs. On an
    /// edge this swaps tail and head and keeps the relative word; on a leg it
    /// replaces the multidirection by its opposite.
    pub fn opp(&self) -> MultiGraph {
        MultiGraph {
            k: self.k,
            n_vertices: self.n_vertices,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    tail: e.head,
                    head: e.tail,
                    orient: e.orient,
                })
                .collect(),
            legs: self
                .legs
                .iter()
                .map(|l| Leg {
                    vertex: l.vertex,
                    label: l.label.clone(),
                    multidir: l.multidir.opp(),
                })
                .collect(),
        }
    }

    /// The flow of an edge in colour `tau`: `(from, to)` vertex pair.
    fn flow(&self, e: &Edge, tau: u8) -> (u8, u8) {
        if tau == 0 || e.orient.is_aligned(tau - 1) {
            (e.tail, e.head)
        } else {
            (e.head, e.tail)
        }
    }

    /// True iff directing every internal edge along its colour-`tau` flow
    /// yields a directed cycle. A tadpole always counts as a cycle. Legs are
    /// ignored.
    pub fn has_wheel(&self, tau: u8) -> Result<bool> {
        if tau > self.k {
            return Err(GraphError::ColorOutOfRange(tau, self.k));
        }
        if self.has_tadpole() {
            return Ok(true);
        }
        let n = self.n_vertices as usize;
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            let (from, to) = self.flow(e, tau);
            adj[from as usize].push(to as usize);
        }
        // iterative colour DFS
        let mut state = vec![0u8; n]; // 0 unseen, 1 on stack, 2 done
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            state[start] = 1;
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                if *i < adj[v].len() {
                    let w = adj[v][*i];
                    *i += 1;
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            stack.push((w, 0));
                        }
                        1 => return Ok(true),
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        Ok(false)
    }

    /// True iff the graph has no wheel in any colour `0..=l`. `l = -1` imposes
    /// no constraint.
    pub fn is_admissible(&self, l: i8) -> Result<bool> {
        if l > self.k as i8 {
            return Err(GraphError::ColorOutOfRange(l as u8, self.k));
        }
        for tau in 0..=l {
            if self.has_wheel(tau as u8)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n_vertices as usize;
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for (a, b) in [(e.tail, e.head), (e.head, e.tail)] {
                    if a as usize == v && !seen[b as usize] {
                        seen[b as usize] = true;
                        stack.push(b as usize);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Contracts the induced subgraph on `subset` to a single vertex: edges
    /// inside the subset are deleted, all other incidences keep their
    /// orientation words. The new vertex takes the smallest id of the subset
    /// after compaction.
    pub fn contract(&self, subset: &[u8]) -> Result<MultiGraph> {
        if subset.is_empty() {
            return Err(GraphError::BadContractionSubset);
        }
        let set: BTreeSet<u8> = subset.iter().copied().collect();
        for &v in &set {
            if v >= self.n_vertices {
                return Err(GraphError::VertexOutOfRange(v, self.n_vertices));
            }
        }
        // compact ids: untouched vertices keep their relative order, the
        // merged vertex goes last
        let mut map = vec![0u8; self.n_vertices as usize];
        let mut next = 0u8;
        for v in 0..self.n_vertices {
            if set.contains(&v) {
                continue;
            }
            map[v as usize] = next;
            next += 1;
        }
        let anchor_id = next;
        for &v in &set {
            map[v as usize] = anchor_id;
        }
        let mut out = MultiGraph::new(self.k, next + 1);
        for e in &self.edges {
            let t_in = set.contains(&e.tail);
            let h_in = set.contains(&e.head);
            if t_in && h_in {
                continue; // internal edge of the contracted subgraph
            }
            out.add_edge(map[e.tail as usize], map[e.head as usize], e.orient);
        }
        for l in &self.legs {
            out.add_leg(map[l.vertex as usize], l.label.clone(), l.multidir);
        }
        Ok(out)
    }

    /// Byte encoding used for hashing and canonical-form comparison.
    /// Equality of encodings is equality of graphs (as labelled data).
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + self.edges.len() * 6 + self.legs.len() * 8);
        out.push(self.k);
        out.push(self.n_vertices);
        out.push(self.edges.len() as u8);
        for e in &self.edges {
            out.push(e.tail);
            out.push(e.head);
            out.extend_from_slice(&e.orient.bits().to_be_bytes());
        }
        out.push(self.legs.len() as u8);
        for l in &self.legs {
            out.push(l.vertex);
            out.extend_from_slice(&(l.multidir.bits()).to_be_bytes());
            out.extend_from_slice(l.label.as_bytes());
            out.push(0);
        }
        out
    }

    /// Degree of a leg-free graph in the graph complex with parameter `d`.
    pub fn gc_degree(&self, d: i64) -> i64 {
        d * (self.n_vertices as i64 - 1) + (1 - d) * self.edges.len() as i64
    }

    pub fn loop_order(&self) -> i64 {
        self.edges.len() as i64 - self.n_vertices as i64 + 1
    }
}

/// Convenience constructor for leg multidirections.
pub fn leg_dir(basic: Dir, rel: OrientWord) -> MultiDir {
    MultiDir::from_basic_and_relative(basic, rel)
}
