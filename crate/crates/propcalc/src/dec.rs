//! Decorated graphs: a multi-oriented skeleton whose vertices carry generator
//! corollas, with the Koszul and block-symmetry sign bookkeeping needed to
//! treat canonical classes as basis vectors.

use crate::family::Corolla;
use crate::{PropError, Result};
use graphcore::canon::{min_perms, refined_cells};
use graphcore::{MultiDir, MultiGraph, OrientWord};
use linalg::Q;
use num::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Out,
    In,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub side: Side,
    pub pos: u8,
}

/// External leg name. Output legs order before input legs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtLeg {
    pub out: bool,
    pub idx: u8,
}

impl ExtLeg {
    pub fn o(idx: u8) -> Self {
        ExtLeg { out: true, idx }
    }
    pub fn i(idx: u8) -> Self {
        ExtLeg { out: false, idx }
    }
}

impl std::fmt::Display for ExtLeg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", if self.out { "o" } else { "i" }, self.idx)
    }
}

impl Ord for ExtLeg {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // out legs first
        other
            .out
            .cmp(&self.out)
            .then_with(|| self.idx.cmp(&other.idx))
    }
}

impl PartialOrd for ExtLeg {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Internal edge: from an output slot to an input slot; both slots carry the
/// same relative word, which is the word of the edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecEdge {
    pub from_vertex: u8,
    pub from_pos: u8,
    pub to_vertex: u8,
    pub to_pos: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecLeg {
    pub vertex: u8,
    pub slot: Slot,
    pub label: ExtLeg,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecGraph {
    pub k: u8,
    /// Koszul order is the index order of this vector.
    pub vertices: Vec<Corolla>,
    pub edges: Vec<DecEdge>,
    pub legs: Vec<DecLeg>,
}

/// What occupies a slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Occupant {
    Edge(usize),
    Leg(usize),
}

impl DecGraph {
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn degree(&self) -> i64 {
        self.vertices.iter().map(|c| c.degree()).sum()
    }

    pub fn edge_word(&self, e: &DecEdge) -> OrientWord {
        self.vertices[e.from_vertex as usize].out_words[e.from_pos as usize]
    }

    /// Occupancy table: `occ[v][side][pos]`.
    fn occupancy(&self) -> Result<Vec<[Vec<Option<Occupant>>; 2]>> {
        let mut occ: Vec<[Vec<Option<Occupant>>; 2]> = self
            .vertices
            .iter()
            .map(|c| [vec![None; c.m()], vec![None; c.n()]])
            .collect();
        let mut set = |v: u8, side: Side, pos: u8, o: Occupant| -> Result<()> {
            let sidx = if side == Side::Out { 0 } else { 1 };
            let slot = occ
                .get_mut(v as usize)
                .and_then(|s| s[sidx].get_mut(pos as usize))
                .ok_or_else(|| PropError::BadCorolla(format!("slot ({v}, {side:?}, {pos}) out of range")))?;
            if slot.is_some() {
                return Err(PropError::BadCorolla(format!(
                    "slot ({v}, {side:?}, {pos}) doubly occupied"
                )));
            }
            *slot = Some(o);
            Ok(())
        };
        for (i, e) in self.edges.iter().enumerate() {
            set(e.from_vertex, Side::Out, e.from_pos, Occupant::Edge(i))?;
            set(e.to_vertex, Side::In, e.to_pos, Occupant::Edge(i))?;
        }
        for (i, l) in self.legs.iter().enumerate() {
            set(l.vertex, l.slot.side, l.slot.pos, Occupant::Leg(i))?;
        }
        for (v, sides) in occ.iter().enumerate() {
            for side in sides {
                for (p, s) in side.iter().enumerate() {
                    if s.is_none() {
                        return Err(PropError::BadCorolla(format!(
                            "slot ({v}, {p}) unoccupied"
                        )));
                    }
                }
            }
        }
        Ok(occ)
    }

    pub fn validate(&self) -> Result<()> {
        self.occupancy()?;
        for e in &self.edges {
            let wf = self.vertices[e.from_vertex as usize].out_words[e.from_pos as usize];
            let wt = self.vertices[e.to_vertex as usize].in_words[e.to_pos as usize];
            if wf != wt {
                return Err(PropError::GraftMismatch(
                    format!("edge {e:?} word {}", wf.to_string_pm()),
                    wt.to_string_pm(),
                ));
            }
            if e.from_vertex == e.to_vertex {
                return Err(PropError::Inadmissible);
            }
        }
        let mut labels: Vec<ExtLeg> = self.legs.iter().map(|l| l.label).collect();
        labels.sort();
        labels.dedup();
        if labels.len() != self.legs.len() {
            return Err(PropError::LabelClash("duplicate external label".into()));
        }
        Ok(())
    }

    /// Underlying multi-oriented skeleton, for admissibility checks.
    pub fn skeleton(&self) -> MultiGraph {
        let mut g = MultiGraph::new(self.k, self.vertices.len() as u8);
        for e in self.edges.iter() {
            g.add_edge(e.from_vertex, e.to_vertex, self.edge_word(e));
        }
        for l in &self.legs {
            let basic = match l.slot.side {
                Side::Out => graphcore::Dir::Out,
                Side::In => graphcore::Dir::In,
            };
            let word = self.vertices[l.vertex as usize].word(l.slot);
            g.add_leg(
                l.vertex,
                l.label.to_string(),
                MultiDir::from_basic_and_relative(basic, word),
            );
        }
        g
    }

    pub fn is_admissible(&self, l: i8) -> Result<bool> {
        Ok(self.skeleton().is_admissible(l)?)
    }

    /// External profile: sorted list of `(label, side, word)`.
    pub fn profile(&self) -> Vec<(ExtLeg, Side, OrientWord)> {
        let mut p: Vec<(ExtLeg, Side, OrientWord)> = self
            .legs
            .iter()
            .map(|l| {
                (
                    l.label,
                    l.slot.side,
                    self.vertices[l.vertex as usize].word(l.slot),
                )
            })
            .collect();
        p.sort();
        p
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = vec![self.k, self.vertices.len() as u8];
        for c in &self.vertices {
            let e = c.encode();
            out.push(e.len() as u8);
            out.extend(e);
        }
        let mut edges: Vec<[u8; 4]> = self
            .edges
            .iter()
            .map(|e| [e.from_vertex, e.from_pos, e.to_vertex, e.to_pos])
            .collect();
        edges.sort();
        out.push(edges.len() as u8);
        for e in edges {
            out.extend(e);
        }
        let mut legs: Vec<(ExtLeg, u8, u8, u8)> = self
            .legs
            .iter()
            .map(|l| {
                (
                    l.label,
                    l.vertex,
                    if l.slot.side == Side::Out { 0 } else { 1 },
                    l.slot.pos,
                )
            })
            .collect();
        legs.sort();
        out.push(legs.len() as u8);
        for (lab, v, s, p) in legs {
            out.push(lab.out as u8);
            out.push(lab.idx);
            out.push(v);
            out.push(s);
            out.push(p);
        }
        out
    }
}

/// Block structure of one side of a corolla: for each slot, the id of the run
/// of equal words containing it, and whether the run may be reordered
/// (symmetric families) and with which sign exponent.
fn side_blocks(words: &[OrientWord], symmetry: Option<u8>) -> (Vec<u8>, Option<u8>) {
    let mut block_of = vec![0u8; words.len()];
    match symmetry {
        None => {
            // planar: every slot its own immovable block
            for (i, b) in block_of.iter_mut().enumerate() {
                *b = i as u8;
            }
            (block_of, None)
        }
        Some(e) => {
            let mut b = 0u8;
            for i in 1..words.len() {
                if words[i] != words[i - 1] {
                    b += 1;
                }
                block_of[i] = b;
            }
            (block_of, Some(e))
        }
    }
}

struct CanonOutcome {
    encoding: Vec<u8>,
    graph: DecGraph,
    sign: i8,
    zero: bool,
}

/// Canonical form under a fixed vertex permutation: sorts the slots of every
/// reorderable block by connection key, computes the Koszul and block signs.
fn canonical_under_perm(g: &DecGraph, perm: &[u8]) -> CanonOutcome {
    let n = g.vertices.len();
    // inverse permutation: canonical position -> original vertex
    let mut inv = vec![0u8; n];
    for (old, &new) in perm.iter().enumerate() {
        inv[new as usize] = old as u8;
    }
    // Koszul sign of reordering the vertex tensor factors
    let mut sign = 1i64;
    for i in 0..n {
        for j in (i + 1)..n {
            if perm[i] > perm[j] {
                let di = g.vertices[i].degree().rem_euclid(2);
                let dj = g.vertices[j].degree().rem_euclid(2);
                if di == 1 && dj == 1 {
                    sign = -sign;
                }
            }
        }
    }
    let mut zero = false;

    // connection key of every (old vertex, side, pos):
    //   legs sort before edges, edges by (other canonical vertex, other side,
    //   other block if reorderable else other pos)
    let occ = g.occupancy().expect("validated graph");
    let blocks: Vec<[(Vec<u8>, Option<u8>); 2]> = g
        .vertices
        .iter()
        .map(|c| {
            [
                side_blocks(&c.out_words, c.family.out_symmetry()),
                side_blocks(&c.in_words, c.family.in_symmetry()),
            ]
        })
        .collect();
    let key_of = |old_v: usize, side: Side, pos: usize| -> Vec<u8> {
        let sidx = if side == Side::Out { 0 } else { 1 };
        match occ[old_v][sidx][pos].unwrap() {
            Occupant::Leg(i) => {
                let l = &g.legs[i];
                vec![0, l.label.out as u8, l.label.idx]
            }
            Occupant::Edge(i) => {
                let e = &g.edges[i];
                let (ov, oside, opos) = if side == Side::Out {
                    (e.to_vertex, Side::In, e.to_pos)
                } else {
                    (e.from_vertex, Side::Out, e.from_pos)
                };
                let osidx = if oside == Side::Out { 0 } else { 1 };
                let (ref oblocks, osym) = blocks[ov as usize][osidx];
                let opos_key = if osym.is_some() {
                    oblocks[opos as usize]
                } else {
                    opos
                };
                vec![
                    1,
                    perm[ov as usize],
                    osidx as u8,
                    opos_key,
                ]
            }
        }
    };

    // canonical slot order per (vertex, side): identity on planar sides,
    // key-sorted within each block on symmetric sides
    // slot_map[v][side][old_pos] = new_pos
    let mut slot_map: Vec<[Vec<u8>; 2]> = g
        .vertices
        .iter()
        .map(|c| {
            [
                (0..c.m() as u8).collect::<Vec<u8>>(),
                (0..c.n() as u8).collect::<Vec<u8>>(),
            ]
        })
        .collect();
    for old_v in 0..n {
        for (sidx, side) in [(0usize, Side::Out), (1usize, Side::In)] {
            let (ref block_of, sym) = blocks[old_v][sidx];
            let Some(exponent) = sym else { continue };
            let nslots = block_of.len();
            let mut new_pos = vec![0u8; nslots];
            let mut start = 0;
            while start < nslots {
                let mut end = start;
                while end < nslots && block_of[end] == block_of[start] {
                    end += 1;
                }
                // sort the slots [start, end) by key; ties are parallel
                // edges and keep their mutual order by edge index
                let mut order: Vec<usize> = (start..end).collect();
                let keys: Vec<Vec<u8>> = order.iter().map(|&p| key_of(old_v, side, p)).collect();
                let mut idx: Vec<usize> = (0..order.len()).collect();
                idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
                // parity of the rearrangement, for skew blocks
                if exponent == 1 {
                    let mut parity = 1i64;
                    for a in 0..idx.len() {
                        for b in (a + 1)..idx.len() {
                            if idx[a] > idx[b] {
                                parity = -parity;
                            }
                        }
                    }
                    sign *= parity;
                }
                // parallel ties: swapping two equal-key slots is an
                // automorphism whose sign is exponent(here) + exponent(there)
                for w in idx.windows(2) {
                    if keys[w[0]] == keys[w[1]] {
                        // identical keys means a parallel class; the swap
                        // transposes both ends
                        let other_exp =
                            other_end_exponent(g, &occ, &blocks, old_v, side, order[w[0]]);
                        if (exponent + other_exp) % 2 == 1 {
                            zero = true;
                        }
                    }
                }
                for (rank, &which) in idx.iter().enumerate() {
                    new_pos[order[which]] = (start + rank) as u8;
                }
                order.clear();
                start = end;
            }
            slot_map[old_v][sidx] = new_pos;
        }
    }

    // rebuild
    let vertices: Vec<Corolla> = inv.iter().map(|&old| g.vertices[old as usize].clone()).collect();
    let mut edges: Vec<DecEdge> = g
        .edges
        .iter()
        .map(|e| DecEdge {
            from_vertex: perm[e.from_vertex as usize],
            from_pos: slot_map[e.from_vertex as usize][0][e.from_pos as usize],
            to_vertex: perm[e.to_vertex as usize],
            to_pos: slot_map[e.to_vertex as usize][1][e.to_pos as usize],
        })
        .collect();
    edges.sort();
    let mut legs: Vec<DecLeg> = g
        .legs
        .iter()
        .map(|l| {
            let sidx = if l.slot.side == Side::Out { 0 } else { 1 };
            DecLeg {
                vertex: perm[l.vertex as usize],
                slot: Slot {
                    side: l.slot.side,
                    pos: slot_map[l.vertex as usize][sidx][l.slot.pos as usize],
                },
                label: l.label,
            }
        })
        .collect();
    legs.sort_by_key(|l| l.label);
    let graph = DecGraph {
        k: g.k,
        vertices,
        edges,
        legs,
    };
    CanonOutcome {
        encoding: graph.encode(),
        graph,
        sign: if sign > 0 { 1 } else { -1 },
        zero,
    }
}

/// Symmetry exponent at the far end of the slot's edge (0 when the slot holds
/// a leg or the far side is planar).
fn other_end_exponent(
    g: &DecGraph,
    occ: &[[Vec<Option<Occupant>>; 2]],
    blocks: &[[(Vec<u8>, Option<u8>); 2]],
    v: usize,
    side: Side,
    pos: usize,
) -> u8 {
    let sidx = if side == Side::Out { 0 } else { 1 };
    match occ[v][sidx][pos].unwrap() {
        Occupant::Leg(_) => 0,
        Occupant::Edge(i) => {
            let e = &g.edges[i];
            let (ov, osidx) = if side == Side::Out {
                (e.to_vertex as usize, 1)
            } else {
                (e.from_vertex as usize, 0)
            };
            blocks[ov][osidx].1.unwrap_or(0)
        }
    }
}

/// Canonical class of a decorated graph: the canonical representative and the
/// sign of the reordering, 0 when an odd automorphism kills the class.
pub fn canonical_class(g: &DecGraph) -> Result<(DecGraph, i8)> {
    g.validate()?;
    let n = g.vertices.len();
    let occ = g.occupancy()?;
    // initial vertex colours: corolla data plus attached leg labels
    let cells = refined_cells(
        n,
        |v| {
            let mut key = g.vertices[v].encode();
            let mut legs: Vec<Vec<u8>> = g
                .legs
                .iter()
                .filter(|l| l.vertex == v as u8)
                .map(|l| vec![l.label.out as u8, l.label.idx, if l.slot.side == Side::Out { 0 } else { 1 }, l.slot.pos])
                .collect();
            legs.sort();
            key.push(0xFE);
            for l in legs {
                key.extend(l);
            }
            key
        },
        |v, ranks| {
            let mut descs: Vec<Vec<u8>> = Vec::new();
            for e in &g.edges {
                if e.from_vertex == v as u8 {
                    let mut d = vec![0u8, e.from_pos];
                    d.extend(ranks[e.to_vertex as usize].to_be_bytes());
                    descs.push(d);
                }
                if e.to_vertex == v as u8 {
                    let mut d = vec![1u8, e.to_pos];
                    d.extend(ranks[e.from_vertex as usize].to_be_bytes());
                    descs.push(d);
                }
            }
            descs.sort();
            descs.into_iter().flatten().collect()
        },
    );
    drop(occ);
    let (_, perms) = min_perms(n, &cells, |perm| canonical_under_perm(g, perm).encoding, 2_000_000)
        .map_err(PropError::Graph)?;
    let first = canonical_under_perm(g, &perms[0]);
    if first.zero {
        return Ok((first.graph, 0));
    }
    let mut sign = first.sign;
    for p in &perms[1..] {
        let o = canonical_under_perm(g, p);
        if o.zero || o.sign != sign {
            sign = 0;
            break;
        }
    }
    Ok((first.graph, sign))
}

/// A finite formal linear combination of canonical classes over the
/// rationals. All terms are expected to share the external profile; this is
/// asserted when adding in debug builds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combination {
    pub k: u8,
    terms: BTreeMap<Vec<u8>, (DecGraph, Q)>,
}

impl Combination {
    pub fn zero(k: u8) -> Self {
        Combination {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_graph(g: &DecGraph, coeff: Q) -> Result<Self> {
        let mut c = Combination::zero(g.k);
        c.add_graph(g, coeff)?;
        Ok(c)
    }

    /// Canonicalizes the graph and accumulates `coeff * sign`.
    pub fn add_graph(&mut self, g: &DecGraph, coeff: Q) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        let (canon, sign) = canonical_class(g)?;
        if sign == 0 {
            return Ok(());
        }
        let c = coeff * linalg::q_int(sign as i64);
        let key = canon.encode();
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert((canon, c));
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().1.clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.get_mut().1 = sum;
                }
            }
        }
        Ok(())
    }

    pub fn add(&mut self, other: &Combination) {
        for (key, (g, c)) in &other.terms {
            match self.terms.entry(key.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert((g.clone(), c.clone()));
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().1.clone() + c.clone();
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        e.get_mut().1 = sum;
                    }
                }
            }
        }
    }

    pub fn scaled(&self, s: &Q) -> Combination {
        if s.is_zero() {
            return Combination::zero(self.k);
        }
        Combination {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(k, (g, c))| (k.clone(), (g.clone(), c.clone() * s.clone())))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DecGraph, &Q)> {
        self.terms.values().map(|(g, c)| (g, c))
    }

    pub fn coeff(&self, canon_key: &[u8]) -> Q {
        self.terms
            .get(canon_key)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }
}

/// Glues matched leg pairs of two decorated graphs into internal edges.
/// Matched legs must sit on opposite basic sides and carry equal words; the
/// surviving labels of the two parts must stay distinct. The result is
/// rejected when the skeleton acquires a wheel in a colour `<= l`.
pub fn graft_raw(
    a: &DecGraph,
    b: &DecGraph,
    matching: &[(ExtLeg, ExtLeg)],
    l: i8,
) -> Result<DecGraph> {
    let shift = a.vertices.len() as u8;
    let mut vertices = a.vertices.clone();
    vertices.extend(b.vertices.iter().cloned());
    let mut edges = a.edges.clone();
    edges.extend(b.edges.iter().map(|e| DecEdge {
        from_vertex: e.from_vertex + shift,
        from_pos: e.from_pos,
        to_vertex: e.to_vertex + shift,
        to_pos: e.to_pos,
    }));
    let find = |g: &DecGraph, lab: ExtLeg| -> Result<DecLeg> {
        g.legs
            .iter()
            .find(|x| x.label == lab)
            .cloned()
            .ok_or_else(|| PropError::NoSuchLeg(lab.to_string()))
    };
    let mut used_a = Vec::new();
    let mut used_b = Vec::new();
    for (la, lb) in matching {
        let la_leg = find(a, *la)?;
        let lb_leg = find(b, *lb)?;
        let wa = a.vertices[la_leg.vertex as usize].word(la_leg.slot);
        let wb = b.vertices[lb_leg.vertex as usize].word(lb_leg.slot);
        if wa != wb || la_leg.slot.side == lb_leg.slot.side {
            return Err(PropError::GraftMismatch(la.to_string(), lb.to_string()));
        }
        let e = if la_leg.slot.side == Side::Out {
            DecEdge {
                from_vertex: la_leg.vertex,
                from_pos: la_leg.slot.pos,
                to_vertex: lb_leg.vertex + shift,
                to_pos: lb_leg.slot.pos,
            }
        } else {
            DecEdge {
                from_vertex: lb_leg.vertex + shift,
                from_pos: lb_leg.slot.pos,
                to_vertex: la_leg.vertex,
                to_pos: la_leg.slot.pos,
            }
        };
        edges.push(e);
        used_a.push(*la);
        used_b.push(*lb);
    }
    let mut legs: Vec<DecLeg> = a
        .legs
        .iter()
        .filter(|x| !used_a.contains(&x.label))
        .cloned()
        .collect();
    for x in b.legs.iter().filter(|x| !used_b.contains(&x.label)) {
        if legs.iter().any(|y| y.label == x.label) {
            return Err(PropError::LabelClash(x.label.to_string()));
        }
        legs.push(DecLeg {
            vertex: x.vertex + shift,
            slot: x.slot,
            label: x.label,
        });
    }
    let g = DecGraph {
        k: a.k,
        vertices,
        edges,
        legs,
    };
    g.validate()?;
    if !g.is_admissible(l)? {
        return Err(PropError::Inadmissible);
    }
    Ok(g)
}

/// Spec-facing graft: glue and canonicalize into a one-term combination (which
/// may be empty when the class is killed by its own symmetry).
pub fn graft(
    a: &DecGraph,
    b: &DecGraph,
    matching: &[(ExtLeg, ExtLeg)],
    l: i8,
) -> Result<Combination> {
    let g = graft_raw(a, b, matching, l)?;
    Combination::from_graph(&g, linalg::q_int(1))
}
