//! Canonical labelling by partition refinement plus backtracking over the
//! refined cells. The permutation search is generic over the encoding so the
//! decorated-graph machinery elsewhere in the workspace can reuse it.

use crate::graph::{DParity, Edge, Leg, MultiGraph};
use crate::{GraphError, Result};
use std::collections::BTreeMap;

/// Canonical representative plus the sign relating the input's sign order to
/// the canonical one. Sign 0 means the class is killed by an odd automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalClass {
    pub graph: MultiGraph,
    pub sign: i8,
}

/// Parity of a permutation given as `perm[i] = image of i`.
pub fn perm_parity(perm: &[u8]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = perm[j] as usize;
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Parity of the permutation sorting `keys` into nondecreasing order, or
/// `None` when two keys are equal (the sort permutation is then ambiguous).
pub fn sort_parity<T: Ord>(keys: &[T]) -> Option<i8> {
    let mut sign = 1i8;
    for i in 0..keys.len() {
        for j in (i + 1)..keys.len() {
            match keys[i].cmp(&keys[j]) {
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some(sign)
}

/// Searches the products of per-cell permutations for those minimizing the
/// encoding produced by `encode_under`. Vertices of cell `c` receive the
/// canonical ids following all earlier cells, in the chosen order.
///
/// Returns the minimal encoding and every permutation achieving it
/// (`perm[old_id] = canonical_id`).
pub fn min_perms<F>(
    n: usize,
    cells: &[Vec<u8>],
    encode_under: F,
    cap: usize,
) -> Result<(Vec<u8>, Vec<Vec<u8>>)>
where
    F: Fn(&[u8]) -> Vec<u8>,
{
    let mut total: usize = 1;
    for c in cells {
        total = total.saturating_mul(factorial(c.len()));
        if total > cap {
            return Err(GraphError::CanonCapExceeded);
        }
    }
    let mut perm = vec![0u8; n];
    let mut best: Option<(Vec<u8>, Vec<Vec<u8>>)> = None;
    let mut orderings: Vec<Vec<Vec<u8>>> = Vec::new();
    for c in cells {
        orderings.push(permutations(c));
    }
    let mut idx = vec![0usize; cells.len()];
    loop {
        // materialize perm for the current choice of per-cell orderings
        let mut next_id = 0u8;
        for (ci, cell_orders) in orderings.iter().enumerate() {
            for &old in &cell_orders[idx[ci]] {
                perm[old as usize] = next_id;
                next_id += 1;
            }
        }
        let enc = encode_under(&perm);
        match &mut best {
            None => best = Some((enc, vec![perm.clone()])),
            Some((benc, perms)) => match enc.cmp(benc) {
                std::cmp::Ordering::Less => {
                    *benc = enc;
                    perms.clear();
                    perms.push(perm.clone());
                }
                std::cmp::Ordering::Equal => perms.push(perm.clone()),
                std::cmp::Ordering::Greater => {}
            },
        }
        // advance the mixed-radix counter
        let mut c = 0;
        loop {
            if c == orderings.len() {
                let (enc, perms) = best.unwrap();
                return Ok((enc, perms));
            }
            idx[c] += 1;
            if idx[c] < orderings[c].len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product::<usize>().max(1)
}

fn permutations(items: &[u8]) -> Vec<Vec<u8>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut items = items.to_vec();
    heap_permutations(&mut items, &mut out);
    out.sort();
    out
}

fn heap_permutations(items: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    fn rec(k: usize, items: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            rec(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let k = items.len();
    rec(k, items, out);
}

/// Iterative refinement of a vertex partition by invariant local data,
/// returning the cells in a relabelling-invariant order.
pub fn refined_cells(n: usize, init_key: impl Fn(usize) -> Vec<u8>, neighbor_data: impl Fn(usize, &[u32]) -> Vec<u8>) -> Vec<Vec<u8>> {
    // rank vertices by invariant keys, then refine with neighbour ranks
    let mut ranks: Vec<u32> = {
        let keys: Vec<Vec<u8>> = (0..n).map(&init_key).collect();
        rank_by_key(&keys)
    };
    loop {
        let keys: Vec<Vec<u8>> = (0..n)
            .map(|v| {
                let mut key = ranks[v].to_be_bytes().to_vec();
                key.extend(neighbor_data(v, &ranks));
                key
            })
            .collect();
        let new_ranks = rank_by_key(&keys);
        if new_ranks == ranks {
            break;
        }
        ranks = new_ranks;
    }
    let mut cells: BTreeMap<u32, Vec<u8>> = BTreeMap::new();
    for v in 0..n {
        cells.entry(ranks[v]).or_default().push(v as u8);
    }
    cells.into_values().collect()
}

fn rank_by_key(keys: &[Vec<u8>]) -> Vec<u32> {
    let mut sorted: Vec<&Vec<u8>> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    let index: BTreeMap<&Vec<u8>, u32> = sorted
        .into_iter()
        .enumerate()
        .map(|(i, k)| (k, i as u32))
        .collect();
    keys.iter().map(|k| index[k]).collect()
}

fn edge_descriptor(e: &Edge, v: u8) -> Vec<u8> {
    // role: 0 = tadpole, 1 = outgoing, 2 = incoming
    let role = if e.tail == v && e.head == v {
        0u8
    } else if e.tail == v {
        1
    } else {
        2
    };
    let mut d = vec![role];
    d.extend_from_slice(&e.orient.bits().to_be_bytes());
    d
}

fn graph_cells(g: &MultiGraph) -> Vec<Vec<u8>> {
    let n = g.n_vertices as usize;
    refined_cells(
        n,
        |v| {
            let mut descs: Vec<Vec<u8>> = Vec::new();
            for e in &g.edges {
                if e.tail == v as u8 || e.head == v as u8 {
                    descs.push(edge_descriptor(e, v as u8));
                }
            }
            descs.sort();
            let mut key = Vec::new();
            for d in descs {
                key.extend(d);
            }
            let mut legs: Vec<Vec<u8>> = g
                .legs
                .iter()
                .filter(|l| l.vertex == v as u8)
                .map(|l| {
                    let mut lb = l.multidir.bits().to_be_bytes().to_vec();
                    lb.extend(l.label.as_bytes());
                    lb
                })
                .collect();
            legs.sort();
            key.push(0xFF);
            for l in legs {
                key.extend(l);
            }
            key
        },
        |v, ranks| {
            let mut descs: Vec<Vec<u8>> = Vec::new();
            for e in &g.edges {
                if e.tail == v as u8 {
                    let mut d = edge_descriptor(e, v as u8);
                    d.extend(ranks[e.head as usize].to_be_bytes());
                    descs.push(d);
                }
                if e.head == v as u8 && !(e.tail == v as u8 && e.head == v as u8) {
                    let mut d = edge_descriptor(e, v as u8);
                    d.extend(ranks[e.tail as usize].to_be_bytes());
                    descs.push(d);
                }
            }
            descs.sort();
            descs.into_iter().flatten().collect()
        },
    )
}

fn apply_perm(g: &MultiGraph, perm: &[u8]) -> MultiGraph {
    let mut edges: Vec<Edge> = g
        .edges
        .iter()
        .map(|e| Edge {
            tail: perm[e.tail as usize],
            head: perm[e.head as usize],
            orient: e.orient,
        })
        .collect();
    edges.sort();
    let mut legs: Vec<Leg> = g
        .legs
        .iter()
        .map(|l| Leg {
            vertex: perm[l.vertex as usize],
            label: l.label.clone(),
            multidir: l.multidir,
        })
        .collect();
    legs.sort();
    MultiGraph {
        k: g.k,
        n_vertices: g.n_vertices,
        edges,
        legs,
    }
}

/// Sign of the permutation `perm` with respect to the sign-carrying order:
/// edge order for even `d` (the parity of sorting the relabelled edge list),
/// vertex order for odd `d`. `None` encodes an ambiguous (hence zero) class.
fn perm_sign(g: &MultiGraph, perm: &[u8], parity: DParity) -> Option<i8> {
    match parity {
        DParity::Odd => Some(perm_parity(perm)),
        DParity::Even => {
            let mapped: Vec<(u8, u8, u32)> = g
                .edges
                .iter()
                .map(|e| {
                    (
                        perm[e.tail as usize],
                        perm[e.head as usize],
                        e.orient.bits(),
                    )
                })
                .collect();
            sort_parity(&mapped)
        }
    }
}

/// Canonical form of a multi-oriented graph, with the sign of the relabelling
/// for the given parity of `d`. The canonical graph itself does not depend on
/// the parity.
pub fn canonicalize(g: &MultiGraph, parity: DParity) -> Result<CanonicalClass> {
    let n = g.n_vertices as usize;
    let cells = graph_cells(g);
    let (_, perms) = min_perms(n, &cells, |perm| apply_perm(g, perm).encode(), 2_000_000)?;
    let canon = apply_perm(g, &perms[0]);
    let mut sign: Option<i8> = None;
    for p in &perms {
        match perm_sign(g, p, parity) {
            None => {
                return Ok(CanonicalClass { graph: canon, sign: 0 });
            }
            Some(s) => match sign {
                None => sign = Some(s),
                Some(prev) if prev != s => {
                    return Ok(CanonicalClass { graph: canon, sign: 0 });
                }
                _ => {}
            },
        }
    }
    Ok(CanonicalClass {
        graph: canon,
        sign: sign.unwrap_or(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::OrientWord;

    fn w(s: &str) -> OrientWord {
        OrientWord::parse_pm(s).unwrap()
    }

    #[test]
    fn single_edge_sign_plus_one() {
        let mut g = MultiGraph::new(0, 2);
        g.add_edge(0, 1, w(""));
        let c = canonicalize(&g, DParity::Even).unwrap();
        assert_eq!(c.sign, 1);
    }

    #[test]
    fn parallel_identical_edges_vanish_for_even_d() {
        let mut g = MultiGraph::new(0, 2);
        g.add_edge(0, 1, w(""));
        g.add_edge(0, 1, w(""));
        let c = canonicalize(&g, DParity::Even).unwrap();
        assert_eq!(c.sign, 0);
        // for odd d the vertex order is unaffected by the edge swap
        let c = canonicalize(&g, DParity::Odd).unwrap();
        assert_ne!(c.sign, 0);
    }

    #[test]
    fn acyclic_triangle_has_trivial_automorphisms() {
        // source -> middle, middle -> sink, source -> sink
        let mut g = MultiGraph::new(0, 3);
        g.add_edge(0, 1, w(""));
        g.add_edge(1, 2, w(""));
        g.add_edge(0, 2, w(""));
        for parity in [DParity::Even, DParity::Odd] {
            let c = canonicalize(&g, parity).unwrap();
            assert_ne!(c.sign, 0);
        }
    }

    #[test]
    fn relabelling_changes_sign_by_perm_parity() {
        // 3 vertices in a directed path 0 -> 1 -> 2
        let mut g = MultiGraph::new(0, 3);
        g.add_edge(0, 1, w(""));
        g.add_edge(1, 2, w(""));
        let base = canonicalize(&g, DParity::Odd).unwrap();
        // swap vertices 0 and 1: path 1 -> 0 -> 2
        let mut h = MultiGraph::new(0, 3);
        h.add_edge(1, 0, w(""));
        h.add_edge(0, 2, w(""));
        let swapped = canonicalize(&h, DParity::Odd).unwrap();
        assert_eq!(base.graph, swapped.graph);
        assert_eq!(base.sign, -swapped.sign);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let mut g = MultiGraph::new(1, 3);
        g.add_edge(2, 0, w("-"));
        g.add_edge(0, 1, w("+"));
        g.add_edge(2, 1, w("+"));
        for parity in [DParity::Even, DParity::Odd] {
            let c = canonicalize(&g, parity).unwrap();
            if c.sign == 0 {
                continue;
            }
            let c2 = canonicalize(&c.graph, parity).unwrap();
            assert_eq!(c2.graph, c.graph);
            assert_eq!(c2.sign, 1);
        }
    }
}
