//! The derivation action of the graph complex on the homotopy Lie-bialgebra
//! prop: a graph acts on a generator by summing over all attachments of the
//! generator's legs to the graph's vertices, every vertex becoming a
//! generator corolla; terms with an invalid corolla (undervalent, without
//! inputs or outputs, or missing a colour flow) are dropped.

use crate::element::{GcParams, GCElement};
use crate::ops::delta0;
use crate::{GcError, Result};
use graphcore::{MultiGraph, OrientWord};
use linalg::{q_int, Q};
use num::Zero;
use propcalc::dec::{Combination, DecEdge, DecGraph, DecLeg, ExtLeg, Side, Slot};
use propcalc::delta::{delta, delta_on_graph, splice};
use propcalc::family::{distinct_corollas, Corolla, Family};

/// One slot payload while assembling a vertex corolla.
#[derive(Clone, Copy)]
enum Conn {
    /// edge index into the graph's edge list, at the given end (0 = tail)
    Edge(usize, u8),
    Leg(ExtLeg),
}

/// Stable word sort.
fn sort_words(items: &mut Vec<(OrientWord, Conn)>) {
    let mut idx: Vec<usize> = (0..items.len()).collect();
    idx.sort_by(|&a, &b| items[a].0.cmp(&items[b].0).then(a.cmp(&b)));
    let sorted: Vec<(OrientWord, Conn)> = idx.iter().map(|&i| items[i]).collect();
    *items = sorted;
}

/// Odd-symbol bookkeeping for one action term. Every vertex carries a symbol
/// of parity `c+d+1`, every edge a tail symbol of parity `c` and a head
/// symbol of parity `d`, every generator leg its side's parity. The sign of
/// the term is the Koszul sign of reordering the reference sequence
/// (vertices, then edges in graph order, then legs in label order) into the
/// assembled per-vertex slot grouping.
struct SymbolCalc {
    /// reference position and parity per symbol id
    parity: Vec<u8>,
    /// final sequence of symbol ids
    final_seq: Vec<usize>,
}

impl SymbolCalc {
    fn sign(&self) -> i64 {
        let mut sign = 1i64;
        for a in 0..self.final_seq.len() {
            for b in (a + 1)..self.final_seq.len() {
                if self.final_seq[a] > self.final_seq[b]
                    && self.parity[self.final_seq[a]] == 1
                    && self.parity[self.final_seq[b]] == 1
                {
                    sign = -sign;
                }
            }
        }
        sign
    }
}

/// `F(Gamma)` evaluated on one generator: the sum over all ways of attaching
/// the generator's out and in legs to the graph's vertices.
pub fn derivation_action(
    holb: Family,
    gamma: &MultiGraph,
    gen: &Corolla,
) -> Result<Combination> {
    derivation_action_with(holb, gamma, gen, edge_sign_correction)
}

/// Per-edge sign correction aligning the action of the one-edge graph with
/// the generator differential (the calibration instances): for an edge with
/// decorated end profiles `(m_t, n_t)` and `(m_h, n_h)` the term acquires
/// `(-1)^{n_t m_h + m_t n_h + m_t + m_h}`.
fn edge_sign_correction(g: &MultiGraph, out_at: &[u8], in_at: &[u8]) -> Option<i64> {
    let nv = g.n_vertices as usize;
    let mut m = vec![0i64; nv];
    let mut n = vec![0i64; nv];
    for e in &g.edges {
        m[e.tail as usize] += 1;
        n[e.head as usize] += 1;
    }
    for &v in out_at {
        m[v as usize] += 1;
    }
    for &v in in_at {
        n[v as usize] += 1;
    }
    let mut total = 0i64;
    for e in &g.edges {
        let (t, h) = (e.tail as usize, e.head as usize);
        total += n[t] * m[h] + m[t] * n[h] + m[t] + m[h];
    }
    Some(total)
}

/// The attachment hook returns `None` to drop a term or `Some(extra sign
/// exponent)` to keep it.
#[doc(hidden)]
pub fn derivation_action_with(
    holb: Family,
    gamma: &MultiGraph,
    gen: &Corolla,
    extra: impl Fn(&MultiGraph, &[u8], &[u8]) -> Option<i64>,
) -> Result<Combination> {
    let Family::HoLB { c, d, k } = holb else {
        return Err(GcError::ParamMismatch(format!("not a HoLB family: {holb:?}")));
    };
    if gamma.k != k {
        return Err(GcError::ParamMismatch(
            "graph and family colour counts differ".into(),
        ));
    }
    let nv = gamma.n_vertices as usize;
    let m = gen.m();
    let n = gen.n();
    let mut out = Combination::zero(k);
    if nv == 0 {
        return Ok(out);
    }
    // attachment codes: every out leg and in leg picks a vertex
    let total = (nv as u64)
        .checked_pow((m + n) as u32)
        .ok_or(GcError::CapExceeded(usize::MAX))?;
    'outer: for code in 0..total {
        let mut cds = code;
        let mut out_at = Vec::with_capacity(m);
        for _ in 0..m {
            out_at.push((cds % nv as u64) as u8);
            cds /= nv as u64;
        }
        let mut in_at = Vec::with_capacity(n);
        for _ in 0..n {
            in_at.push((cds % nv as u64) as u8);
            cds /= nv as u64;
        }
        // symbol ids in reference order: one per vertex, then (tail, head)
        // per edge, then one per generator leg
        let ne = gamma.edges.len();
        let vertex_sym = |v: usize| v;
        let edge_tail_sym = |ei: usize| nv + 2 * ei;
        let edge_head_sym = |ei: usize| nv + 2 * ei + 1;
        let out_leg_sym = |j: usize| nv + 2 * ne + j;
        let in_leg_sym = |j: usize| nv + 2 * ne + m + j;
        let theta = (c + d + 1).rem_euclid(2) as u8;
        let mut parity = vec![theta; nv];
        for _ in 0..ne {
            parity.push(c.rem_euclid(2) as u8);
            parity.push(d.rem_euclid(2) as u8);
        }
        parity.extend(std::iter::repeat(c.rem_euclid(2) as u8).take(m));
        parity.extend(std::iter::repeat(d.rem_euclid(2) as u8).take(n));
        let mut final_seq: Vec<usize> = Vec::with_capacity(parity.len());
        // assemble the corolla of every vertex
        let mut vertices = Vec::with_capacity(nv);
        let mut edge_slots: Vec<[Option<(u8, u8)>; 2]> = vec![[None, None]; gamma.edges.len()];
        let mut leg_slots: Vec<Option<(u8, Slot)>> = vec![None; m + n];
        for v in 0..nv {
            // slot assembly order matches the generator differential's
            // convention: legs before edges on the output side, edges before
            // legs on the input side (the stable word sort preserves it)
            let mut outs: Vec<(OrientWord, Conn)> = Vec::new();
            let mut ins: Vec<(OrientWord, Conn)> = Vec::new();
            for (j, &at) in out_at.iter().enumerate() {
                if at as usize == v {
                    outs.push((gen.out_words[j], Conn::Leg(ExtLeg::o(j as u8))));
                }
            }
            for (ei, e) in gamma.edges.iter().enumerate() {
                if e.tail as usize == v {
                    outs.push((e.orient, Conn::Edge(ei, 0)));
                }
                if e.head as usize == v {
                    ins.push((e.orient, Conn::Edge(ei, 1)));
                }
            }
            for (j, &at) in in_at.iter().enumerate() {
                if at as usize == v {
                    ins.push((gen.in_words[j], Conn::Leg(ExtLeg::i(j as u8))));
                }
            }
            sort_words(&mut outs);
            sort_words(&mut ins);
            // grouped word per vertex: out symbols, the vertex symbol, in
            // symbols; this grouping is what matches the implemented
            // generator differential (see the action tests)
            for (_, conn) in &outs {
                final_seq.push(match conn {
                    Conn::Edge(ei, _) => edge_tail_sym(*ei),
                    Conn::Leg(lab) => out_leg_sym(lab.idx as usize),
                });
            }
            final_seq.push(vertex_sym(v));
            for (_, conn) in &ins {
                final_seq.push(match conn {
                    Conn::Edge(ei, _) => edge_head_sym(*ei),
                    Conn::Leg(lab) => in_leg_sym(lab.idx as usize),
                });
            }
            let corolla = Corolla::new(
                holb,
                outs.iter().map(|x| x.0).collect(),
                ins.iter().map(|x| x.0).collect(),
            );
            if !corolla.is_valid() {
                continue 'outer;
            }
            for (pos, (_, conn)) in outs.iter().enumerate() {
                match conn {
                    Conn::Edge(ei, end) => edge_slots[*ei][*end as usize] = Some((v as u8, pos as u8)),
                    Conn::Leg(lab) => {
                        leg_slots[lab.idx as usize] = Some((
                            v as u8,
                            Slot {
                                side: Side::Out,
                                pos: pos as u8,
                            },
                        ))
                    }
                }
            }
            for (pos, (_, conn)) in ins.iter().enumerate() {
                match conn {
                    Conn::Edge(ei, end) => edge_slots[*ei][*end as usize] = Some((v as u8, pos as u8)),
                    Conn::Leg(lab) => {
                        leg_slots[m + lab.idx as usize] = Some((
                            v as u8,
                            Slot {
                                side: Side::In,
                                pos: pos as u8,
                            },
                        ))
                    }
                }
            }
            vertices.push(corolla);
        }
        let Some(extra_exp) = extra(gamma, &out_at, &in_at) else {
            continue 'outer;
        };
        let mut sign = SymbolCalc { parity, final_seq }.sign();
        if extra_exp.rem_euclid(2) == 1 {
            sign = -sign;
        }
        let edges: Vec<DecEdge> = edge_slots
            .iter()
            .map(|slots| {
                let (fv, fp) = slots[0].expect("tail slot assigned");
                let (tv, tp) = slots[1].expect("head slot assigned");
                DecEdge {
                    from_vertex: fv,
                    from_pos: fp,
                    to_vertex: tv,
                    to_pos: tp,
                }
            })
            .collect();
        let mut legs: Vec<DecLeg> = Vec::new();
        for j in 0..m {
            let (v, slot) = leg_slots[j].expect("out leg attached");
            legs.push(DecLeg {
                vertex: v,
                slot,
                label: ExtLeg::o(j as u8),
            });
        }
        for j in 0..n {
            let (v, slot) = leg_slots[m + j].expect("in leg attached");
            legs.push(DecLeg {
                vertex: v,
                slot,
                label: ExtLeg::i(j as u8),
            });
        }
        legs.sort_by_key(|l| l.label);
        let g = DecGraph {
            k,
            vertices,
            edges,
            legs,
        };
        out.add_graph(&g, q_int(sign))?;
    }
    Ok(out)
}

/// `F(x)` on a generator for a combination `x` of graphs.
pub fn derivation_action_element(
    holb: Family,
    x: &GCElement,
    gen: &Corolla,
) -> Result<Combination> {
    let mut out = Combination::zero(holb.k());
    for (g, coeff) in x.terms() {
        let f = derivation_action(holb, g, gen)?;
        out.add(&f.scaled(coeff));
    }
    Ok(out)
}

/// Applies the derivation determined by `values` (its action on generators)
/// to a decorated graph, by the Leibniz rule with the derivation's degree.
fn apply_derivation(
    holb: Family,
    deg: i64,
    values: &dyn Fn(&Corolla) -> Result<Combination>,
    g: &DecGraph,
) -> Result<Combination> {
    let mut out = Combination::zero(holb.k());
    let mut prefix = 0i64;
    for v in 0..g.vertices.len() {
        let cor = &g.vertices[v];
        let fv = values(cor)?;
        let koszul = if (deg * prefix).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        for (t, coeff) in fv.terms() {
            let spliced = splice(g, v, t);
            out.add_graph(&spliced, coeff.clone() * q_int(koszul))?;
        }
        prefix += cor.degree();
    }
    Ok(out)
}

#[derive(Debug)]
pub struct ChainMapReport {
    pub graphs_checked: usize,
    pub generators_checked: usize,
    /// `F(gamma0) = 2 delta` on every generator (2 is the normalization of
    /// the Maurer-Cartan element, which carries both basic directions)
    pub gamma0_matches_delta: bool,
    pub failures: Vec<String>,
}

impl ChainMapReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.gamma0_matches_delta
    }
}

/// Verifies that the action respects the differentials: `F(gamma0)` equals
/// twice the generator differential, and
/// `F(delta0 Gamma) = [F(gamma0), F(Gamma)] = 2 [delta, F(Gamma)]`
/// on every basis graph within the window and every generator with
/// `m + n <= arity_bound`.
pub fn verify_chain_map(
    params: GcParams,
    holb: Family,
    graphs: &[MultiGraph],
    arity_bound: usize,
) -> Result<ChainMapReport> {
    let Family::HoLB { c, d, .. } = holb else {
        return Err(GcError::ParamMismatch(format!("not a HoLB family: {holb:?}")));
    };
    if params.d != c + d + 1 {
        return Err(GcError::ParamMismatch(format!(
            "graph parameter d = {} does not match c + d + 1 = {}",
            params.d,
            c + d + 1
        )));
    }
    let mut gens = Vec::new();
    for m in 1..arity_bound {
        for n in 1..arity_bound {
            if m + n >= 3 && m + n <= arity_bound {
                gens.extend(distinct_corollas(holb, m, n));
            }
        }
    }
    let g0 = crate::ops::gamma0(params)?;
    let mut gamma0_matches_delta = true;
    for gen in &gens {
        let f = derivation_action_element(holb, &g0, gen)?;
        let mut diff = f;
        diff.add(&delta(gen)?.scaled(&q_int(-2)));
        if !diff.is_zero() {
            gamma0_matches_delta = false;
        }
    }
    let mut report = ChainMapReport {
        graphs_checked: 0,
        generators_checked: gens.len(),
        gamma0_matches_delta,
        failures: Vec::new(),
    };
    for g in graphs {
        report.graphs_checked += 1;
        let x = GCElement::from_graph(params, g, q_int(1))?;
        let deg_f = g.gc_degree(params.d);
        let dx = delta0(&x)?;
        for gen in &gens {
            // lhs: F(delta0 Gamma)(gen)
            let lhs = derivation_action_element(holb, &dx, gen)?;
            // rhs: 2 ( delta(F(Gamma)(gen)) - (-1)^{|F|} F(Gamma)(delta gen) )
            let fgamma = derivation_action(holb, g, gen)?;
            let mut rhs = Combination::zero(holb.k());
            for (t, coeff) in fgamma.terms() {
                rhs.add(&delta_on_graph(t)?.scaled(coeff));
            }
            let sgn = if deg_f.rem_euclid(2) == 0 { -1 } else { 1 };
            for (t, coeff) in delta(gen)?.terms() {
                let ft = apply_derivation(
                    holb,
                    deg_f,
                    &|cor| derivation_action(holb, g, cor),
                    t,
                )?;
                rhs.add(&ft.scaled(&(coeff.clone() * q_int(sgn))));
            }
            let mut diff = lhs.clone();
            diff.add(&rhs.scaled(&q_int(-2)));
            if !diff.is_zero() {
                report.failures.push(format!(
                    "graph V={} E={}, generator ({}, {}): {} residual terms",
                    g.n_vertices,
                    g.edges.len(),
                    gen.m(),
                    gen.n(),
                    diff.len()
                ));
            }
        }
    }
    Ok(report)
}

#[allow(unused)]
fn q_zero() -> Q {
    Q::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::edge_graph;

    #[test]
    fn single_edge_action_on_small_generators_vanishes() {
        // every attachment to the 2-vertex single-edge graph leaves a vertex
        // undervalent or without inputs/outputs for (m, n) = (1, 1)-profile
        // attachments; the smallest generators have m + n = 3 and the edge
        // graph still cannot support them
        let holb = Family::HoLB { c: 1, d: 1, k: 1 };
        let g = edge_graph(1, OrientWord::parse_pm("+").unwrap());
        for gen in distinct_corollas(holb, 2, 1) {
            let f = derivation_action(holb, &g, &gen).unwrap();
            assert!(f.is_zero());
        }
        for gen in distinct_corollas(holb, 1, 2) {
            let f = derivation_action(holb, &g, &gen).unwrap();
            assert!(f.is_zero());
        }
    }
}
