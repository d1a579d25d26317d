//! Finite slices of the free props: decorated-tree bases at a fixed leg
//! profile, the differential as a matrix, slice cohomology and relation
//! quotients.

use crate::dec::{graft_raw, Combination, DecGraph, ExtLeg, Side};
use crate::delta::delta_on_graph;
use crate::family::{corolla_graph, distinct_corollas, Family};
use crate::{PropError, Result};
use graphcore::OrientWord;
use linalg::{cohomology_dim, q_int, rank, ExactField, Q, SparseMatrix};
use std::collections::BTreeMap;

/// External leg profile: words of the output legs `o0..` and input legs
/// `i0..` of a slice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Profile {
    pub outs: Vec<OrientWord>,
    pub ins: Vec<OrientWord>,
}

impl Profile {
    pub fn operadic(out: OrientWord, ins: Vec<OrientWord>) -> Self {
        Profile {
            outs: vec![out],
            ins,
        }
    }

    pub fn arity(&self) -> usize {
        self.outs.len() + self.ins.len()
    }

    fn legs(&self) -> Vec<(ExtLeg, Side, OrientWord)> {
        let mut v = Vec::new();
        for (i, w) in self.outs.iter().enumerate() {
            v.push((ExtLeg::o(i as u8), Side::Out, *w));
        }
        for (i, w) in self.ins.iter().enumerate() {
            v.push((ExtLeg::i(i as u8), Side::In, *w));
        }
        v
    }

    pub fn describe(&self) -> String {
        let outs: Vec<String> = self.outs.iter().map(|w| w.to_string_pm()).collect();
        let ins: Vec<String> = self.ins.iter().map(|w| w.to_string_pm()).collect();
        format!("[{}|{}]", outs.join(","), ins.join(","))
    }

    /// All profiles with the given leg counts, one per multiset of words on
    /// either side (representatives of the relabelling orbits).
    pub fn all(k: u8, m: usize, n: usize) -> Vec<Profile> {
        use itertools::Itertools;
        let words: Vec<OrientWord> = OrientWord::all(k).collect();
        let outs: Vec<Vec<OrientWord>> = words
            .iter()
            .copied()
            .combinations_with_replacement(m)
            .collect();
        let ins: Vec<Vec<OrientWord>> = words
            .iter()
            .copied()
            .combinations_with_replacement(n)
            .collect();
        let mut out = Vec::new();
        for o in &outs {
            for i in &ins {
                out.push(Profile {
                    outs: o.clone(),
                    ins: i.clone(),
                });
            }
        }
        out
    }
}

type Legs = Vec<(ExtLeg, Side, OrientWord)>;

fn legs_key(legs: &Legs) -> Vec<u8> {
    let mut key = Vec::new();
    let mut sorted = legs.clone();
    sorted.sort();
    for (lab, side, w) in sorted {
        key.push(lab.out as u8);
        key.push(lab.idx);
        key.push(if side == Side::Out { 0 } else { 1 });
        key.extend(w.bits().to_be_bytes());
    }
    key
}

/// Enumerates, per vertex count, every decorated connected genus-zero graph
/// over the family's generators with the given external legs. Trees are
/// produced in canonical form and deduplicated.
struct TreeGen {
    family: Family,
    memo: BTreeMap<(Vec<u8>, usize), Vec<DecGraph>>,
    cap: usize,
}

impl TreeGen {
    fn new(family: Family, cap: usize) -> Self {
        TreeGen {
            family,
            memo: BTreeMap::new(),
            cap,
        }
    }

    fn single_vertices(&self, legs: &Legs) -> Result<Vec<DecGraph>> {
        let m = legs.iter().filter(|l| l.1 == Side::Out).count();
        let n = legs.len() - m;
        let mut out = Vec::new();
        for g in crate::family::generator_basis(self.family, m, n)? {
            // relabel the generator's canonical legs onto the requested ones
            // in every side/word-compatible way
            let gl = g.legs.clone();
            for assignment in leg_bijections(&g, &gl, legs) {
                let mut h = g.clone();
                for (leg_idx, target) in assignment.iter().enumerate() {
                    h.legs[leg_idx].label = *target;
                }
                h.legs.sort_by_key(|l| l.label);
                push_canon(&mut out, &h)?;
            }
        }
        Ok(out)
    }

    fn trees(&mut self, legs: &Legs, v: usize) -> Result<Vec<DecGraph>> {
        let key = (legs_key(legs), v);
        if let Some(t) = self.memo.get(&key) {
            return Ok(t.clone());
        }
        let mut out: BTreeMap<Vec<u8>, DecGraph> = BTreeMap::new();
        if v == 1 {
            for t in self.single_vertices(legs)? {
                out.insert(t.encode(), t);
            }
        } else {
            // split: an edge of the tree separates it into two subtrees; the
            // tail side gets a synthetic out leg, the head side an in leg
            let k = self.family.k();
            let synth = 254 - v as u8;
            for v1 in 1..v {
                let v2 = v - v1;
                for mask in 0u32..(1 << legs.len()) {
                    let p1: Legs = legs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, l)| l.clone())
                        .collect();
                    let p2: Legs = legs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) == 0)
                        .map(|(_, l)| l.clone())
                        .collect();
                    for word in OrientWord::all(k) {
                        let mut l1 = p1.clone();
                        l1.push((ExtLeg::o(synth), Side::Out, word));
                        let mut l2 = p2.clone();
                        l2.push((ExtLeg::i(synth), Side::In, word));
                        let t1s = self.trees(&l1, v1)?;
                        if t1s.is_empty() {
                            continue;
                        }
                        let t2s = self.trees(&l2, v2)?;
                        for t1 in &t1s {
                            for t2 in &t2s {
                                let g = graft_raw(
                                    t1,
                                    t2,
                                    &[(ExtLeg::o(synth), ExtLeg::i(synth))],
                                    self.family.k() as i8,
                                )?;
                                let (canon, sign) = crate::dec::canonical_class(&g)?;
                                if sign != 0 {
                                    out.insert(canon.encode(), canon);
                                }
                                if out.len() > self.cap {
                                    return Err(PropError::CapExceeded(self.cap));
                                }
                            }
                        }
                    }
                }
            }
        }
        let v_out: Vec<DecGraph> = out.into_values().collect();
        self.memo.insert(key, v_out.clone());
        Ok(v_out)
    }
}

fn push_canon(out: &mut Vec<DecGraph>, g: &DecGraph) -> Result<()> {
    let (canon, sign) = crate::dec::canonical_class(g)?;
    if sign != 0 && !out.iter().any(|x| x == &canon) {
        out.push(canon);
    }
    Ok(())
}

/// All bijections from the legs of `g` onto `targets` preserving side and
/// word, expressed as the target label for each leg index of `g`.
fn leg_bijections(
    g: &DecGraph,
    legs: &[crate::dec::DecLeg],
    targets: &Legs,
) -> Vec<Vec<ExtLeg>> {
    fn rec(
        g: &DecGraph,
        legs: &[crate::dec::DecLeg],
        targets: &Legs,
        used: &mut Vec<bool>,
        acc: &mut Vec<ExtLeg>,
        out: &mut Vec<Vec<ExtLeg>>,
    ) {
        let i = acc.len();
        if i == legs.len() {
            out.push(acc.clone());
            return;
        }
        let side = legs[i].slot.side;
        let word = g.vertices[legs[i].vertex as usize].word(legs[i].slot);
        for (j, (lab, tside, tword)) in targets.iter().enumerate() {
            if used[j] || *tside != side || *tword != word {
                continue;
            }
            used[j] = true;
            acc.push(*lab);
            rec(g, legs, targets, used, acc, out);
            acc.pop();
            used[j] = false;
        }
    }
    if legs.len() != targets.len() {
        return vec![];
    }
    let mut out = Vec::new();
    rec(
        g,
        legs,
        targets,
        &mut vec![false; targets.len()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Basis of the slice, grouped by homological degree. `max_vertices` caps the
/// tree size (only binding for the HoLB family, whose slices are otherwise
/// unbounded; the associative and Lie slices are finite at fixed arity).
pub fn slice_basis(
    family: Family,
    profile: &Profile,
    max_vertices: usize,
    cap: usize,
) -> Result<BTreeMap<i64, Vec<DecGraph>>> {
    let mut gen = TreeGen::new(family, cap);
    let legs = profile.legs();
    let mut by_degree: BTreeMap<i64, Vec<DecGraph>> = BTreeMap::new();
    for v in 1..=max_vertices {
        for t in gen.trees(&legs, v)? {
            by_degree.entry(t.degree()).or_default().push(t);
        }
    }
    for ts in by_degree.values_mut() {
        ts.sort_by_key(|t| t.encode());
    }
    Ok(by_degree)
}

#[derive(Debug, Clone)]
pub struct SliceTable {
    pub family: Family,
    pub profile: Profile,
    /// degree -> (basis size, cohomology dimension, trusted)
    pub rows: BTreeMap<i64, (usize, usize, bool)>,
}

impl SliceTable {
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.rows.iter().map(|(&d, &(_, dim, _))| (d, dim)).collect()
    }

    pub fn concentrated_in_degree_zero(&self) -> bool {
        self.rows
            .iter()
            .all(|(&d, &(_, dim, _))| d == 0 || dim == 0)
    }
}

/// The differential matrix from the degree-`d` basis to the degree-`d+1`
/// basis, acting on column vectors.
fn delta_matrix(
    lower: &[DecGraph],
    upper: &[DecGraph],
) -> Result<SparseMatrix> {
    let index: BTreeMap<Vec<u8>, usize> = upper
        .iter()
        .enumerate()
        .map(|(i, g)| (g.encode(), i))
        .collect();
    let mut m = SparseMatrix::zero(upper.len(), lower.len(), ExactField::Rationals);
    for (col, g) in lower.iter().enumerate() {
        let dg = delta_on_graph(g)?;
        for (t, coeff) in dg.terms() {
            let key = t.encode();
            let row = index.get(&key).copied().ok_or_else(|| {
                PropError::BadCorolla(format!(
                    "differential left the enumerated slice (degree {})",
                    g.degree()
                ))
            })?;
            m.add(row, col, coeff.clone())?;
        }
    }
    Ok(m)
}

/// Bases of decorated trees per degree, differential matrices between them,
/// and the exact cohomology dimension in every degree.
pub fn slice_cohomology(
    family: Family,
    profile: &Profile,
    max_vertices: usize,
    cap: usize,
) -> Result<SliceTable> {
    let basis = slice_basis(family, profile, max_vertices, cap)?;
    let empty: Vec<DecGraph> = Vec::new();
    let mut rows = BTreeMap::new();
    let window_bound = matches!(family, Family::HoLB { .. });
    for (&d, b) in &basis {
        let below = basis.get(&(d - 1)).unwrap_or(&empty);
        let above = basis.get(&(d + 1)).unwrap_or(&empty);
        let d_in = delta_matrix_checked(below, b, max_vertices)?;
        let d_out = delta_matrix_checked(b, above, max_vertices)?;
        let (dim, trusted) = match (d_in, d_out) {
            (Some(din), Some(dout)) => (cohomology_dim(&din, &dout)?, true),
            _ => (0, false),
        };
        let trusted = trusted
            && (!window_bound
                || below
                    .iter()
                    .chain(b.iter())
                    .all(|g| g.n_vertices() < max_vertices));
        rows.insert(d, (b.len(), dim, trusted));
    }
    Ok(SliceTable {
        family,
        profile: profile.clone(),
        rows,
    })
}

fn delta_matrix_checked(
    lower: &[DecGraph],
    upper: &[DecGraph],
    _max_vertices: usize,
) -> Result<Option<SparseMatrix>> {
    match delta_matrix(lower, upper) {
        Ok(m) => Ok(Some(m)),
        Err(PropError::BadCorolla(msg)) if msg.contains("left the enumerated slice") => Ok(None),
        Err(e) => Err(e),
    }
}

/// Vector of a combination in the given canonical basis; terms outside the
/// basis are an error.
pub fn combination_vector(c: &Combination, basis: &[DecGraph]) -> Result<Vec<Q>> {
    let index: BTreeMap<Vec<u8>, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, g)| (g.encode(), i))
        .collect();
    let mut v = vec![Q::from_integer(0.into()); basis.len()];
    for (t, coeff) in c.terms() {
        let i = index
            .get(&t.encode())
            .copied()
            .ok_or_else(|| PropError::BadCorolla("term outside the slice basis".into()))?;
        v[i] = coeff.clone();
    }
    Ok(v)
}

/// Relation instances at the given profile: every tree over the family's
/// binary generators with exactly one vertex expanded by a generating
/// relation, including all label matchings.
pub fn relation_instances(
    family: Family,
    relations: &[Combination],
    profile: &Profile,
    total_vertices: usize,
) -> Result<Vec<Combination>> {
    let legs = profile.legs();
    let mut out = Vec::new();
    rel_trees(family, relations, &legs, total_vertices, &mut out)?;
    Ok(out)
}

fn rel_trees(
    family: Family,
    relations: &[Combination],
    legs: &Legs,
    v: usize,
    out: &mut Vec<Combination>,
) -> Result<()> {
    // v counts ordinary vertices plus one for the relation vertex
    fn inner(
        family: Family,
        relations: &[Combination],
        legs: &Legs,
        v: usize,
        gen: &mut TreeGen,
    ) -> Result<Vec<Combination>> {
        let mut acc = Vec::new();
        if v == 1 {
            // the relation itself, relabelled onto the requested legs
            for r in relations {
                let Some((first, _)) = r.terms().next() else {
                    continue;
                };
                let rlegs = first.legs.clone();
                for assignment in leg_bijections(first, &rlegs, legs) {
                    let mut relabelled = Combination::zero(first.k);
                    for (t, coeff) in r.terms() {
                        let mut h = t.clone();
                        for leg in &mut h.legs {
                            let pos = rlegs
                                .iter()
                                .position(|x| x.label == leg.label)
                                .expect("all terms share the leg profile");
                            leg.label = assignment[pos];
                        }
                        h.legs.sort_by_key(|l| l.label);
                        relabelled.add_graph(&h, coeff.clone())?;
                    }
                    if !relabelled.is_zero() {
                        acc.push(relabelled);
                    }
                }
            }
            return Ok(acc);
        }
        let k = family.k();
        let synth = 254 - v as u8;
        for v1 in 1..v {
            let v2 = v - v1;
            for mask in 0u32..(1 << legs.len()) {
                let p1: Legs = legs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, l)| l.clone())
                    .collect();
                let p2: Legs = legs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) == 0)
                    .map(|(_, l)| l.clone())
                    .collect();
                for word in OrientWord::all(k) {
                    let mut l1 = p1.clone();
                    l1.push((ExtLeg::o(synth), Side::Out, word));
                    let mut l2 = p2.clone();
                    l2.push((ExtLeg::i(synth), Side::In, word));
                    // relation in part 1, plain trees in part 2 and vice versa
                    for (rel_first, la, va, lb, vb) in
                        [(true, &l1, v1, &l2, v2), (false, &l1, v1, &l2, v2)]
                    {
                        let (combos, trees) = if rel_first {
                            (inner(family, relations, la, va, gen)?, gen.trees(lb, vb)?)
                        } else {
                            (inner(family, relations, lb, vb, gen)?, gen.trees(la, va)?)
                        };
                        for c in &combos {
                            for t in &trees {
                                let mut glued = Combination::zero(k);
                                for (g, coeff) in c.terms() {
                                    let raw = if rel_first {
                                        graft_raw(
                                            g,
                                            t,
                                            &[(ExtLeg::o(synth), ExtLeg::i(synth))],
                                            k as i8,
                                        )
                                    } else {
                                        graft_raw(
                                            t,
                                            g,
                                            &[(ExtLeg::o(synth), ExtLeg::i(synth))],
                                            k as i8,
                                        )
                                    };
                                    match raw {
                                        Ok(h) => glued.add_graph(&h, coeff.clone())?,
                                        Err(PropError::Inadmissible) => continue,
                                        Err(e) => return Err(e),
                                    }
                                }
                                if !glued.is_zero() {
                                    acc.push(glued);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(acc)
    }
    let mut gen = TreeGen::new(family, 1_000_000);
    out.extend(inner(family, relations, legs, v, &mut gen)?);
    Ok(())
}

/// Dimension of the quotient of the free slice by the ideal generated by the
/// relations: `dim(free slice) - rank(relation saturation)`.
pub fn quotient_dim(
    family: Family,
    relations: &[Combination],
    profile: &Profile,
    cap: usize,
) -> Result<usize> {
    // all generators of the quotient families are binary / arity three, so a
    // tree at this profile has a forced vertex count
    let m = profile.outs.len();
    let n = profile.ins.len();
    let free_vertices = match family {
        Family::Ass { .. } | Family::Lie { .. } => n.saturating_sub(1),
        Family::IB | Family::LieBDiop => (m + n).saturating_sub(2),
        _ => {
            return Err(PropError::UnsupportedFamily(format!("{family:?}")));
        }
    };
    let basis_by_degree = slice_basis(family, profile, free_vertices, cap)?;
    let empty = Vec::new();
    let basis = basis_by_degree.get(&0).unwrap_or(&empty);
    if basis.is_empty() {
        return Ok(0);
    }
    let rel_vertices = free_vertices.saturating_sub(1);
    let instances = relation_instances(family, relations, profile, rel_vertices)?;
    let mut mat = SparseMatrix::zero(instances.len(), basis.len(), ExactField::Rationals);
    for (row, inst) in instances.iter().enumerate() {
        let v = combination_vector(inst, basis)?;
        for (col, x) in v.into_iter().enumerate() {
            mat.add(row, col, x)?;
        }
    }
    Ok(basis.len() - rank(&mat)?)
}

/// The degree-zero binary-tree slice dimension of the free (non-quotient)
/// family, used as a brute-force reference.
pub fn free_binary_slice_dim(family: Family, profile: &Profile, cap: usize) -> Result<usize> {
    let n = profile.ins.len();
    let basis = slice_basis(family, profile, n.saturating_sub(1), cap)?;
    Ok(basis.get(&0).map_or(0, |b| b.len()))
}

/// Generators of the quotient family at every valid sub-profile, exposed for
/// relation generation: the differentials of the arity-three corollas of the
/// corresponding homotopy family.
pub fn generated_relations(family: Family) -> Result<Vec<Combination>> {
    let (dg_family, arities): (Family, Vec<(usize, usize)>) = match family {
        Family::Ass { k } => (Family::AssInf { k }, vec![(1, 3)]),
        Family::Lie { k } => (Family::LieInf { k }, vec![(1, 3)]),
        Family::LieBDiop => (
            Family::HoLB { c: 1, d: 1, k: 0 },
            vec![(1, 3), (2, 2), (3, 1)],
        ),
        _ => return Err(PropError::UnsupportedFamily(format!("{family:?}"))),
    };
    let mut out = Vec::new();
    for (m, n) in arities {
        for c in distinct_corollas(dg_family, m, n) {
            let g = corolla_graph(&c)?;
            let _ = g;
            let d = crate::delta::delta(&c)?;
            // re-tag the binary corollas with the quotient family so the
            // relation lives in the quotient's free prop
            let mut retagged = Combination::zero(c.family.k());
            for (t, coeff) in d.terms() {
                let mut h = t.clone();
                for v in &mut h.vertices {
                    v.family = family;
                }
                retagged.add_graph(&h, coeff.clone())?;
            }
            if !retagged.is_zero() {
                out.push(retagged);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> OrientWord {
        OrientWord::parse_pm(s).unwrap()
    }

    #[test]
    fn planar_tree_count_arity_three() {
        // 12 planar binary trees at arity 3 (2 shapes x 3! labels)
        let p = Profile::operadic(w(""), vec![w(""), w(""), w("")]);
        let basis = slice_basis(Family::Ass { k: 0 }, &p, 2, 100_000).unwrap();
        assert_eq!(basis.get(&0).map(|b| b.len()), Some(12));
    }

    #[test]
    fn lie_tree_count_arity_three() {
        let p = Profile::operadic(w(""), vec![w(""), w(""), w("")]);
        let basis = slice_basis(Family::Lie { k: 0 }, &p, 2, 100_000).unwrap();
        assert_eq!(basis.get(&0).map(|b| b.len()), Some(3));
    }

    #[test]
    fn ass_quotient_dim_is_regular_representation() {
        let p = Profile::operadic(w(""), vec![w(""), w(""), w("")]);
        let rels = generated_relations(Family::Ass { k: 0 }).unwrap();
        let dim = quotient_dim(Family::Ass { k: 0 }, &rels, &p, 100_000).unwrap();
        assert_eq!(dim, 6);
    }

    #[test]
    fn lie_quotient_dim_arity_three() {
        let p = Profile::operadic(w(""), vec![w(""), w(""), w("")]);
        let rels = generated_relations(Family::Lie { k: 0 }).unwrap();
        let dim = quotient_dim(Family::Lie { k: 0 }, &rels, &p, 100_000).unwrap();
        assert_eq!(dim, 2);
    }

    #[test]
    fn assinf_slice_arity_three_concentrated() {
        let p = Profile::operadic(w(""), vec![w(""), w(""), w("")]);
        let table = slice_cohomology(Family::AssInf { k: 0 }, &p, 2, 100_000).unwrap();
        assert!(table.concentrated_in_degree_zero());
        assert_eq!(table.dims().get(&0), Some(&6));
    }
}
