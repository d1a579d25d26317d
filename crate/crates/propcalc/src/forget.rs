//! The forgetful dioperad morphisms: the basic orientation of a 2-oriented
//! associative (resp. Lie) element is dropped and the blue direction becomes
//! the target's single orientation.

use crate::dec::{Combination, DecEdge, DecGraph, DecLeg, ExtLeg, Side, Slot};
use crate::family::{Corolla, Family};
use crate::rel;
use crate::slice::{combination_vector, relation_instances, slice_basis, Profile};
use crate::{PropError, Result};
use graphcore::OrientWord;
use linalg::{in_span, ExactField, SparseMatrix};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForgetfulMap {
    /// `Ass^(2)` to the infinitesimal-bialgebra dioperad
    Alpha,
    /// `Lie^(2)` to the Lie-bialgebra dioperad
    Beta,
}

impl ForgetfulMap {
    pub fn source(&self) -> Family {
        match self {
            ForgetfulMap::Alpha => Family::Ass { k: 1 },
            ForgetfulMap::Beta => Family::Lie { k: 1 },
        }
    }

    pub fn target(&self) -> Family {
        match self {
            ForgetfulMap::Alpha => Family::IB,
            ForgetfulMap::Beta => Family::LieBDiop,
        }
    }
}

/// The four binary generator shapes of the 2-oriented source operads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GenShape {
    Aligned,
    Reversed,
    MixedAlignedOut,
    MixedReversedOut,
}

fn classify(c: &Corolla) -> Result<GenShape> {
    let al = OrientWord::parse_pm("+").unwrap();
    let an = OrientWord::parse_pm("-").unwrap();
    if c.m() != 1 || c.n() != 2 {
        return Err(PropError::BadCorolla(format!(
            "forgetful map applies to binary generators, got {c:?}"
        )));
    }
    let sig = (c.out_words[0], c.in_words[0], c.in_words[1]);
    if sig == (al, al, al) {
        Ok(GenShape::Aligned)
    } else if sig == (an, an, an) {
        Ok(GenShape::Reversed)
    } else if sig == (al, al, an) {
        Ok(GenShape::MixedAlignedOut)
    } else if sig == (an, al, an) {
        Ok(GenShape::MixedReversedOut)
    } else {
        Err(PropError::BadCorolla(format!("not a generator: {c:?}")))
    }
}

/// Classification plus slot table of a binary source generator: whether the
/// image is the product-type corolla, and the new slot of each connection
/// point `(o, a, b)` = (output, first input, second input). Shared with the
/// reduced symplectic representations, where it fixes how bracket and
/// cobracket tensors occupy the generator legs.
pub fn generator_image(c: &Corolla) -> Result<(bool, [Slot; 3])> {
    Ok(image_table(classify(c)?))
}

/// Per-generator images: the target corolla and the new slot of each old
/// connection point `(o, a, b)` = (output, first input, second input).
fn image_table(shape: GenShape) -> (bool, [Slot; 3]) {
    // bool: target is the product-type corolla (1 out, 2 ins); otherwise the
    // coproduct-type (2 outs, 1 in)
    let out = |pos| Slot {
        side: Side::Out,
        pos,
    };
    let inp = |pos| Slot {
        side: Side::In,
        pos,
    };
    match shape {
        GenShape::Aligned => (true, [out(0), inp(0), inp(1)]),
        GenShape::Reversed => (false, [inp(0), out(1), out(0)]),
        GenShape::MixedAlignedOut => (false, [out(0), inp(0), out(1)]),
        GenShape::MixedReversedOut => (true, [inp(0), inp(1), out(0)]),
    }
}

fn target_corolla(map: ForgetfulMap, product: bool) -> Corolla {
    let e = OrientWord::parse_pm("").unwrap();
    if product {
        Corolla::new(map.target(), vec![e], vec![e, e])
    } else {
        Corolla::new(map.target(), vec![e, e], vec![e])
    }
}

fn forget_graph(map: ForgetfulMap, g: &DecGraph) -> Result<DecGraph> {
    let mut vertices = Vec::new();
    let mut point_map: Vec<[Slot; 3]> = Vec::new();
    for c in &g.vertices {
        if c.family != map.source() {
            return Err(PropError::UnsupportedFamily(format!("{:?}", c.family)));
        }
        let shape = classify(c)?;
        let (product, slots) = image_table(shape);
        vertices.push(target_corolla(map, product));
        point_map.push(slots);
    }
    let point = |v: u8, side: Side, pos: u8| -> Slot {
        let idx = match (side, pos) {
            (Side::Out, 0) => 0,
            (Side::In, 0) => 1,
            (Side::In, 1) => 2,
            _ => unreachable!("binary corollas only"),
        };
        point_map[v as usize][idx]
    };
    let mut edges = Vec::new();
    for e in &g.edges {
        let from_slot = point(e.from_vertex, Side::Out, e.from_pos);
        let to_slot = point(e.to_vertex, Side::In, e.to_pos);
        // the blue direction of the old edge decides the new direction; the
        // slot sides already encode it
        let (fv, fs, tv, ts) = if from_slot.side == Side::Out {
            debug_assert_eq!(to_slot.side, Side::In);
            (e.from_vertex, from_slot, e.to_vertex, to_slot)
        } else {
            debug_assert_eq!(to_slot.side, Side::Out);
            (e.to_vertex, to_slot, e.from_vertex, from_slot)
        };
        edges.push(DecEdge {
            from_vertex: fv,
            from_pos: fs.pos,
            to_vertex: tv,
            to_pos: ts.pos,
        });
    }
    let mut legs: Vec<DecLeg> = g
        .legs
        .iter()
        .map(|l| DecLeg {
            vertex: l.vertex,
            slot: point(l.vertex, l.slot.side, l.slot.pos),
            label: l.label,
        })
        .collect();
    legs.sort_by_key(|l| l.label);
    Ok(DecGraph {
        k: 0,
        vertices,
        edges,
        legs,
    })
}

/// Applies the forgetful morphism to a combination of decorated graphs over
/// the source family, extending the generator table multiplicatively.
pub fn forgetful(map: ForgetfulMap, x: &Combination) -> Result<Combination> {
    let mut out = Combination::zero(0);
    for (g, coeff) in x.terms() {
        let h = forget_graph(map, g)?;
        out.add_graph(&h, coeff.clone())?;
    }
    Ok(out)
}

/// Relabels the external legs of a 1-oriented combination to the canonical
/// `o0.. / i0..` names ordered by the original labels, returning the
/// relabelled combination and its profile.
pub fn normalize_labels(x: &Combination) -> Result<(Combination, Profile)> {
    let Some((first, _)) = x.terms().next() else {
        return Ok((
            x.clone(),
            Profile {
                outs: vec![],
                ins: vec![],
            },
        ));
    };
    let prof = first.profile();
    let mut rename: BTreeMap<ExtLeg, ExtLeg> = BTreeMap::new();
    let mut outs = Vec::new();
    let mut ins = Vec::new();
    for (lab, side, w) in &prof {
        match side {
            Side::Out => {
                rename.insert(*lab, ExtLeg::o(outs.len() as u8));
                outs.push(*w);
            }
            Side::In => {
                rename.insert(*lab, ExtLeg::i(ins.len() as u8));
                ins.push(*w);
            }
        }
    }
    let mut out = Combination::zero(x.k);
    for (g, coeff) in x.terms() {
        let mut h = g.clone();
        for l in &mut h.legs {
            l.label = rename[&l.label];
        }
        h.legs.sort_by_key(|l| l.label);
        out.add_graph(&h, coeff.clone())?;
    }
    Ok((out, Profile { outs, ins }))
}

#[derive(Debug)]
pub struct MorphismReport {
    pub map: ForgetfulMap,
    /// per source relation: whether its image lies in the target relation span
    pub in_span: Vec<bool>,
}

impl MorphismReport {
    pub fn all_zero(&self) -> bool {
        self.in_span.iter().all(|&b| b)
    }
}

/// Checks a combination of target decorated graphs against the span of the
/// target's generating relations at the same profile.
pub fn image_in_relation_span(target: Family, image: &Combination) -> Result<bool> {
    if image.is_zero() {
        return Ok(true);
    }
    let (normalized, profile) = normalize_labels(image)?;
    let vertices = normalized
        .terms()
        .next()
        .map(|(g, _)| g.n_vertices())
        .unwrap_or(1);
    let basis_by_degree = slice_basis(target, &profile, vertices, 1_000_000)?;
    let empty = Vec::new();
    let basis = basis_by_degree.get(&0).unwrap_or(&empty);
    let rels = rel::relations_for(target)?;
    let instances = relation_instances(target, &rels, &profile, vertices.saturating_sub(1))?;
    let mut span = SparseMatrix::zero(instances.len(), basis.len(), ExactField::Rationals);
    for (row, inst) in instances.iter().enumerate() {
        for (col, v) in combination_vector(inst, basis)?.into_iter().enumerate() {
            span.add(row, col, v)?;
        }
    }
    let vec = combination_vector(&normalized, basis)?;
    Ok(in_span(&vec, &span)?)
}

/// Maps every generating relation of the source through the forgetful
/// morphism and reduces it against the target's relation span.
pub fn verify_morphism(map: ForgetfulMap) -> Result<MorphismReport> {
    let rels = match map {
        ForgetfulMap::Alpha => rel::ass2_relations()?,
        ForgetfulMap::Beta => rel::lie2_relations()?,
    };
    let mut in_span_flags = Vec::new();
    for r in &rels {
        let image = forgetful(map, r)?;
        in_span_flags.push(image_in_relation_span(map.target(), &image)?);
    }
    Ok(MorphismReport {
        map,
        in_span: in_span_flags,
    })
}

/// Negative control: the same morphism with one generator image negated. At
/// least one relation image must then leave the relation span.
pub fn verify_corrupted_beta() -> Result<MorphismReport> {
    let rels = rel::lie2_relations()?;
    let mut in_span_flags = Vec::new();
    for r in &rels {
        let mut corrupted = Combination::zero(0);
        for (g, coeff) in r.terms() {
            let h = forget_graph(ForgetfulMap::Beta, g)?;
            // flip the sign of every term containing the all-reversed
            // generator image (the cobracket coming from the reversed
            // bracket), which corrupts exactly one generator assignment
            let flips = g
                .vertices
                .iter()
                .filter(|c| matches!(classify(c), Ok(GenShape::Reversed)))
                .count() as i64;
            let sign = if flips % 2 == 0 { 1 } else { -1 };
            corrupted.add_graph(&h, coeff.clone() * linalg::q_int(sign))?;
        }
        in_span_flags.push(image_in_relation_span(Family::LieBDiop, &corrupted)?);
    }
    Ok(MorphismReport {
        map: ForgetfulMap::Beta,
        in_span: in_span_flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use linalg::q_int;

    fn w(s: &str) -> OrientWord {
        OrientWord::parse_pm(s).unwrap()
    }

    #[test]
    fn alpha_sends_aligned_product_to_ib_product() {
        let c = Corolla::new(Family::Ass { k: 1 }, vec![w("+")], vec![w("+"), w("+")]);
        let g = crate::family::corolla_graph(&c).unwrap();
        let x = Combination::from_graph(&g, q_int(1)).unwrap();
        let y = forgetful(ForgetfulMap::Alpha, &x).unwrap();
        assert_eq!(y.len(), 1);
        let (img, coeff) = y.terms().next().unwrap();
        assert_eq!(coeff, &q_int(1));
        assert_eq!(img.vertices[0].m(), 1);
        assert_eq!(img.vertices[0].n(), 2);
    }

    #[test]
    fn beta_sends_reversed_bracket_to_cobracket() {
        let c = Corolla::new(Family::Lie { k: 1 }, vec![w("-")], vec![w("-"), w("-")]);
        let g = crate::family::corolla_graph(&c).unwrap();
        let x = Combination::from_graph(&g, q_int(1)).unwrap();
        let y = forgetful(ForgetfulMap::Beta, &x).unwrap();
        assert_eq!(y.len(), 1);
        let (img, _) = y.terms().next().unwrap();
        assert_eq!(img.vertices[0].m(), 2);
        assert_eq!(img.vertices[0].n(), 1);
    }
}
