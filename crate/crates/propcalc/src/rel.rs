//! The generating relations of the binary quotient families, stored as
//! explicit combination constants transcribed from their defining displays.
//! Chained equalities are expanded into separate two-sided relations. The
//! relation sets are cross-checked elsewhere against the differentials of the
//! arity-three (resp. arity-four) homotopy generators.

use crate::dec::{Combination, DecEdge, DecGraph, DecLeg, ExtLeg, Side, Slot};
use crate::family::{Corolla, Family};
use crate::Result;
use graphcore::OrientWord;
use linalg::q_int;

/// A slot filler in a relation term.
#[derive(Clone, Copy)]
enum C {
    /// external leg
    L(ExtLeg),
    /// the internal edge
    E,
}

fn al() -> OrientWord {
    OrientWord::parse_pm("+").unwrap()
}

fn an() -> OrientWord {
    OrientWord::parse_pm("-").unwrap()
}

fn e0() -> OrientWord {
    OrientWord::parse_pm("").unwrap()
}

/// Builds the two-vertex tree with vertex order `[upper, lower]`; the edge
/// runs from the lower vertex's `E` output slot to the upper vertex's `E`
/// input slot. Slot order is exactly as listed.
fn term(
    family: Family,
    upper_outs: &[(OrientWord, C)],
    upper_ins: &[(OrientWord, C)],
    lower_outs: &[(OrientWord, C)],
    lower_ins: &[(OrientWord, C)],
) -> DecGraph {
    let upper = Corolla::new(
        family,
        upper_outs.iter().map(|x| x.0).collect(),
        upper_ins.iter().map(|x| x.0).collect(),
    );
    let lower = Corolla::new(
        family,
        lower_outs.iter().map(|x| x.0).collect(),
        lower_ins.iter().map(|x| x.0).collect(),
    );
    debug_assert!(upper.is_valid(), "{upper:?}");
    debug_assert!(lower.is_valid(), "{lower:?}");
    let mut legs = Vec::new();
    let mut efrom = None;
    let mut eto = None;
    let mut wire = |v: u8, side: Side, slots: &[(OrientWord, C)]| {
        for (pos, (_, c)) in slots.iter().enumerate() {
            match c {
                C::L(lab) => legs.push(DecLeg {
                    vertex: v,
                    slot: Slot {
                        side,
                        pos: pos as u8,
                    },
                    label: *lab,
                }),
                C::E => {
                    if side == Side::Out {
                        efrom = Some((v, pos as u8));
                    } else {
                        eto = Some((v, pos as u8));
                    }
                }
            }
        }
    };
    wire(0, Side::Out, upper_outs);
    wire(0, Side::In, upper_ins);
    wire(1, Side::Out, lower_outs);
    wire(1, Side::In, lower_ins);
    let (fv, fp) = efrom.expect("one output slot is the edge");
    let (tv, tp) = eto.expect("one input slot is the edge");
    legs.sort_by_key(|l| l.label);
    DecGraph {
        k: family.k(),
        vertices: vec![upper, lower],
        edges: vec![DecEdge {
            from_vertex: fv,
            from_pos: fp,
            to_vertex: tv,
            to_pos: tp,
        }],
        legs,
    }
}

fn combo(family: Family, terms: &[(i64, DecGraph)]) -> Result<Combination> {
    let mut c = Combination::zero(family.k());
    for (coeff, g) in terms {
        c.add_graph(g, q_int(*coeff))?;
    }
    Ok(c)
}

fn o(i: u8) -> C {
    C::L(ExtLeg::o(i))
}

fn i(idx: u8) -> C {
    C::L(ExtLeg::i(idx))
}

/// The six generating relations of the 2-oriented associative operad, with
/// legs `o0` and `i0, i1, i2`. Both sides of each displayed equality are
/// collected into a single combination (left minus right).
pub fn ass2_relations() -> Result<Vec<Combination>> {
    let f = Family::Ass { k: 1 };
    // operadic terms: upper output is o0, lower output is the edge
    let t = |up_ins: &[(OrientWord, C)], low_ins: &[(OrientWord, C)], up_out: OrientWord, e: OrientWord| {
        term(
            f,
            &[(up_out, o(0))],
            up_ins,
            &[(e, C::E)],
            low_ins,
        )
    };
    Ok(vec![
        // all blue-aligned associativity
        combo(
            f,
            &[
                (1, t(&[(al(), C::E), (al(), i(2))], &[(al(), i(0)), (al(), i(1))], al(), al())),
                (-1, t(&[(al(), i(0)), (al(), C::E)], &[(al(), i(1)), (al(), i(2))], al(), al())),
            ],
        )?,
        combo(
            f,
            &[
                (1, t(&[(al(), C::E), (an(), i(2))], &[(al(), i(0)), (al(), i(1))], al(), al())),
                (-1, t(&[(al(), i(0)), (al(), C::E)], &[(al(), i(1)), (an(), i(2))], al(), al())),
                (-1, t(&[(al(), i(0)), (an(), C::E)], &[(al(), i(1)), (an(), i(2))], al(), an())),
            ],
        )?,
        combo(
            f,
            &[
                (1, t(&[(al(), C::E), (an(), i(2))], &[(al(), i(0)), (an(), i(1))], al(), al())),
                (-1, t(&[(al(), i(0)), (an(), C::E)], &[(an(), i(1)), (an(), i(2))], al(), an())),
            ],
        )?,
        // all blue-reversed associativity
        combo(
            f,
            &[
                (1, t(&[(an(), C::E), (an(), i(2))], &[(an(), i(0)), (an(), i(1))], an(), an())),
                (-1, t(&[(an(), i(0)), (an(), C::E)], &[(an(), i(1)), (an(), i(2))], an(), an())),
            ],
        )?,
        combo(
            f,
            &[
                (1, t(&[(an(), C::E), (an(), i(2))], &[(al(), i(0)), (an(), i(1))], an(), an())),
                (1, t(&[(al(), C::E), (an(), i(2))], &[(al(), i(0)), (an(), i(1))], an(), al())),
                (-1, t(&[(al(), i(0)), (an(), C::E)], &[(an(), i(1)), (an(), i(2))], an(), an())),
            ],
        )?,
        combo(
            f,
            &[
                (1, t(&[(al(), C::E), (an(), i(2))], &[(al(), i(0)), (al(), i(1))], an(), al())),
                (-1, t(&[(al(), i(0)), (an(), C::E)], &[(al(), i(1)), (an(), i(2))], an(), an())),
            ],
        )?,
    ])
}

/// The six generating relations of the 2-oriented Lie operad, legs `o0`,
/// `i0, i1, i2`. The two Jacobi displays repeat their first term verbatim
/// where the cyclic third term is clearly intended; the transcription uses
/// the cyclic term.
pub fn lie2_relations() -> Result<Vec<Combination>> {
    let f = Family::Lie { k: 1 };
    let t = |up_ins: &[(OrientWord, C)], low_ins: &[(OrientWord, C)], up_out: OrientWord, e: OrientWord| {
        term(
            f,
            &[(up_out, o(0))],
            up_ins,
            &[(e, C::E)],
            low_ins,
        )
    };
    Ok(vec![
        // aligned Jacobi
        combo(
            f,
            &[
                (1, t(&[(al(), C::E), (al(), i(2))], &[(al(), i(0)), (al(), i(1))], al(), al())),
                (1, t(&[(al(), C::E), (al(), i(1))], &[(al(), i(2)), (al(), i(0))], al(), al())),
                (1, t(&[(al(), C::E), (al(), i(0))], &[(al(), i(1)), (al(), i(2))], al(), al())),
            ],
        )?,
        combo(
            f,
            &[
                (1, t(&[(al(), C::E), (an(), i(2))], &[(al(), i(0)), (al(), i(1))], al(), al())),
                (-1, t(&[(al(), i(0)), (al(), C::E)], &[(al(), i(1)), (an(), i(2))], al(), al())),
                (1, t(&[(al(), i(1)), (al(), C::E)], &[(al(), i(0)), (an(), i(2))], al(), al())),
                (-1, t(&[(al(), i(0)), (an(), C::E)], &[(al(), i(1)), (an(), i(2))], al(), an())),
                (1, t(&[(al(), i(1)), (an(), C::E)], &[(al(), i(0)), (an(), i(2))], al(), an())),
            ],
        )?,
        combo(
            f,
            &[
                (1, t(&[(al(), C::E), (an(), i(2))], &[(al(), i(0)), (an(), i(1))], al(), al())),
                (-1, t(&[(al(), C::E), (an(), i(1))], &[(al(), i(0)), (an(), i(2))], al(), al())),
                (-1, t(&[(al(), i(0)), (an(), C::E)], &[(an(), i(1)), (an(), i(2))], al(), an())),
            ],
        )?,
        // reversed Jacobi
        combo(
            f,
            &[
                (1, t(&[(an(), C::E), (an(), i(2))], &[(an(), i(0)), (an(), i(1))], an(), an())),
                (1, t(&[(an(), C::E), (an(), i(1))], &[(an(), i(2)), (an(), i(0))], an(), an())),
                (1, t(&[(an(), C::E), (an(), i(0))], &[(an(), i(1)), (an(), i(2))], an(), an())),
            ],
        )?,
        combo(
            f,
            &[
                (1, t(&[(an(), C::E), (an(), i(2))], &[(al(), i(0)), (an(), i(1))], an(), an())),
                (-1, t(&[(an(), C::E), (an(), i(1))], &[(al(), i(0)), (an(), i(2))], an(), an())),
                (1, t(&[(al(), C::E), (an(), i(2))], &[(al(), i(0)), (an(), i(1))], an(), al())),
                (-1, t(&[(al(), C::E), (an(), i(1))], &[(al(), i(0)), (an(), i(2))], an(), al())),
                (-1, t(&[(al(), i(0)), (an(), C::E)], &[(an(), i(1)), (an(), i(2))], an(), an())),
            ],
        )?,
        combo(
            f,
            &[
                (1, t(&[(al(), C::E), (an(), i(2))], &[(al(), i(0)), (al(), i(1))], an(), al())),
                (-1, t(&[(al(), i(0)), (an(), C::E)], &[(al(), i(1)), (an(), i(2))], an(), an())),
                (1, t(&[(al(), i(1)), (an(), C::E)], &[(al(), i(0)), (an(), i(2))], an(), an())),
            ],
        )?,
    ])
}

/// The three generating relations of the infinitesimal-bialgebra dioperad:
/// coassociativity (legs `o0 o1 o2 | i0`), associativity (`o0 | i0 i1 i2`),
/// and the compatibility of product and coproduct (`o0 o1 | i0 i1`).
pub fn ib_relations() -> Result<Vec<Combination>> {
    let f = Family::IB;
    let e = e0();
    Ok(vec![
        combo(
            f,
            &[
                (
                    1,
                    term(f, &[(e, o(0)), (e, o(1))], &[(e, C::E)], &[(e, C::E), (e, o(2))], &[(e, i(0))]),
                ),
                (
                    -1,
                    term(f, &[(e, o(1)), (e, o(2))], &[(e, C::E)], &[(e, o(0)), (e, C::E)], &[(e, i(0))]),
                ),
            ],
        )?,
        combo(
            f,
            &[
                (
                    1,
                    term(f, &[(e, o(0))], &[(e, C::E), (e, i(2))], &[(e, C::E)], &[(e, i(0)), (e, i(1))]),
                ),
                (
                    -1,
                    term(f, &[(e, o(0))], &[(e, i(0)), (e, C::E)], &[(e, C::E)], &[(e, i(1)), (e, i(2))]),
                ),
            ],
        )?,
        combo(
            f,
            &[
                (
                    1,
                    term(f, &[(e, o(0)), (e, o(1))], &[(e, C::E)], &[(e, C::E)], &[(e, i(0)), (e, i(1))]),
                ),
                (
                    -1,
                    term(f, &[(e, o(1))], &[(e, C::E), (e, i(1))], &[(e, o(0)), (e, C::E)], &[(e, i(0))]),
                ),
                (
                    -1,
                    term(f, &[(e, o(0))], &[(e, i(0)), (e, C::E)], &[(e, C::E), (e, o(1))], &[(e, i(1))]),
                ),
            ],
        )?,
    ])
}

/// The three generating relations of the Lie-bialgebra dioperad:
/// co-Jacobi (`o0 o1 o2 | i0`), Jacobi (`o0 | i0 i1 i2`) and the cocycle
/// compatibility (`o0 o1 | i0 i1`).
pub fn lieb_relations() -> Result<Vec<Combination>> {
    let f = Family::LieBDiop;
    let e = e0();
    Ok(vec![
        combo(
            f,
            &[
                (
                    1,
                    term(f, &[(e, o(0)), (e, o(1))], &[(e, C::E)], &[(e, C::E), (e, o(2))], &[(e, i(0))]),
                ),
                (
                    1,
                    term(f, &[(e, o(2)), (e, o(0))], &[(e, C::E)], &[(e, C::E), (e, o(1))], &[(e, i(0))]),
                ),
                (
                    1,
                    term(f, &[(e, o(1)), (e, o(2))], &[(e, C::E)], &[(e, C::E), (e, o(0))], &[(e, i(0))]),
                ),
            ],
        )?,
        combo(
            f,
            &[
                (
                    1,
                    term(f, &[(e, o(0))], &[(e, C::E), (e, i(2))], &[(e, C::E)], &[(e, i(0)), (e, i(1))]),
                ),
                (
                    1,
                    term(f, &[(e, o(0))], &[(e, C::E), (e, i(1))], &[(e, C::E)], &[(e, i(2)), (e, i(0))]),
                ),
                (
                    1,
                    term(f, &[(e, o(0))], &[(e, C::E), (e, i(0))], &[(e, C::E)], &[(e, i(1)), (e, i(2))]),
                ),
            ],
        )?,
        combo(
            f,
            &[
                (
                    1,
                    term(f, &[(e, o(0)), (e, o(1))], &[(e, C::E)], &[(e, C::E)], &[(e, i(0)), (e, i(1))]),
                ),
                (
                    -1,
                    term(f, &[(e, o(1))], &[(e, C::E), (e, i(1))], &[(e, o(0)), (e, C::E)], &[(e, i(0))]),
                ),
                (
                    1,
                    term(f, &[(e, o(1))], &[(e, C::E), (e, i(0))], &[(e, o(0)), (e, C::E)], &[(e, i(1))]),
                ),
                (
                    -1,
                    term(f, &[(e, o(0))], &[(e, C::E), (e, i(0))], &[(e, o(1)), (e, C::E)], &[(e, i(1))]),
                ),
                (
                    1,
                    term(f, &[(e, o(0))], &[(e, C::E), (e, i(1))], &[(e, o(1)), (e, C::E)], &[(e, i(0))]),
                ),
            ],
        )?,
    ])
}

/// The generating relations of a quotient family, keyed off the family tag.
pub fn relations_for(family: Family) -> Result<Vec<Combination>> {
    match family {
        Family::Ass { k: 1 } => ass2_relations(),
        Family::Lie { k: 1 } => lie2_relations(),
        Family::IB => ib_relations(),
        Family::LieBDiop => lieb_relations(),
        Family::Ass { .. } | Family::Lie { .. } => crate::slice::generated_relations(family),
        other => Err(crate::PropError::UnsupportedFamily(format!("{other:?}"))),
    }
}
