//! The divergence probe: a built-in truncation family whose legal composite
//! stabilizes in the truncation level while the blue-wheel composite grows
//! without bound.
//!
//! The family lives over a one-brane space with both blocks of dimension `p`
//! and decorates the symmetric homotopy Lie-bialgebra corollas (c = d = 0,
//! one extra colour). The coefficient patterns are sparse indicators chosen
//! to satisfy the finiteness clauses verbatim:
//!
//! * legal upper `(1|2) all aligned`, entries `[c; a, b] = [a = b = c]`:
//!   for fixed inputs `(a, b)` finitely many outputs `c`;
//! * legal lower `(2|1) all aligned`, entries `[a, b; d] = [a = b = d]`:
//!   for fixed input `d` finitely many outputs `(a, b)`;
//! * illegal upper `(1|2), second input reversed`, entries
//!   `[c; a, b] = [c = 0][a = b]`: for fixed plus-input `a` finitely many
//!   `(c, b)`;
//! * illegal lower `(2|1), second output reversed`, entries
//!   `[a, b; d] = [d = 0][a = b]`: for fixed `(a, b)` finitely many `d`.
//!
//! The illegal composite contracts the reversed pair over `a = b`, a sum of
//! size `p`.

use crate::brane::build_braned_space;
use crate::tensor::{evaluate, Representation, Tensor};
use crate::Result;
use graphcore::OrientWord;
use linalg::Q;
use propcalc::dec::{DecEdge, DecGraph, DecLeg, ExtLeg, Side, Slot};
use propcalc::family::{Corolla, Family};
use std::collections::BTreeMap;

fn family() -> Family {
    Family::HoLB { c: 0, d: 0, k: 1 }
}

fn al() -> OrientWord {
    OrientWord::parse_pm("+").unwrap()
}

fn an() -> OrientWord {
    OrientWord::parse_pm("-").unwrap()
}

fn upper_legal() -> Corolla {
    Corolla::new(family(), vec![al()], vec![al(), al()])
}

fn lower_legal() -> Corolla {
    Corolla::new(family(), vec![al(), al()], vec![al()])
}

fn upper_illegal() -> Corolla {
    Corolla::new(family(), vec![al()], vec![al(), an()])
}

fn lower_illegal() -> Corolla {
    Corolla::new(family(), vec![al(), an()], vec![al()])
}

/// The representation of the built-in family at truncation level `p`.
pub fn builtin_family(p: usize) -> Result<Representation> {
    let dims: BTreeMap<u32, usize> = [(0u32, p), (1u32, p)].into_iter().collect();
    let space = build_braned_space(1, dims, false)?;
    let mut rep = Representation::new(space, false);
    // legal upper: [c; a, b] = [a = b = c]
    let mut t = Tensor::zero(vec![p, p, p]);
    for x in 0..p as u16 {
        t.set(vec![x, x, x], linalg::q_int(1));
    }
    rep.assign(&upper_legal(), t.clone())?;
    // legal lower has the same indicator pattern with axes [a, b; d]
    rep.assign(&lower_legal(), t)?;
    // illegal upper: [c; a, b] = [c = 0][a = b]
    let mut t = Tensor::zero(vec![p, p, p]);
    for x in 0..p as u16 {
        t.set(vec![0, x, x], linalg::q_int(1));
    }
    rep.assign(&upper_illegal(), t)?;
    // illegal lower: [a, b; d] = [d = 0][a = b]
    let mut t = Tensor::zero(vec![p, p, p]);
    for x in 0..p as u16 {
        t.set(vec![x, x, 0], linalg::q_int(1));
    }
    rep.assign(&lower_illegal(), t)?;
    Ok(rep)
}

fn diagram(upper: Corolla, lower: Corolla) -> DecGraph {
    DecGraph {
        k: 1,
        vertices: vec![upper, lower],
        edges: vec![
            DecEdge {
                from_vertex: 1,
                from_pos: 0,
                to_vertex: 0,
                to_pos: 0,
            },
            DecEdge {
                from_vertex: 1,
                from_pos: 1,
                to_vertex: 0,
                to_pos: 1,
            },
        ],
        legs: vec![
            DecLeg {
                vertex: 0,
                slot: Slot {
                    side: Side::Out,
                    pos: 0,
                },
                label: ExtLeg::o(0),
            },
            DecLeg {
                vertex: 1,
                slot: Slot {
                    side: Side::In,
                    pos: 0,
                },
                label: ExtLeg::i(0),
            },
        ],
    }
}

/// The admissible composite: both internal edges aligned with the blue
/// direction.
pub fn legal_diagram() -> DecGraph {
    diagram(upper_legal(), lower_legal())
}

/// The blue-wheel composite: the second internal edge runs against the blue
/// direction, so the contraction closes a loop in that colour.
pub fn illegal_diagram() -> DecGraph {
    diagram(upper_illegal(), lower_illegal())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeRow {
    pub p: usize,
    pub coefficient: Q,
}

/// Computes the selected output coefficient of the diagram by direct
/// summation at every truncation level.
pub fn divergence_probe(
    diagram: &DecGraph,
    coordinates: (u16, u16),
    levels: &[usize],
) -> Result<Vec<ProbeRow>> {
    let mut rows = Vec::new();
    for &p in levels {
        let rep = builtin_family(p)?;
        let t = evaluate(diagram, &rep)?;
        let coefficient = t.get(&[coordinates.0, coordinates.1]);
        rows.push(ProbeRow { p, coefficient });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use linalg::q_int;

    #[test]
    fn diagrams_are_wellformed() {
        legal_diagram().validate().unwrap();
        illegal_diagram().validate().unwrap();
        assert!(legal_diagram().is_admissible(1).unwrap());
        assert!(!illegal_diagram().is_admissible(1).unwrap());
    }

    #[test]
    fn legal_coefficient_stabilizes() {
        let rows = divergence_probe(&legal_diagram(), (0, 0), &[4, 8, 16]).unwrap();
        assert!(rows.iter().all(|r| r.coefficient == q_int(1)));
    }

    #[test]
    fn illegal_coefficient_grows() {
        let rows = divergence_probe(&illegal_diagram(), (0, 0), &[4, 8, 16]).unwrap();
        let values: Vec<Q> = rows.iter().map(|r| r.coefficient.clone()).collect();
        assert_eq!(values, vec![q_int(4), q_int(8), q_int(16)]);
    }
}
