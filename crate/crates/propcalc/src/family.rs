//! Generator families and their corollas.

use crate::dec::{DecGraph, DecLeg, ExtLeg, Side, Slot};
use crate::{PropError, Result};
use graphcore::OrientWord;
use itertools::Itertools;

/// The generator families of the workspace. `AssInf`, `LieInf` and `HoLB` are
/// differential; `Ass`, `Lie`, `IB` and `LieBDiop` are their binary quotient
/// relatives used for relation checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    AssInf { k: u8 },
    LieInf { k: u8 },
    HoLB { c: i64, d: i64, k: u8 },
    Ass { k: u8 },
    Lie { k: u8 },
    IB,
    LieBDiop,
}

impl Family {
    pub fn k(&self) -> u8 {
        match self {
            Family::AssInf { k } | Family::LieInf { k } | Family::Ass { k } | Family::Lie { k } => {
                *k
            }
            Family::HoLB { k, .. } => *k,
            Family::IB | Family::LieBDiop => 0,
        }
    }

    pub fn is_dg(&self) -> bool {
        matches!(
            self,
            Family::AssInf { .. } | Family::LieInf { .. } | Family::HoLB { .. }
        )
    }

    /// Symmetry exponent of the output legs within an equal-word block:
    /// `None` = planar (no symmetry), `Some(0)` = symmetric, `Some(1)` = skew.
    pub fn out_symmetry(&self) -> Option<u8> {
        match self {
            Family::AssInf { .. } | Family::Ass { .. } | Family::IB => None,
            Family::LieInf { .. } | Family::Lie { .. } => None, // single output
            Family::HoLB { c, .. } => Some((c.rem_euclid(2)) as u8),
            Family::LieBDiop => Some(1),
        }
    }

    pub fn in_symmetry(&self) -> Option<u8> {
        match self {
            Family::AssInf { .. } | Family::Ass { .. } | Family::IB => None,
            Family::LieInf { .. } | Family::Lie { .. } => Some(1),
            Family::HoLB { d, .. } => Some((d.rem_euclid(2)) as u8),
            Family::LieBDiop => Some(1),
        }
    }

    pub fn tag_byte(&self) -> u8 {
        match self {
            Family::AssInf { .. } => 0,
            Family::LieInf { .. } => 1,
            Family::HoLB { .. } => 2,
            Family::Ass { .. } => 3,
            Family::Lie { .. } => 4,
            Family::IB => 5,
            Family::LieBDiop => 6,
        }
    }
}

/// A decorated one-vertex generator: the family plus the relative
/// extra-orientation words of its output and input legs in slot order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Corolla {
    pub family: Family,
    pub out_words: Vec<OrientWord>,
    pub in_words: Vec<OrientWord>,
}

impl Corolla {
    pub fn new(family: Family, out_words: Vec<OrientWord>, in_words: Vec<OrientWord>) -> Self {
        Corolla {
            family,
            out_words,
            in_words,
        }
    }

    pub fn m(&self) -> usize {
        self.out_words.len()
    }

    pub fn n(&self) -> usize {
        self.in_words.len()
    }

    pub fn word(&self, slot: Slot) -> OrientWord {
        match slot.side {
            Side::Out => self.out_words[slot.pos as usize],
            Side::In => self.in_words[slot.pos as usize],
        }
    }

    pub fn degree(&self) -> i64 {
        match self.family {
            Family::AssInf { .. } | Family::LieInf { .. } => 2 - self.n() as i64,
            Family::HoLB { c, d, .. } => 1 + c * (1 - self.m() as i64) + d * (1 - self.n() as i64),
            Family::Ass { .. } | Family::Lie { .. } | Family::IB | Family::LieBDiop => 0,
        }
    }

    /// Per-colour counts: for every extra colour there must be at least one
    /// leg whose absolute direction is `out` and one with `in`.
    fn has_all_colour_flows(&self) -> bool {
        let k = self.family.k();
        for t in 0..k {
            let mut has_out = false;
            let mut has_in = false;
            for w in &self.out_words {
                // output leg: absolute direction at colour t+1 follows the
                // basic `out` when aligned
                if w.is_aligned(t) {
                    has_out = true;
                } else {
                    has_in = true;
                }
            }
            for w in &self.in_words {
                if w.is_aligned(t) {
                    has_in = true;
                } else {
                    has_out = true;
                }
            }
            if !has_out || !has_in {
                return false;
            }
        }
        true
    }

    fn words_sorted(ws: &[OrientWord]) -> bool {
        ws.windows(2).all(|w| w[0] <= w[1])
    }

    /// True for special corollas of the associative families: the planar
    /// order of the inputs agrees with the lexicographic order of their words.
    pub fn is_special(&self) -> bool {
        Self::words_sorted(&self.in_words)
    }

    /// Whether the corolla is an allowed generator of its family.
    pub fn is_valid(&self) -> bool {
        let k = self.family.k();
        if self
            .out_words
            .iter()
            .chain(self.in_words.iter())
            .any(|w| w.len() != k)
        {
            return false;
        }
        if !self.has_all_colour_flows() {
            return false;
        }
        match self.family {
            Family::AssInf { .. } => self.m() == 1 && self.n() >= 2 && self.is_special(),
            Family::LieInf { .. } => {
                self.m() == 1 && self.n() >= 2 && Self::words_sorted(&self.in_words)
            }
            Family::Ass { .. } => self.m() == 1 && self.n() == 2 && self.is_special(),
            Family::Lie { .. } => {
                self.m() == 1 && self.n() == 2 && Self::words_sorted(&self.in_words)
            }
            Family::HoLB { .. } => {
                self.m() >= 1
                    && self.n() >= 1
                    && self.m() + self.n() >= 3
                    && Self::words_sorted(&self.out_words)
                    && Self::words_sorted(&self.in_words)
            }
            Family::IB => self.m() + self.n() == 3 && self.m() >= 1 && self.n() >= 1,
            Family::LieBDiop => self.m() + self.n() == 3 && self.m() >= 1 && self.n() >= 1,
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = vec![self.family.tag_byte(), self.family.k()];
        if let Family::HoLB { c, d, .. } = self.family {
            out.extend((c as i32).to_be_bytes());
            out.extend((d as i32).to_be_bytes());
        }
        out.push(self.m() as u8);
        for w in &self.out_words {
            out.extend(w.bits().to_be_bytes());
        }
        out.push(self.n() as u8);
        for w in &self.in_words {
            out.extend(w.bits().to_be_bytes());
        }
        out
    }
}

/// All generators with `m` outputs and `n` inputs as single-vertex decorated
/// graphs with canonically placed external legs, one representative per
/// symmetry orbit, in deterministic order.
pub fn generator_basis(family: Family, m: usize, n: usize) -> Result<Vec<DecGraph>> {
    if matches!(family, Family::AssInf { .. } | Family::LieInf { .. })
        && (m != 1 || n < 2)
    {
        return Ok(vec![]);
    }
    let k = family.k();
    let words: Vec<OrientWord> = OrientWord::all(k).collect();
    let mut out = Vec::new();
    // slot words are nondecreasing in every family: blocks are canonically
    // sorted for the symmetric families and the special condition forces the
    // same order on planar inputs
    let out_choices: Vec<Vec<OrientWord>> = word_sequences(&words, m);
    let in_choices: Vec<Vec<OrientWord>> = word_sequences(&words, n);
    for ow in &out_choices {
        for iw in &in_choices {
            let c = Corolla::new(family, ow.clone(), iw.clone());
            if !c.is_valid() {
                continue;
            }
            for labelling in leg_labellings(&c) {
                out.push(single_vertex_graph(&c, &labelling));
            }
        }
    }
    // deterministic order by encoding
    out.sort_by_key(|g| g.encode());
    Ok(out)
}

/// Nondecreasing word sequences of the given length (one per multiset).
fn word_sequences(words: &[OrientWord], len: usize) -> Vec<Vec<OrientWord>> {
    if len == 0 {
        return vec![vec![]];
    }
    words
        .iter()
        .copied()
        .combinations_with_replacement(len)
        .collect()
}

/// All distinct valid corollas (word data only) for the given arity.
pub fn distinct_corollas(family: Family, m: usize, n: usize) -> Vec<Corolla> {
    let k = family.k();
    let words: Vec<OrientWord> = OrientWord::all(k).collect();
    let mut out = Vec::new();
    for ow in word_sequences(&words, m) {
        for iw in word_sequences(&words, n) {
            let c = Corolla::new(family, ow.clone(), iw);
            if c.is_valid() {
                out.push(c);
            }
        }
    }
    out
}

/// Label assignments making the single-vertex graph a basis element: planar
/// sides take every assignment compatible with the (already fixed) slot
/// words, block-symmetric sides take increasing labels within each block.
fn leg_labellings(c: &Corolla) -> Vec<Vec<(Slot, ExtLeg)>> {
    let out_assignments = side_labellings(&c.out_words, c.family.out_symmetry().is_none(), true);
    let in_assignments = side_labellings(&c.in_words, c.family.in_symmetry().is_none(), false);
    let mut all = Vec::new();
    for oa in &out_assignments {
        for ia in &in_assignments {
            let mut v: Vec<(Slot, ExtLeg)> = Vec::new();
            v.extend(oa.iter().cloned());
            v.extend(ia.iter().cloned());
            all.push(v);
        }
    }
    all
}

fn side_labellings(words: &[OrientWord], planar: bool, out: bool) -> Vec<Vec<(Slot, ExtLeg)>> {
    let side = if out { Side::Out } else { Side::In };
    let n = words.len();
    if n == 0 {
        return vec![vec![]];
    }
    if !planar {
        // one canonical labelling: increasing labels along the slots
        return vec![(0..n)
            .map(|i| {
                (
                    Slot {
                        side,
                        pos: i as u8,
                    },
                    ExtLeg {
                        out,
                        idx: i as u8,
                    },
                )
            })
            .collect()];
    }
    // planar: labels within each run of equal words permute freely
    let mut runs: Vec<(usize, usize)> = Vec::new(); // [start, end)
    let mut start = 0;
    for i in 1..=n {
        if i == n || words[i] != words[start] {
            runs.push((start, i));
            start = i;
        }
    }
    let mut assignments: Vec<Vec<(Slot, ExtLeg)>> = vec![vec![]];
    for (s, e) in runs {
        let labels: Vec<usize> = (s..e).collect();
        let perms: Vec<Vec<usize>> = labels.iter().copied().permutations(e - s).collect();
        let mut next = Vec::new();
        for base in &assignments {
            for p in &perms {
                let mut a = base.clone();
                for (off, lab) in p.iter().enumerate() {
                    a.push((
                        Slot {
                            side,
                            pos: (s + off) as u8,
                        },
                        ExtLeg {
                            out,
                            idx: *lab as u8,
                        },
                    ));
                }
                next.push(a);
            }
        }
        assignments = next;
    }
    assignments
}

pub fn single_vertex_graph(c: &Corolla, labelling: &[(Slot, ExtLeg)]) -> DecGraph {
    let mut legs: Vec<DecLeg> = labelling
        .iter()
        .map(|(slot, label)| DecLeg {
            vertex: 0,
            slot: *slot,
            label: *label,
        })
        .collect();
    legs.sort_by_key(|l| l.label);
    DecGraph {
        k: c.family.k(),
        vertices: vec![c.clone()],
        edges: vec![],
        legs,
    }
}

/// Convenience: the canonical single-vertex graph with increasing labels.
pub fn corolla_graph(c: &Corolla) -> Result<DecGraph> {
    if !c.is_valid() {
        return Err(PropError::BadCorolla(format!("{c:?}")));
    }
    let mut labelling = Vec::new();
    for i in 0..c.m() {
        labelling.push((
            Slot {
                side: Side::Out,
                pos: i as u8,
            },
            ExtLeg {
                out: true,
                idx: i as u8,
            },
        ));
    }
    for i in 0..c.n() {
        labelling.push((
            Slot {
                side: Side::In,
                pos: i as u8,
            },
            ExtLeg {
                out: false,
                idx: i as u8,
            },
        ));
    }
    Ok(single_vertex_graph(c, &labelling))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> OrientWord {
        OrientWord::parse_pm(s).unwrap()
    }

    #[test]
    fn ass2_binary_generator_count() {
        // the display of the paper lists 2 + 2 + 1 + 1 generators
        let gens = generator_basis(Family::Ass { k: 1 }, 1, 2).unwrap();
        assert_eq!(gens.len(), 6);
    }

    #[test]
    fn lie2_binary_generator_count() {
        let gens = generator_basis(Family::Lie { k: 1 }, 1, 2).unwrap();
        assert_eq!(gens.len(), 4);
    }

    #[test]
    fn ass0_generators_are_planar_orderings() {
        let gens = generator_basis(Family::Ass { k: 0 }, 1, 2).unwrap();
        assert_eq!(gens.len(), 2);
        let gens3 = generator_basis(Family::AssInf { k: 0 }, 1, 3).unwrap();
        assert_eq!(gens3.len(), 6);
    }

    #[test]
    fn holb_degree_formula() {
        let c = Corolla::new(
            Family::HoLB { c: 1, d: 1, k: 0 },
            vec![w(""), w("")],
            vec![w("")],
        );
        assert_eq!(c.degree(), 0); // 1 + 1*(1-2) + 1*(1-1)
        assert!(c.is_valid());
        let c2 = Corolla::new(
            Family::HoLB { c: 1, d: 1, k: 0 },
            vec![w(""), w("")],
            vec![w(""), w("")],
        );
        assert_eq!(c2.degree(), -1);
    }

    #[test]
    fn curvature_corollas_rejected() {
        // all legs blue-out: rejected
        let c = Corolla::new(Family::AssInf { k: 1 }, vec![w("+")], vec![w("-"), w("-")]);
        assert!(!c.is_valid());
        let good = Corolla::new(Family::AssInf { k: 1 }, vec![w("+")], vec![w("+"), w("-")]);
        assert!(good.is_valid());
    }

    #[test]
    fn speciality() {
        let bad = Corolla::new(Family::AssInf { k: 1 }, vec![w("+")], vec![w("-"), w("+")]);
        assert!(!bad.is_special());
        let good = Corolla::new(Family::AssInf { k: 1 }, vec![w("+")], vec![w("+"), w("-")]);
        assert!(good.is_special());
        // k = 2 instance from the spec
        let c = Corolla::new(
            Family::AssInf { k: 2 },
            vec![w("++")],
            vec![w("++"), w("+-"), w("-+")],
        );
        assert!(c.is_special());
    }
}
