//! Sparse tensors and the evaluation of decorated graphs: internal edges are
//! contracted pairwise through the standard block pairing.

use crate::brane::BranedSpace;
use crate::{ReprError, Result};
use graphcore::Dir;
use linalg::Q;
use num::{Signed, Zero};
use propcalc::dec::{Combination, DecGraph, ExtLeg, Side, Slot};
use propcalc::family::Corolla;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    pub dims: Vec<usize>,
    pub entries: BTreeMap<Vec<u16>, Q>,
}

impl Tensor {
    pub fn zero(dims: Vec<usize>) -> Self {
        Tensor {
            dims,
            entries: BTreeMap::new(),
        }
    }

    pub fn scalar_one() -> Self {
        let mut t = Tensor::zero(vec![]);
        t.set(vec![], linalg::q_int(1));
        t
    }

    pub fn set(&mut self, idx: Vec<u16>, v: Q) {
        debug_assert_eq!(idx.len(), self.dims.len());
        if v.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, v);
        }
    }

    pub fn add_to(&mut self, idx: Vec<u16>, v: Q) {
        if v.is_zero() {
            return;
        }
        let sum = self.entries.get(&idx).cloned().unwrap_or_else(Q::zero) + v;
        self.set(idx, sum);
    }

    pub fn get(&self, idx: &[u16]) -> Q {
        self.entries.get(idx).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&mut self, s: &Q) {
        if s.is_zero() {
            self.entries.clear();
            return;
        }
        for v in self.entries.values_mut() {
            *v = v.clone() * s.clone();
        }
    }

    pub fn add(&mut self, other: &Tensor) -> Result<()> {
        if self.dims != other.dims {
            return Err(ReprError::ShapeMismatch(format!(
                "{:?} vs {:?}",
                self.dims, other.dims
            )));
        }
        for (idx, v) in &other.entries {
            self.add_to(idx.clone(), v.clone());
        }
        Ok(())
    }

    pub fn max_abs(&self) -> Q {
        self.entries
            .values()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }

    pub fn outer(&self, other: &Tensor) -> Tensor {
        let mut dims = self.dims.clone();
        dims.extend(other.dims.iter());
        let mut out = Tensor::zero(dims);
        for (ia, va) in &self.entries {
            for (ib, vb) in &other.entries {
                let mut idx = ia.clone();
                idx.extend(ib.iter());
                out.set(idx, va.clone() * vb.clone());
            }
        }
        out
    }

    /// Contracts axes `a < b` against each other with the identity pairing.
    pub fn trace_pair(&self, a: usize, b: usize) -> Result<Tensor> {
        if self.dims[a] != self.dims[b] {
            return Err(ReprError::ShapeMismatch(format!(
                "contracting axes of dims {} and {}",
                self.dims[a], self.dims[b]
            )));
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let mut dims = Vec::new();
        for (i, d) in self.dims.iter().enumerate() {
            if i != a && i != b {
                dims.push(*d);
            }
        }
        let mut out = Tensor::zero(dims);
        for (idx, v) in &self.entries {
            if idx[a] != idx[b] {
                continue;
            }
            let mut rest = Vec::with_capacity(idx.len() - 2);
            for (i, x) in idx.iter().enumerate() {
                if i != a && i != b {
                    rest.push(*x);
                }
            }
            out.add_to(rest, v.clone());
        }
        Ok(out)
    }

    pub fn permute(&self, perm: &[usize]) -> Tensor {
        // perm[new_axis] = old_axis
        let dims: Vec<usize> = perm.iter().map(|&o| self.dims[o]).collect();
        let mut out = Tensor::zero(dims);
        for (idx, v) in &self.entries {
            let new_idx: Vec<u16> = perm.iter().map(|&o| idx[o]).collect();
            out.set(new_idx, v.clone());
        }
        out
    }

    /// Multiset of entry values, for reshaping comparisons.
    pub fn entry_multiset(&self) -> Vec<Q> {
        let mut v: Vec<Q> = self.entries.values().cloned().collect();
        v.sort();
        v
    }
}

/// Assignment of tensors to generator corollas over a braned space. Tensor
/// axes follow the corolla slots: outputs first, then inputs.
#[derive(Debug, Clone)]
pub struct Representation {
    pub space: BranedSpace,
    pub reduced: bool,
    assignment: BTreeMap<Vec<u8>, Tensor>,
}

impl Representation {
    pub fn new(space: BranedSpace, reduced: bool) -> Self {
        Representation {
            space,
            reduced,
            assignment: BTreeMap::new(),
        }
    }

    /// Expected axis dimension of a corolla leg: the block selected by the
    /// relative word (aligned = plus); duals share the dimension.
    pub fn leg_dim(&self, c: &Corolla, slot: Slot) -> usize {
        let word = c.word(slot);
        self.space.block_dim(word.bits())
    }

    pub fn assign(&mut self, c: &Corolla, t: Tensor) -> Result<()> {
        let mut dims = Vec::new();
        for pos in 0..c.m() {
            dims.push(self.leg_dim(
                c,
                Slot {
                    side: Side::Out,
                    pos: pos as u8,
                },
            ));
        }
        for pos in 0..c.n() {
            dims.push(self.leg_dim(
                c,
                Slot {
                    side: Side::In,
                    pos: pos as u8,
                },
            ));
        }
        if dims != t.dims {
            return Err(ReprError::ShapeMismatch(format!(
                "corolla expects {:?}, tensor has {:?}",
                dims, t.dims
            )));
        }
        self.assignment.insert(c.encode(), t);
        Ok(())
    }

    pub fn tensor_for(&self, c: &Corolla) -> Option<&Tensor> {
        self.assignment.get(&c.encode())
    }

    pub fn zero_assignment(&mut self, gens: &[Corolla]) -> Result<()> {
        for c in gens {
            let mut dims = Vec::new();
            for pos in 0..c.m() {
                dims.push(self.leg_dim(c, Slot { side: Side::Out, pos: pos as u8 }));
            }
            for pos in 0..c.n() {
                dims.push(self.leg_dim(c, Slot { side: Side::In, pos: pos as u8 }));
            }
            self.assignment.insert(c.encode(), Tensor::zero(dims));
        }
        Ok(())
    }
}

/// Evaluates a decorated graph: the tensors of the vertices contracted
/// pairwise along the internal edges, axes ordered by the external leg
/// labels.
pub fn evaluate(g: &DecGraph, rep: &Representation) -> Result<Tensor> {
    // partial tensors and their open slots
    struct Part {
        tensor: Tensor,
        slots: Vec<(u8, Side, u8)>,
    }
    let mut parts: Vec<Option<Part>> = Vec::new();
    for (vi, c) in g.vertices.iter().enumerate() {
        let t = rep
            .tensor_for(c)
            .ok_or(ReprError::Undecorated(vi))?
            .clone();
        let mut slots = Vec::new();
        for pos in 0..c.m() {
            slots.push((vi as u8, Side::Out, pos as u8));
        }
        for pos in 0..c.n() {
            slots.push((vi as u8, Side::In, pos as u8));
        }
        if t.dims.len() != slots.len() {
            return Err(ReprError::ShapeMismatch(format!(
                "vertex {vi}: {} axes for {} slots",
                t.dims.len(),
                slots.len()
            )));
        }
        parts.push(Some(Part { tensor: t, slots }));
    }
    let mut owner: Vec<usize> = (0..g.vertices.len()).collect();
    for e in &g.edges {
        let pa = owner[e.from_vertex as usize];
        let pb = owner[e.to_vertex as usize];
        let slot_a = (e.from_vertex, Side::Out, e.from_pos);
        let slot_b = (e.to_vertex, Side::In, e.to_pos);
        if pa != pb {
            let a = parts[pa].take().unwrap();
            let b = parts[pb].take().unwrap();
            let ia = a.slots.iter().position(|s| *s == slot_a).unwrap();
            let ib = b.slots.iter().position(|s| *s == slot_b).unwrap();
            let merged = a.tensor.outer(&b.tensor);
            let contracted = merged.trace_pair(ia, a.slots.len() + ib)?;
            let mut slots = Vec::new();
            for (i, s) in a.slots.iter().enumerate() {
                if i != ia {
                    slots.push(*s);
                }
            }
            for (i, s) in b.slots.iter().enumerate() {
                if i != ib {
                    slots.push(*s);
                }
            }
            parts[pa] = Some(Part {
                tensor: contracted,
                slots,
            });
            for o in owner.iter_mut() {
                if *o == pb {
                    *o = pa;
                }
            }
        } else {
            let p = parts[pa].take().unwrap();
            let ia = p.slots.iter().position(|s| *s == slot_a).unwrap();
            let ib = p.slots.iter().position(|s| *s == slot_b).unwrap();
            let traced = p.tensor.trace_pair(ia, ib)?;
            let slots: Vec<_> = p
                .slots
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != ia && *i != ib)
                .map(|(_, s)| *s)
                .collect();
            parts[pa] = Some(Part {
                tensor: traced,
                slots,
            });
        }
    }
    // outer product of the remaining components in vertex order
    let mut acc: Option<Part> = None;
    let mut seen = std::collections::BTreeSet::new();
    for v in 0..g.vertices.len() {
        let p = owner[v];
        if !seen.insert(p) {
            continue;
        }
        let part = parts[p].take().unwrap();
        acc = Some(match acc {
            None => part,
            Some(a) => {
                let tensor = a.tensor.outer(&part.tensor);
                let mut slots = a.slots;
                slots.extend(part.slots);
                Part { tensor, slots }
            }
        });
    }
    let acc = acc.unwrap_or(Part {
        tensor: Tensor::scalar_one(),
        slots: vec![],
    });
    // axes to external leg order (legs sorted by label)
    let mut legs: Vec<_> = g.legs.clone();
    legs.sort_by_key(|l| l.label);
    let perm: Vec<usize> = legs
        .iter()
        .map(|l| {
            acc.slots
                .iter()
                .position(|s| *s == (l.vertex, l.slot.side, l.slot.pos))
                .expect("every open slot is an external leg")
        })
        .collect();
    Ok(acc.tensor.permute(&perm))
}

/// Reads the evaluated tensor of a graph as a linear map along colour `tau`:
/// which axes are inputs and which are outputs.
pub struct LegReading {
    pub inputs: Vec<ExtLeg>,
    pub outputs: Vec<ExtLeg>,
}

pub fn leg_reading(g: &DecGraph, tau: u8) -> Result<LegReading> {
    if tau == 0 || tau > g.k {
        return Err(ReprError::Graph(graphcore::GraphError::ColorOutOfRange(
            tau, g.k,
        )));
    }
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    let mut legs: Vec<_> = g.legs.clone();
    legs.sort_by_key(|l| l.label);
    for l in &legs {
        let word = g.vertices[l.vertex as usize].word(l.slot);
        let basic = match l.slot.side {
            Side::Out => Dir::Out,
            Side::In => Dir::In,
        };
        let dir = if word.is_aligned(tau - 1) {
            basic
        } else {
            basic.opp()
        };
        match dir {
            Dir::Out => outputs.push(l.label),
            Dir::In => inputs.push(l.label),
        }
    }
    Ok(LegReading { inputs, outputs })
}

/// Evaluates a combination term by term.
pub fn evaluate_combination(c: &Combination, rep: &Representation) -> Result<Option<Tensor>> {
    let mut acc: Option<Tensor> = None;
    for (g, coeff) in c.terms() {
        let mut t = evaluate(g, rep)?;
        t.scale(coeff);
        match &mut acc {
            None => acc = Some(t),
            Some(a) => a.add(&t)?,
        }
    }
    Ok(acc)
}

#[derive(Debug)]
pub struct ResidualReport {
    /// max-entry residual of every relation
    pub residuals: Vec<Q>,
}

impl ResidualReport {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(|r| r.is_zero())
    }
}

/// Evaluates each relation of the family and reports the max-entry residual.
pub fn check_relations(rep: &Representation, relations: &[Combination]) -> Result<ResidualReport> {
    let mut residuals = Vec::new();
    for r in relations {
        let t = evaluate_combination(r, rep)?;
        residuals.push(t.map(|x| x.max_abs()).unwrap_or_else(Q::zero));
    }
    Ok(ResidualReport { residuals })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outer_and_trace() {
        let mut a = Tensor::zero(vec![2]);
        a.set(vec![0], linalg::q_int(3));
        a.set(vec![1], linalg::q_int(5));
        let b = a.clone();
        let o = a.outer(&b);
        assert_eq!(o.get(&[0, 1]), linalg::q_int(15));
        let t = o.trace_pair(0, 1).unwrap();
        assert_eq!(t.get(&[]), linalg::q_int(9 + 25));
    }

    #[test]
    fn permute_axes() {
        let mut a = Tensor::zero(vec![2, 3]);
        a.set(vec![1, 2], linalg::q_int(7));
        let p = a.permute(&[1, 0]);
        assert_eq!(p.dims, vec![3, 2]);
        assert_eq!(p.get(&[2, 1]), linalg::q_int(7));
    }
}
