//! Elements of the graph complexes: rational combinations of canonical
//! classes of leg-free multi-oriented graphs.

use crate::{GcError, Result};
use graphcore::canon::canonicalize;
use graphcore::{DParity, MultiGraph};
use linalg::Q;
use num::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GcParams {
    pub d: i64,
    pub k: u8,
    pub l: i8,
}

impl GcParams {
    pub fn new(d: i64, k: u8, l: i8) -> Self {
        GcParams { d, k, l }
    }

    pub fn parity(&self) -> DParity {
        DParity::of(self.d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GCElement {
    pub params: GcParams,
    terms: BTreeMap<Vec<u8>, (MultiGraph, Q)>,
}

impl GCElement {
    pub fn zero(params: GcParams) -> Self {
        GCElement {
            params,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_graph(params: GcParams, g: &MultiGraph, coeff: Q) -> Result<Self> {
        let mut e = GCElement::zero(params);
        e.add_graph(g, coeff)?;
        Ok(e)
    }

    /// Canonicalizes and accumulates.
    pub fn add_graph(&mut self, g: &MultiGraph, coeff: Q) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        if g.k != self.params.k {
            return Err(GcError::ParamMismatch(format!(
                "graph has k = {}, element k = {}",
                g.k, self.params.k
            )));
        }
        debug_assert!(g.legs.is_empty());
        let c = canonicalize(g, self.params.parity())?;
        if c.sign == 0 {
            return Ok(());
        }
        let coeff = coeff * linalg::q_int(c.sign as i64);
        let key = c.graph.encode();
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert((c.graph, coeff));
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().1.clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.get_mut().1 = sum;
                }
            }
        }
        Ok(())
    }

    pub fn add(&mut self, other: &GCElement) {
        debug_assert_eq!(self.params, other.params);
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

    pub fn scaled(&self, s: &Q) -> GCElement {
        if s.is_zero() {
            return GCElement::zero(self.params);
        }
        GCElement {
            params: self.params,
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

    pub fn terms(&self) -> impl Iterator<Item = (&MultiGraph, &Q)> {
        self.terms.values().map(|(g, c)| (g, c))
    }

    pub fn coeff(&self, key: &[u8]) -> Q {
        self.terms
            .get(key)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }

    /// Homological degree; all terms must agree.
    pub fn degree(&self) -> Result<i64> {
        let mut deg = None;
        for (g, _) in self.terms() {
            let d = g.gc_degree(self.params.d);
            match deg {
                None => deg = Some(d),
                Some(x) if x != d => return Err(GcError::NotHomogeneous),
                _ => {}
            }
        }
        deg.ok_or(GcError::NotHomogeneous)
    }
}
