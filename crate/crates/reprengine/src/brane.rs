//! Finite-dimensional vector spaces with k branes: block decompositions over
//! the sign patterns, with an optional Lagrangian pairing.

use crate::{ReprError, Result};
use std::collections::BTreeMap;

/// Sign pattern over the extra colours: bit `t` set means the block sits in
/// the minus part of brane `t+1`.
pub type BlockPattern = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranedSpace {
    pub k: u8,
    /// dimension of every intersection block, indexed by sign pattern
    pub block_dims: BTreeMap<BlockPattern, usize>,
    pub lagrangian: bool,
}

impl BranedSpace {
    pub fn total_dim(&self) -> usize {
        self.block_dims.values().sum()
    }

    pub fn block_dim(&self, pattern: BlockPattern) -> usize {
        self.block_dims.get(&pattern).copied().unwrap_or(0)
    }

    /// Dimension of the plus (pattern bit clear) part of brane `tau` (1-based
    /// extra colour).
    pub fn brane_plus_dim(&self, tau: u8) -> usize {
        self.block_dims
            .iter()
            .filter(|(p, _)| *p & (1 << (tau - 1)) == 0)
            .map(|(_, d)| d)
            .sum()
    }

    pub fn brane_minus_dim(&self, tau: u8) -> usize {
        self.total_dim() - self.brane_plus_dim(tau)
    }
}

/// Builds and validates a braned space. With the Lagrangian flag the plus and
/// minus parts of every brane must balance, and the standard block pairing
/// identifies the dual of each minus block with the opposite-pattern plus
/// block.
pub fn build_braned_space(
    k: u8,
    block_dims: BTreeMap<BlockPattern, usize>,
    lagrangian: bool,
) -> Result<BranedSpace> {
    let space = BranedSpace {
        k,
        block_dims,
        lagrangian,
    };
    if lagrangian {
        for tau in 1..=k {
            let plus = space.brane_plus_dim(tau);
            let minus = space.brane_minus_dim(tau);
            if plus != minus {
                return Err(ReprError::LagrangianImbalance(tau, plus, minus));
            }
        }
    }
    Ok(space)
}
