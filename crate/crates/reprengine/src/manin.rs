//! The Manin-triple correspondence: a Lie bialgebra structure on the plus
//! brane of a symplectic Lagrangian space determines a reduced representation
//! of the 2-oriented Lie operad, and conversely the relation residuals vanish
//! exactly when the input is a Lie bialgebra.

use crate::brane::build_braned_space;
use crate::tensor::{Representation, Tensor};
use crate::{ReprError, Result};
use linalg::Q;
use num::Zero;
use propcalc::dec::{Side, Slot};
use propcalc::family::{distinct_corollas, Family};
use propcalc::forget::generator_image;
use std::collections::BTreeMap;

/// Structure constants on a basis of the plus brane:
/// `bracket[i][j][c]` = coefficient of `e_c` in `[e_i, e_j]`,
/// `cobracket[a][j][k]` = coefficient of `e_j (x) e_k` in `delta(e_a)`.
#[derive(Debug, Clone)]
pub struct BialgebraData {
    pub dim: usize,
    pub bracket: Vec<Vec<Vec<Q>>>,
    pub cobracket: Vec<Vec<Vec<Q>>>,
}

impl BialgebraData {
    pub fn zero(dim: usize) -> Self {
        let z = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        BialgebraData {
            dim,
            bracket: z.clone(),
            cobracket: z,
        }
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, c: usize, v: Q) {
        self.bracket[i][j][c] = v.clone();
        self.bracket[j][i][c] = -v;
    }

    pub fn set_cobracket(&mut self, a: usize, j: usize, k: usize, v: Q) {
        self.cobracket[a][j][k] = v.clone();
        self.cobracket[a][k][j] = -v;
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for c in 0..n {
                    if self.bracket[i][j][c] != -self.bracket[j][i][c].clone() {
                        return Err(ReprError::NotSkew(format!("bracket at ({i},{j},{c})")));
                    }
                    if self.cobracket[c][i][j] != -self.cobracket[c][j][i].clone() {
                        return Err(ReprError::NotSkew(format!("cobracket at ({c},{i},{j})")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Direct verification of the Lie bialgebra axioms: Jacobi, co-Jacobi and the
/// cocycle compatibility, written out in structure constants. Independent of
/// the decorated-graph machinery.
pub fn lie_bialgebra_oracle(data: &BialgebraData) -> Result<bool> {
    data.validate()?;
    let n = data.dim;
    let b = &data.bracket;
    let co = &data.cobracket;
    // Jacobi
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for c in 0..n {
                    let mut s = Q::zero();
                    for x in 0..n {
                        s = s + b[i][j][x].clone() * b[x][l][c].clone()
                            + b[j][l][x].clone() * b[x][i][c].clone()
                            + b[l][i][x].clone() * b[x][j][c].clone();
                    }
                    if !s.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    // co-Jacobi: the cyclic sum of (delta (x) id) delta over rotations of the
    // three output slots
    for a in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let t = |p: usize, q: usize, r: usize| -> Q {
                        let mut s = Q::zero();
                        for x in 0..n {
                            s = s + co[a][x][r].clone() * co[x][p][q].clone();
                        }
                        s
                    };
                    let s = t(j, k, l) + t(k, l, j) + t(l, j, k);
                    if !s.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    // cocycle: delta[x, y] = x . delta(y) - y . delta(x) with the adjoint
    // action on both tensor factors
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut lhs = Q::zero();
                    for c in 0..n {
                        lhs = lhs + b[i][j][c].clone() * co[c][k][l].clone();
                    }
                    let mut rhs = Q::zero();
                    for u in 0..n {
                        rhs = rhs
                            + co[j][u][l].clone() * b[i][u][k].clone()
                            + co[j][k][u].clone() * b[i][u][l].clone()
                            - co[i][u][l].clone() * b[j][u][k].clone()
                            - co[i][k][u].clone() * b[j][u][l].clone();
                    }
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Direct verification of the infinitesimal-bialgebra axioms for an
/// associative product and coproduct on a basis: associativity,
/// coassociativity and the derivation compatibility of the coproduct.
pub fn infinitesimal_bialgebra_oracle(
    dim: usize,
    product: &[Vec<Vec<Q>>],
    coproduct: &[Vec<Vec<Q>>],
) -> bool {
    let n = dim;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for c in 0..n {
                    let mut s = Q::zero();
                    for x in 0..n {
                        s = s + product[i][j][x].clone() * product[x][k][c].clone()
                            - product[j][k][x].clone() * product[i][x][c].clone();
                    }
                    if !s.is_zero() {
                        return false;
                    }
                    let mut s = Q::zero();
                    for x in 0..n {
                        s = s + coproduct[i][x][c].clone() * coproduct[x][j][k].clone()
                            - coproduct[i][j][x].clone() * coproduct[x][k][c].clone();
                    }
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    // Delta(ab) = a b(1) (x) b(2) + a(1) (x) a(2) b
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut lhs = Q::zero();
                    for c in 0..n {
                        lhs = lhs + product[i][j][c].clone() * coproduct[c][k][l].clone();
                    }
                    let mut rhs = Q::zero();
                    for u in 0..n {
                        rhs = rhs
                            + product[i][u][k].clone() * coproduct[j][u][l].clone()
                            + product[u][j][l].clone() * coproduct[i][k][u].clone();
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Builds the reduced symplectic Lagrangian representation of the 2-oriented
/// Lie operad determined by a bracket and cobracket on the plus brane. The
/// generators forgetting to the same 1-oriented corolla receive the same
/// tensor through the pairing identifying the dual of the minus brane with
/// the plus brane.
pub fn manin_from_bialgebra(data: &BialgebraData) -> Result<Representation> {
    data.validate()?;
    let n = data.dim;
    let dims: BTreeMap<u32, usize> = [(0u32, n), (1u32, n)].into_iter().collect();
    let space = build_braned_space(1, dims, true)?;
    let mut rep = Representation::new(space, true);
    for c in distinct_corollas(Family::Lie { k: 1 }, 1, 2) {
        let (product, slots) = generator_image(&c)?;
        // slots[p] = image slot of connection point p, where the points in
        // order are (output, first input, second input); tensor axes of the
        // generator are in the same order
        let mut t = Tensor::zero(vec![n, n, n]);
        // invert: for each image slot find which generator axis sits there
        let axis_of = |s: Slot| -> usize {
            slots
                .iter()
                .position(|x| *x == s)
                .expect("all three slots are used")
        };
        if product {
            let (a_in0, a_in1, a_out) = (
                axis_of(Slot { side: Side::In, pos: 0 }),
                axis_of(Slot { side: Side::In, pos: 1 }),
                axis_of(Slot { side: Side::Out, pos: 0 }),
            );
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let v = data.bracket[i][j][k].clone();
                        if v.is_zero() {
                            continue;
                        }
                        let mut idx = vec![0u16; 3];
                        idx[a_in0] = i as u16;
                        idx[a_in1] = j as u16;
                        idx[a_out] = k as u16;
                        t.set(idx, v);
                    }
                }
            }
        } else {
            let (a_out0, a_out1, a_in) = (
                axis_of(Slot { side: Side::Out, pos: 0 }),
                axis_of(Slot { side: Side::Out, pos: 1 }),
                axis_of(Slot { side: Side::In, pos: 0 }),
            );
            for a in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let v = data.cobracket[a][j][k].clone();
                        if v.is_zero() {
                            continue;
                        }
                        let mut idx = vec![0u16; 3];
                        idx[a_in] = a as u16;
                        idx[a_out0] = j as u16;
                        idx[a_out1] = k as u16;
                        t.set(idx, v);
                    }
                }
            }
        }
        rep.assign(&c, t)?;
    }
    Ok(rep)
}
