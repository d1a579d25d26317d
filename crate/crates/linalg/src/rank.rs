//! Rank computations: fraction-free elimination with Markowitz pivoting over
//! the rationals, straightforward elimination over prime fields.

use crate::matrix::{ExactField, SparseMatrix};
use crate::{is_odd_prime, Int, LinalgError, Q, Result, CONSENSUS_PRIMES};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Exact rank over the matrix's field.
pub fn rank(m: &SparseMatrix) -> Result<usize> {
    match m.field {
        ExactField::Rationals => Ok(rank_rational(m)),
        ExactField::Prime(p) => rank_mod_p(m, p),
    }
}

fn strip_content(row: &mut BTreeMap<usize, Int>) {
    let mut g = Int::zero();
    for v in row.values() {
        g = num::integer::gcd(g, v.abs());
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.values_mut() {
        *v = &*v / &g;
    }
}

fn rank_rational(m: &SparseMatrix) -> usize {
    // Fraction-free elimination on integer rows: cross-multiplication update
    // with the row content stripped afterwards keeps everything integral.
    let mut rows: Vec<BTreeMap<usize, Int>> = m
        .integer_rows()
        .into_iter()
        .filter(|r| !r.is_empty())
        .collect();
    let mut rank = 0usize;
    while !rows.is_empty() {
        // Markowitz pivot: minimize (nnz(row)-1) * (nnz(col)-1)
        let mut col_count: BTreeMap<usize, usize> = BTreeMap::new();
        for row in &rows {
            for c in row.keys() {
                *col_count.entry(*c).or_insert(0) += 1;
            }
        }
        let mut best: Option<(usize, usize, usize)> = None; // (score, row, col)
        for (ri, row) in rows.iter().enumerate() {
            for c in row.keys() {
                let score = (row.len() - 1) * (col_count[c] - 1);
                if best.map_or(true, |(s, _, _)| score < s) {
                    best = Some((score, ri, *c));
                }
            }
        }
        let (_, pr, pc) = best.unwrap();
        let pivot_row = rows.swap_remove(pr);
        let pivot = pivot_row[&pc].clone();
        rank += 1;
        let mut next_rows = Vec::with_capacity(rows.len());
        for mut row in rows {
            if let Some(factor) = row.remove(&pc) {
                // row := pivot * row - factor * pivot_row
                let mut out: BTreeMap<usize, Int> = BTreeMap::new();
                for (c, v) in row {
                    out.insert(c, &pivot * v);
                }
                for (c, v) in &pivot_row {
                    if *c == pc {
                        continue;
                    }
                    let sub = &factor * v;
                    match out.entry(*c) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(-sub);
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            let nv = e.get() - sub;
                            if nv.is_zero() {
                                e.remove();
                            } else {
                                *e.get_mut() = nv;
                            }
                        }
                    }
                }
                strip_content(&mut out);
                if !out.is_empty() {
                    next_rows.push(out);
                }
            } else if !row.is_empty() {
                next_rows.push(row);
            }
        }
        rows = next_rows;
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    let mut result: u128 = 1;
    let mut base: u128 = (a % p) as u128;
    let mut e = p - 2;
    let p128 = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p128;
        }
        base = base * base % p128;
        e >>= 1;
    }
    result as u64
}

fn q_mod_p(v: &Q, p: u64) -> Result<u64> {
    let p_int = Int::from(p);
    let num = ((v.numer() % &p_int) + &p_int) % &p_int;
    let den = ((v.denom() % &p_int) + &p_int) % &p_int;
    let num: u64 = num.try_into().unwrap();
    let den: u64 = den.try_into().unwrap();
    if den == 0 {
        return Err(LinalgError::BadPrime(p));
    }
    Ok((num as u128 * mod_inverse(den, p) as u128 % p as u128) as u64)
}

fn rank_mod_p(m: &SparseMatrix, p: u64) -> Result<usize> {
    if !is_odd_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    let mut rows: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); m.rows];
    for (&(r, c), v) in m.entries() {
        let x = q_mod_p(v, p)?;
        if x != 0 {
            rows[r].insert(c, x);
        }
    }
    let mut rows: Vec<BTreeMap<usize, u64>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut rank = 0usize;
    while !rows.is_empty() {
        let mut col_count: BTreeMap<usize, usize> = BTreeMap::new();
        for row in &rows {
            for c in row.keys() {
                *col_count.entry(*c).or_insert(0) += 1;
            }
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for (ri, row) in rows.iter().enumerate() {
            for c in row.keys() {
                let score = (row.len() - 1) * (col_count[c] - 1);
                if best.map_or(true, |(s, _, _)| score < s) {
                    best = Some((score, ri, *c));
                }
            }
        }
        let (_, pr, pc) = best.unwrap();
        let pivot_row = rows.swap_remove(pr);
        let inv = mod_inverse(pivot_row[&pc], p);
        rank += 1;
        let p128 = p as u128;
        let mut next_rows = Vec::with_capacity(rows.len());
        for mut row in rows {
            if let Some(factor) = row.remove(&pc) {
                let scale = factor as u128 * inv as u128 % p128;
                for (c, v) in &pivot_row {
                    if *c == pc {
                        continue;
                    }
                    let sub = (scale * *v as u128 % p128) as u64;
                    let cur = row.get(c).copied().unwrap_or(0);
                    let nv = (cur + p - sub) % p;
                    if nv == 0 {
                        row.remove(c);
                    } else {
                        row.insert(*c, nv);
                    }
                }
            }
            if !row.is_empty() {
                next_rows.push(row);
            }
        }
        rows = next_rows;
    }
    Ok(rank)
}

/// Reruns the rank at several distinct primes; `agree` is false when the
/// primes disagree (a sign the composite structure hit an unlucky prime).
pub struct ConsensusRank {
    pub rank: usize,
    pub per_prime: Vec<(u64, usize)>,
    pub agree: bool,
}

pub fn consensus_rank(m: &SparseMatrix, primes: &[u64]) -> Result<ConsensusRank> {
    let primes = if primes.is_empty() {
        &CONSENSUS_PRIMES[..]
    } else {
        primes
    };
    let mut per_prime = Vec::new();
    for &p in primes {
        per_prime.push((p, rank_mod_p(m, p)?));
    }
    let agree = per_prime.windows(2).all(|w| w[0].1 == w[1].1);
    let rank = per_prime.iter().map(|&(_, r)| r).max().unwrap_or(0);
    Ok(ConsensusRank {
        rank,
        per_prime,
        agree,
    })
}

/// `dim ker(d_out) - rank(d_in)` with the complex property checked exactly.
/// Matrices act on column vectors: `d_in` lands in the middle space (its rows),
/// `d_out` leaves it (its columns).
pub fn cohomology_dim(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<usize> {
    if d_out.cols != d_in.rows {
        return Err(LinalgError::DimMismatch(format!(
            "middle dimension: d_out has {} columns, d_in has {} rows",
            d_out.cols, d_in.rows
        )));
    }
    let compose = d_out.multiply(d_in)?;
    if let Some((&(r, c), _)) = compose.entries().next() {
        return Err(LinalgError::ComposeNonzero(r, c));
    }
    let ker = d_out.cols - rank(d_out)?;
    let im = rank(d_in)?;
    debug_assert!(im <= ker);
    Ok(ker - im)
}

/// True iff `v` lies in the row space of `m` over `m.field`.
pub fn in_span(v: &[Q], m: &SparseMatrix) -> Result<bool> {
    if v.iter().all(|x| x.is_zero()) {
        return Ok(true);
    }
    let extended = m.with_extra_row(v)?;
    Ok(rank(&extended)? == rank(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q_int;

    fn qm(rows: usize, cols: usize, data: &[(usize, usize, i64)]) -> SparseMatrix {
        SparseMatrix::from_triplets(
            rows,
            cols,
            ExactField::Rationals,
            data.iter().map(|&(r, c, v)| (r, c, q_int(v))),
        )
        .unwrap()
    }

    #[test]
    fn empty_matrix_rank_zero() {
        let m = SparseMatrix::zero(0, 0, ExactField::Rationals);
        assert_eq!(rank(&m).unwrap(), 0);
    }

    #[test]
    fn identity_rank() {
        let m = SparseMatrix::identity(2, ExactField::Rationals);
        assert_eq!(rank(&m).unwrap(), 2);
    }

    #[test]
    fn proportional_rows_rank_one() {
        let m = qm(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4)]);
        assert_eq!(rank(&m).unwrap(), 1);
        assert_eq!(rank(&m.with_field(ExactField::Prime(32003))).unwrap(), 1);
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let m = qm(3, 4, &[(0, 0, 1), (0, 3, -2), (1, 1, 5), (2, 0, 7), (2, 2, 1)]);
        assert_eq!(rank(&m).unwrap(), rank(&m.transpose()).unwrap());
    }

    #[test]
    fn cohomology_of_zero_maps() {
        let d_in = SparseMatrix::zero(2, 1, ExactField::Rationals);
        let d_out = SparseMatrix::zero(1, 2, ExactField::Rationals);
        assert_eq!(cohomology_dim(&d_in, &d_out).unwrap(), 2);
    }

    #[test]
    fn exact_complex_has_no_cohomology() {
        let d_in = SparseMatrix::identity(2, ExactField::Rationals);
        let d_out = SparseMatrix::zero(1, 2, ExactField::Rationals);
        assert_eq!(cohomology_dim(&d_in, &d_out).unwrap(), 0);
    }

    #[test]
    fn compose_nonzero_detected() {
        let d_in = SparseMatrix::identity(2, ExactField::Rationals);
        let d_out = SparseMatrix::identity(2, ExactField::Rationals);
        assert!(matches!(
            cohomology_dim(&d_in, &d_out),
            Err(LinalgError::ComposeNonzero(_, _))
        ));
    }

    #[test]
    fn span_membership() {
        let m = qm(1, 2, &[(0, 1, 1)]);
        assert!(in_span(&[q_int(0), q_int(0)], &m).unwrap());
        assert!(!in_span(&[q_int(1), q_int(0)], &m).unwrap());
        assert!(in_span(&[q_int(0), q_int(7)], &m).unwrap());
    }

    #[test]
    fn consensus_agrees_on_integer_matrix() {
        let m = qm(2, 3, &[(0, 0, 3), (0, 2, 1), (1, 0, 6), (1, 2, 2)]);
        let c = consensus_rank(&m, &[]).unwrap();
        assert!(c.agree);
        assert_eq!(c.rank, rank(&m).unwrap());
    }

    #[test]
    fn dump_roundtrip() {
        let m = qm(2, 2, &[(0, 0, 1), (1, 1, -3)]);
        let m2 = SparseMatrix::parse(&m.dump()).unwrap();
        assert_eq!(m, m2);
    }

    #[test]
    fn rational_entries() {
        let half = Q::new(Int::from(1), Int::from(2));
        let m = SparseMatrix::from_triplets(
            2,
            2,
            ExactField::Rationals,
            vec![(0, 0, half.clone()), (1, 0, q_int(1)), (1, 1, q_int(1))],
        )
        .unwrap();
        assert_eq!(rank(&m).unwrap(), 2);
    }
}
