//! Sparse matrices in coordinate form over an exact field.

use crate::{q_int, Int, LinalgError, Q, Result};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactField {
    Rationals,
    Prime(u64),
}

impl std::fmt::Display for ExactField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExactField::Rationals => write!(f, "Q"),
            ExactField::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Entries are stored as exact rationals regardless of the field tag; prime
/// field computations reduce on the fly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub field: ExactField,
    entries: BTreeMap<(usize, usize), Q>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize, field: ExactField) -> Self {
        SparseMatrix {
            rows,
            cols,
            field,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, field: ExactField) -> Self {
        let mut m = SparseMatrix::zero(n, n, field);
        for i in 0..n {
            m.add(i, i, Q::one()).unwrap();
        }
        m
    }

    /// Adds `value` to the entry, dropping it if the sum is zero.
    pub fn add(&mut self, r: usize, c: usize, value: Q) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(LinalgError::EntryOutOfRange(r, c, self.rows, self.cols));
        }
        if value.is_zero() {
            return Ok(());
        }
        match self.entries.entry((r, c)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + value;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        field: ExactField,
        triplets: impl IntoIterator<Item = (usize, usize, Q)>,
    ) -> Result<Self> {
        let mut m = SparseMatrix::zero(rows, cols, field);
        for (r, c, v) in triplets {
            m.add(r, c, v)?;
        }
        Ok(m)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Q)> {
        self.entries.iter()
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut m = SparseMatrix::zero(self.cols, self.rows, self.field);
        for (&(r, c), v) in &self.entries {
            m.entries.insert((c, r), v.clone());
        }
        m
    }

    pub fn with_field(&self, field: ExactField) -> SparseMatrix {
        let mut m = self.clone();
        m.field = field;
        m
    }

    /// Appends `v` as one extra row.
    pub fn with_extra_row(&self, v: &[Q]) -> Result<SparseMatrix> {
        if v.len() != self.cols {
            return Err(LinalgError::DimMismatch(format!(
                "vector length {} vs {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut m = self.clone();
        m.rows += 1;
        for (c, x) in v.iter().enumerate() {
            if !x.is_zero() {
                m.entries.insert((self.rows, c), x.clone());
            }
        }
        Ok(m)
    }

    /// Sparse product `self * other`.
    pub fn multiply(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(LinalgError::DimMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &Q)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = SparseMatrix::zero(self.rows, other.cols, self.field);
        for (&(r, c), v) in &self.entries {
            if let Some(row) = by_row.get(&c) {
                for &(c2, w) in row {
                    out.add(r, c2, v.clone() * w.clone())?;
                }
            }
        }
        Ok(out)
    }

    /// Coordinate text dump: header `rows cols field`, then `r c value` lines.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.rows, self.cols, self.field);
        for (&(r, c), v) in &self.entries {
            let _ = writeln!(s, "{} {} {}", r, c, v);
        }
        s
    }

    pub fn parse(text: &str) -> Result<SparseMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| LinalgError::Parse("empty dump".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(LinalgError::Parse(format!("bad header {header:?}")));
        }
        let rows: usize = parts[0]
            .parse()
            .map_err(|_| LinalgError::Parse("bad row count".into()))?;
        let cols: usize = parts[1]
            .parse()
            .map_err(|_| LinalgError::Parse("bad col count".into()))?;
        let field = match parts[2] {
            "Q" => ExactField::Rationals,
            f if f.starts_with('F') => ExactField::Prime(
                f[1..]
                    .parse()
                    .map_err(|_| LinalgError::Parse("bad prime".into()))?,
            ),
            f => return Err(LinalgError::Parse(format!("bad field tag {f:?}"))),
        };
        let mut m = SparseMatrix::zero(rows, cols, field);
        for line in lines {
            let p: Vec<&str> = line.split_whitespace().collect();
            if p.len() != 3 {
                return Err(LinalgError::Parse(format!("bad entry line {line:?}")));
            }
            let r: usize = p[0]
                .parse()
                .map_err(|_| LinalgError::Parse("bad row index".into()))?;
            let c: usize = p[1]
                .parse()
                .map_err(|_| LinalgError::Parse("bad col index".into()))?;
            let v: Q = p[2]
                .parse()
                .map_err(|_| LinalgError::Parse(format!("bad value {:?}", p[2])))?;
            m.add(r, c, v)?;
        }
        Ok(m)
    }

    /// Integer rows with cleared denominators, for fraction-free elimination.
    pub(crate) fn integer_rows(&self) -> Vec<BTreeMap<usize, Int>> {
        let mut rows: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].insert(c, v.clone());
        }
        rows.into_iter()
            .map(|row| {
                let mut lcm = Int::one();
                for v in row.values() {
                    lcm = num::integer::lcm(lcm, v.denom().abs());
                }
                row.into_iter()
                    .map(|(c, v)| {
                        let scaled = v * Q::from_integer(lcm.clone());
                        debug_assert!(scaled.is_integer());
                        (c, scaled.to_integer())
                    })
                    .collect()
            })
            .collect()
    }
}
