//! Exact sparse linear algebra over the rationals and over prime fields:
//! ranks, kernels and cohomology dimensions for the chain complexes assembled
//! elsewhere in the workspace. No floating point anywhere.

pub mod matrix;
pub mod rank;

pub use matrix::{ExactField, SparseMatrix};
pub use rank::{cohomology_dim, consensus_rank, in_span, rank};

use thiserror::Error;

pub type Int = num::BigInt;
pub type Q = num::BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(Int::from(n))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("entry at ({0}, {1}) outside a {2} x {3} matrix")]
    EntryOutOfRange(usize, usize, usize, usize),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("composition D_out * D_in is nonzero at ({0}, {1})")]
    ComposeNonzero(usize, usize),
    #[error("denominator of an entry vanishes modulo {0}")]
    BadPrime(u64),
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("malformed matrix dump: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

pub const DEFAULT_PRIME: u64 = 32003;
pub const CONSENSUS_PRIMES: [u64; 2] = [32003, 32009];

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
