//! Explicit multiplicatively dependent tuples.

use num_bigint::BigInt;

use super::{MatrixTuple, RelationVector};
use crate::error::{Error, Result};
use crate::linalg::{block_diag, companion, Matrix};
use crate::numtheory::cyclotomic;

fn alternating(s: usize) -> RelationVector {
    RelationVector((0..s).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect())
}

fn check_inputs(bs: &[Matrix<BigInt>]) -> Result<()> {
    let n = bs.first().ok_or(Error::EmptyInput("construction inputs"))?.dim();
    for b in bs {
        if b.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: b.dim() });
        }
        if b.det() == BigInt::from(0) {
            return Err(Error::SingularMatrix);
        }
    }
    Ok(())
}

/// Even `s`: `A_{2i-1} = B_{2i-1} B_{2i}` and `A_{2i} = B_{2i+1} B_{2i}` with
/// `B_{s+1} = B_1`, so that `A_1 A_2^-1 A_3 ... A_s^-1 = I`.
///
/// Returns the tuple with the relation `(1, -1, ..., 1, -1)`.
pub fn construct_even(bs: &[Matrix<BigInt>]) -> Result<(MatrixTuple, RelationVector)> {
    check_inputs(bs)?;
    let s = bs.len();
    if s % 2 != 0 {
        return Err(Error::ParityMismatch { expected: "an even number of matrices", found: s });
    }
    let b = |j: usize| &bs[(j - 1) % s];
    let mut a = Vec::with_capacity(s);
    for i in 1..=s / 2 {
        a.push(b(2 * i - 1) * b(2 * i));
        a.push(b(2 * i + 1) * b(2 * i));
    }
    Ok((MatrixTuple::new(a)?, alternating(s)))
}

/// Odd `s = 2r + 1` from `B_1, ..., B_{2r}`: `A_{2i-1} = B_{2i-2} B_{2i-1}`,
/// `A_{2i} = B_{2i} B_{2i-1}` with `B_0 = I`, and `A_{2r+1} = B_{2r}`, so that
/// `A_1 A_2^-1 ... A_{2r}^-1 A_{2r+1} = I`.
pub fn construct_odd(bs: &[Matrix<BigInt>]) -> Result<(MatrixTuple, RelationVector)> {
    check_inputs(bs)?;
    let m = bs.len();
    if m % 2 != 0 {
        return Err(Error::ParityMismatch { expected: "an even number of matrices (s - 1 for odd s)", found: m });
    }
    let n = bs[0].dim();
    let id = Matrix::identity(n);
    let b = |j: usize| if j == 0 { &id } else { &bs[j - 1] };
    let mut a = Vec::with_capacity(m + 1);
    for i in 1..=m / 2 {
        a.push(b(2 * i - 2) * b(2 * i - 1));
        a.push(b(2 * i) * b(2 * i - 1));
    }
    a.push(b(m).clone());
    Ok((MatrixTuple::new(a)?, alternating(m + 1)))
}

/// Block-diagonal matrix of companion matrices of `Phi_{k_1}, ..., Phi_{k_h}`
/// together with `k = k_1 ... k_h`, for which `A^k = I` (checked).
pub fn construct_torsion_block(ks: &[u64]) -> Result<(Matrix<BigInt>, u64)> {
    if ks.is_empty() {
        return Err(Error::EmptyInput("cyclotomic indices"));
    }
    if ks.contains(&0) {
        return Err(Error::InvalidParameter("cyclotomic indices must be positive".into()));
    }
    let blocks: Vec<Matrix<BigInt>> = ks.iter().map(|&k| companion(&cyclotomic(k))).collect();
    let a = block_diag(&blocks)?;
    let k = ks
        .iter()
        .try_fold(1u64, |acc, &x| acc.checked_mul(x))
        .ok_or_else(|| Error::InvalidParameter("product of indices overflows".into()))?;
    assert!(a.pow(k).is_identity(), "companion blocks of cyclotomic polynomials have finite order");
    Ok((a, k))
}
