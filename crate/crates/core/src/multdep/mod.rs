//! Multiplicative relations `A_1^{k_1} ... A_s^{k_s} = I` among nonsingular
//! integer matrices: determinant relation lattices, bounded dependence
//! search, kernel words, and explicit dependent families.

mod construct;
mod search;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{integer_kernel, Lattice};
use crate::linalg::Matrix;
use crate::numtheory::factorize;

pub use construct::{construct_even, construct_odd, construct_torsion_block};
pub use search::{
    default_bound, find_dependence, find_kernel_word, is_maximal_rank_dependent, tuple_rank, SearchOptions,
};

/// An ordered tuple of square integer matrices of a common size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixTuple {
    n: usize,
    matrices: Vec<Matrix<BigInt>>,
}

impl MatrixTuple {
    pub fn new(matrices: Vec<Matrix<BigInt>>) -> Result<Self> {
        let n = matrices.first().ok_or(Error::EmptyInput("matrix tuple"))?.dim();
        for m in &matrices {
            if m.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.dim() });
            }
        }
        Ok(MatrixTuple { n, matrices })
    }

    pub fn from_i64(matrices: &[Vec<Vec<i64>>]) -> Result<Self> {
        let ms = matrices
            .iter()
            .map(|rows| Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ms)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[Matrix<BigInt>] {
        &self.matrices
    }

    pub fn dets(&self) -> Vec<BigInt> {
        self.matrices.iter().map(Matrix::det).collect()
    }

    pub fn nonsingular(&self) -> Vec<bool> {
        self.dets().iter().map(|d| !d.is_zero()).collect()
    }

    pub(crate) fn require_nonsingular(&self) -> Result<()> {
        if self.nonsingular().iter().all(|&x| x) {
            Ok(())
        } else {
            Err(Error::SingularMatrix)
        }
    }

    /// The sub-tuple at `indices`, order preserved.
    pub fn select(&self, indices: &[usize]) -> MatrixTuple {
        MatrixTuple { n: self.n, matrices: indices.iter().map(|&i| self.matrices[i].clone()).collect() }
    }

    pub fn max_abs(&self) -> BigInt {
        self.matrices.iter().map(Matrix::max_abs).max().unwrap_or_default()
    }
}

/// An exponent vector `(k_1, ..., k_s)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationVector(pub Vec<i64>);

impl fmt::Display for RelationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All exponent vectors `k` with `prod det(A_i)^{k_i} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationLattice {
    /// Primes dividing some determinant, increasing.
    pub primes: Vec<BigUint>,
    pub lattice: Lattice<BigInt>,
}

impl RelationLattice {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        self.lattice.basis()
    }
}

/// The determinant relation lattice: the kernel of the prime-exponent matrix,
/// cut down to the even-sign sublattice when some basis vector has odd sign.
pub fn det_relation_lattice(tuple: &MatrixTuple) -> Result<RelationLattice> {
    tuple.require_nonsingular()?;
    let s = tuple.len();
    let facs = tuple.dets().iter().map(factorize).collect::<Result<Vec<_>>>()?;
    let mut primes: Vec<BigUint> = facs.iter().flat_map(|f| f.primes().cloned()).collect();
    primes.sort();
    primes.dedup();
    let rows: Vec<Vec<BigInt>> = primes
        .iter()
        .map(|p| facs.iter().map(|f| BigInt::from(f.exponent_of(p))).collect())
        .collect();
    let mut basis = integer_kernel(&rows, s);
    let negative: Vec<bool> = facs.iter().map(|f| f.sign() < 0).collect();
    let odd = |v: &Vec<BigInt>| {
        v.iter().zip(&negative).filter(|(_, &n)| n).fold(BigInt::zero(), |a, (x, _)| a + x).is_odd()
    };
    if let Some(first) = basis.iter().position(odd) {
        let v0 = basis[first].clone();
        for (i, v) in basis.iter_mut().enumerate() {
            if i != first && odd(v) {
                *v = v.iter().zip(&v0).map(|(a, b)| a - b).collect();
            }
        }
        basis[first] = v0.iter().map(|x| x * 2).collect();
    }
    let lattice = Lattice::new(s, basis)?;
    Ok(RelationLattice { primes, lattice })
}

/// Exact test of `A_1^{k_1} ... A_s^{k_s} = I`.
///
/// Negative powers use the adjugate: the product of integer factors must
/// equal `D I`, where `D` is the product of the inverted determinants.
pub fn check_relation(tuple: &MatrixTuple, k: &RelationVector) -> Result<bool> {
    if k.0.len() != tuple.len() {
        return Err(Error::DimensionMismatch { expected: tuple.len(), found: k.0.len() });
    }
    let n = tuple.dim();
    let mut prod = Matrix::<BigInt>::identity(n);
    let mut scale = BigInt::one();
    for (a, &e) in tuple.matrices().iter().zip(&k.0) {
        if e == 0 {
            continue;
        }
        if e > 0 {
            prod = &prod * &a.pow(e as u64);
        } else {
            let d = a.det();
            if d.is_zero() {
                return Err(Error::NegativePowerOfSingular);
            }
            let p = e.unsigned_abs();
            prod = &prod * &a.adjugate().pow(p);
            scale *= num_traits::pow::pow(d, p as usize);
        }
    }
    Ok(prod == Matrix::<BigInt>::identity(n).map(|x| x * &scale))
}

/// A word in the letters `A_i^{+1}` and `A_i^{-1}`; indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<(usize, i8)>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True if no letter is followed by its inverse.
    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !(w[0].0 == w[1].0 && w[0].1 == -w[1].1))
    }

    pub fn exponent_sums(&self, s: usize) -> Vec<i64> {
        let mut out = vec![0i64; s];
        for &(i, e) in &self.0 {
            out[i] += e as i64;
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(i, e)| (i, -e)).collect())
    }

    /// Free reduction.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<(usize, i8)> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match out.last() {
                Some(&(i, e)) if i == l.0 && e == -l.1 => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    /// Exact value of the word over the rationals.
    pub fn evaluate(&self, tuple: &MatrixTuple) -> Result<Matrix<crate::scalar::BigRational>> {
        let n = tuple.dim();
        let mut p = Matrix::<BigInt>::identity(n).to_rational();
        for &(i, e) in &self.0 {
            let a = tuple.matrices().get(i).ok_or_else(|| Error::InvalidParameter(format!("letter index {i} out of range")))?;
            let f = if e > 0 { a.to_rational() } else { a.inverse_rational()? };
            p = &p * &f;
        }
        Ok(p)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .0
            .iter()
            .map(|&(i, e)| if e > 0 { format!("A{}", i + 1) } else { format!("A{}^-1", i + 1) })
            .collect();
        write!(f, "{}", s.join(" "))
    }
}

#[cfg(test)]
mod tests;
