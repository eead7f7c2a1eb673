//! Integer lattices in `Z^t`: orthogonal complements, volumes, reduced bases,
//! exact box counts, slabs and K-good/K-bad classification.

pub mod echelon;
mod enumerate;
mod goodness;
pub mod lll;

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Int;

pub use echelon::{canonical_sign, integer_kernel, row_echelon};
pub use enumerate::{enumerate_box, points_in_box, short_vectors, successive_minima, DEFAULT_NODE_CAP};
pub use goodness::{
    classify_perfect_mediocre, good_radius_constant, is_k_good, kbad_census, kbad_inverse_norm_sum,
    slab_contains, slab_count_in_box, Census, GoodnessVerdict, InverseNormSum, PerfectVerdict,
};

/// An integer vector with the norms used throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<T>(pub Vec<T>);

impl<T: Int> Vector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Vector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&x| T::from_i64(x).expect("fits")).collect())
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// L-infinity norm.
    pub fn linf(&self) -> T {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_else(T::zero)
    }

    /// Squared Euclidean norm.
    pub fn norm2(&self) -> T {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm2().to_f64().unwrap_or(f64::INFINITY).sqrt()
    }

    pub fn dot(&self, other: &Self) -> T {
        dot(&self.0, &other.0)
    }

    /// Gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> T {
        self.0.iter().fold(T::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn require_primitive(&self) -> Result<()> {
        let g = self.content();
        if g.is_one() {
            Ok(())
        } else {
            Err(Error::NotPrimitive { gcd: g.to_string() })
        }
    }
}

impl<T: fmt::Display> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn dot<T: Int>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Lattice spanned by linearly independent integer vectors of `Z^t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice<T> {
    t: usize,
    basis: Vec<Vec<T>>,
}

impl<T: Int> Lattice<T> {
    /// Checks dimensions and independence (positive Gram determinant).
    pub fn new(t: usize, basis: Vec<Vec<T>>) -> Result<Self> {
        for b in &basis {
            if b.len() != t {
                return Err(Error::DimensionMismatch { expected: t, found: b.len() });
            }
        }
        if basis.len() > t {
            return Err(Error::DependentBasis);
        }
        let l = Lattice { t, basis };
        if l.gram_det() <= T::zero() {
            return Err(Error::DependentBasis);
        }
        Ok(l)
    }

    /// `Z^t` with its standard basis.
    pub fn standard(t: usize) -> Self {
        let basis = (0..t)
            .map(|i| (0..t).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
        Lattice { t, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.t
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn gram(&self) -> Matrix<T> {
        let s = self.rank();
        Matrix::from_fn(s, |i, j| dot(&self.basis[i], &self.basis[j]))
    }

    /// Gram determinant, i.e. the squared volume. The empty lattice has 1.
    pub fn gram_det(&self) -> T {
        if self.basis.is_empty() {
            T::one()
        } else {
            self.gram().det()
        }
    }

    pub fn contains(&self, v: &[T]) -> bool {
        if v.len() != self.t {
            return false;
        }
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        let (_, p) = row_echelon(&rows);
        if p.len() > self.rank() {
            return false;
        }
        let (e, _) = row_echelon(&self.basis);
        let (e2, _) = row_echelon(&rows);
        e == e2
    }
}

/// Lattice volume: the Gram determinant is authoritative, the square root is
/// present only when it is an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Volume<T> {
    pub gram_det: T,
    pub sqrt: Option<T>,
}

impl<T: Int> Volume<T> {
    pub fn to_f64(&self) -> f64 {
        self.gram_det.to_f64().unwrap_or(f64::INFINITY).sqrt()
    }
}

impl<T: fmt::Display> fmt::Display for Volume<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.sqrt {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "sqrt({})", self.gram_det),
        }
    }
}

pub fn lattice_det<T: Int>(l: &Lattice<T>) -> Volume<T> {
    let g = l.gram_det();
    let r = g.sqrt();
    let sqrt = if r.clone() * r.clone() == g { Some(r) } else { None };
    Volume { gram_det: g, sqrt }
}

/// All integer vectors orthogonal to every input vector.
pub fn orthogonal_lattice<T: Int>(vectors: &[Vector<T>]) -> Result<Lattice<T>> {
    let t = match vectors.first() {
        Some(v) => v.dim(),
        None => return Err(Error::EmptyInput("vectors")),
    };
    for v in vectors {
        if v.dim() != t {
            return Err(Error::DimensionMismatch { expected: t, found: v.dim() });
        }
    }
    if vectors.iter().all(Vector::is_zero) {
        return Err(Error::ZeroArgument);
    }
    let rows: Vec<Vec<T>> = vectors.iter().map(|v| v.0.clone()).collect();
    let mut basis = integer_kernel(&rows, t);
    if basis.len() > 1 {
        lll::lll_reduce(&mut basis, 99, 100)?;
    }
    Ok(Lattice { t, basis })
}

/// Whether the complement of `lambda` has squared volume `|lambda|^2`.
pub fn dual_volume_check<T: Int>(lambda: &Vector<T>) -> Result<bool> {
    if lambda.is_zero() {
        return Err(Error::ZeroArgument);
    }
    lambda.require_primitive()?;
    let l = orthogonal_lattice(std::slice::from_ref(lambda))?;
    Ok(l.gram_det() == lambda.norm2())
}

/// A reduced basis sorted by length.
///
/// Rank 2 uses Gauss reduction. Ranks 3 to 6 start from LLL and then pick,
/// greedily, the shortest vector that still extends the chosen ones to a basis
/// of the lattice; through rank 4 the lengths are the successive minima.
/// Higher ranks return the LLL basis.
pub fn reduced_basis<T: Int>(l: &Lattice<T>) -> Vec<Vector<T>> {
    let mut b = l.basis.clone();
    match b.len() {
        0 => {}
        1 => b[0] = canonical_sign(b[0].clone()),
        2 => {
            let (x, y) = enumerate::gauss_reduce(b[0].clone(), b[1].clone());
            b = vec![canonical_sign(x), canonical_sign(y)];
        }
        3..=6 => b = enumerate::minkowski_greedy(&b),
        _ => {
            lll::lll_reduce(&mut b, 99, 100).expect("lattice basis is independent");
            b = b.into_iter().map(canonical_sign).collect();
        }
    }
    let mut out: Vec<Vector<T>> = b.into_iter().map(Vector).collect();
    out.sort_by(|x, y| x.norm2().cmp(&y.norm2()).then_with(|| y.0.cmp(&x.0)));
    out
}

#[cfg(test)]
mod tests;
