//! Exact square matrices over an arbitrary [`Ring`].
//!
//! Nothing here touches floating point. Determinants use fraction-free
//! (Bareiss) elimination and characteristic polynomials use the division-free
//! Berkowitz recurrence, so integer inputs never leave the integers.

mod poly;

pub use poly::{poly_divrem_monic, poly_mul, MonicPoly};

use std::fmt;
use std::ops::Mul;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Int, Ring};

/// Square `n x n` matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn new(n: usize, data: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput("matrix dimension must be >= 1"));
        }
        if data.len() != n * n {
            return Err(Error::NotSquare { len: data.len() });
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.len() });
            }
            data.extend(r);
        }
        Self::new(n, data)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(n > 0, "matrix dimension must be >= 1");
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| T::zero())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Ring>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let v = self.get(i, j);
                if i == j {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        let n = self.n;
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    data[idx] = data[idx].clone() + a.clone() * other.get(k, j).clone();
                }
            }
        }
        Ok(Self { n, data })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// `A^k` for `k >= 0` by binary exponentiation; `A^0 = I`.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = Self::identity(self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// `Tr(A^j)` from the exact power.
    pub fn trace_power(&self, j: u32) -> T {
        self.pow(u64::from(j)).trace()
    }

    /// Determinant by Bareiss fraction-free elimination with row pivoting.
    pub fn det(&self) -> T {
        let n = self.n;
        let mut m = self.data.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n.saturating_sub(1) {
            if m[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !m[i * n + k].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            m.swap(k * n + j, i * n + j);
                        }
                        negate = !negate;
                    }
                    None => return T::zero(),
                }
            }
            let pivot = m[k * n + k].clone();
            for i in k + 1..n {
                let lead = m[i * n + k].clone();
                for j in k + 1..n {
                    let v = (m[i * n + j].clone() * pivot.clone() - lead.clone() * m[k * n + j].clone())
                        / prev.clone();
                    m[i * n + j] = v;
                }
            }
            prev = pivot;
        }
        let d = m[n * n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Minor with row `r` and column `c` deleted. Requires `n >= 2`.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let n = self.n;
        let data = (0..n)
            .filter(|&i| i != r)
            .flat_map(|i| (0..n).filter(move |&j| j != c).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Self { n: n - 1, data }
    }

    /// Adjugate, so that `A adj(A) = det(A) I`. The 1x1 adjugate is `[1]`.
    pub fn adjugate(&self) -> Self {
        let n = self.n;
        if n == 1 {
            return Self::identity(1);
        }
        Self::from_fn(n, |i, j| {
            let c = self.minor(j, i).det();
            if (i + j) % 2 == 0 {
                c
            } else {
                -c
            }
        })
    }

    /// Characteristic polynomial `det(X I - A)` by the Berkowitz recurrence.
    pub fn charpoly(&self) -> MonicPoly<T> {
        let n = self.n;
        // p holds coefficients of the leading-principal charpoly, highest degree first.
        let mut p = vec![T::one(), -self.get(0, 0).clone()];
        for k in 1..n {
            let akk = self.get(k, k).clone();
            let mut q = vec![T::zero(); k + 2];
            q[0] = T::one();
            q[1] = -akk;
            let mut v: Vec<T> = (0..k).map(|i| self.get(i, k).clone()).collect();
            for j in 0..k {
                let rv = (0..k).fold(T::zero(), |acc, i| acc + self.get(k, i).clone() * v[i].clone());
                q[j + 2] = -rv;
                if j + 1 < k {
                    v = (0..k)
                        .map(|r| {
                            (0..k).fold(T::zero(), |acc, c| {
                                acc + self.get(r, c).clone() * v[c].clone()
                            })
                        })
                        .collect();
                }
            }
            let mut next = vec![T::zero(); k + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (m, pm) in p.iter().enumerate() {
                    if m <= i && i - m <= k + 1 {
                        *slot = slot.clone() + q[i - m].clone() * pm.clone();
                    }
                }
            }
            p = next;
        }
        p.reverse();
        p.pop();
        MonicPoly::new(p).expect("degree >= 1")
    }
}

impl<T: Int> Matrix<T> {
    /// Largest absolute entry; membership in the height box is `max_abs() <= H`.
    pub fn max_abs(&self) -> T {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(T::zero)
    }

    pub fn to_rational(&self) -> Matrix<Ratio<T>> {
        self.map(|x| Ratio::from_integer(x.clone()))
    }

    /// Exact inverse over the rationals.
    pub fn inverse_rational(&self) -> Result<Matrix<Ratio<T>>> {
        self.to_rational().inverse()
    }

    /// `A^k` for any integer `k`, over the rationals.
    pub fn pow_signed(&self, k: i64) -> Result<Matrix<Ratio<T>>> {
        let q = self.to_rational();
        if k >= 0 {
            Ok(q.pow(k as u64))
        } else {
            if self.det().is_zero() {
                return Err(Error::NegativePowerOfSingular);
            }
            Ok(q.inverse()?.pow(k.unsigned_abs()))
        }
    }
}

impl<T: Int> Matrix<Ratio<T>> {
    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let p = a[col * n + col].clone();
            for j in 0..n {
                a[col * n + j] = a[col * n + j].clone() / p.clone();
                inv[col * n + j] = inv[col * n + j].clone() / p.clone();
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for j in 0..n {
                    a[r * n + j] = a[r * n + j].clone() - f.clone() * a[col * n + j].clone();
                    inv[r * n + j] = inv[r * n + j].clone() - f.clone() * inv[col * n + j].clone();
                }
            }
        }
        Ok(Self { n, data: inv })
    }

    /// Back to integers when every entry has denominator 1.
    pub fn to_integer(&self) -> Option<Matrix<T>> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(Matrix { n: self.n, data: self.data.iter().map(|x| x.to_integer()).collect() })
        } else {
            None
        }
    }
}

impl<'a, T: Ring> Mul<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        self.try_mul(rhs).expect("dimension mismatch in matrix product")
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Exact product; fails on a dimension mismatch.
pub fn mat_mul<T: Ring>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    a.try_mul(b)
}

/// `A^k` for `k` in Z, as an exact rational matrix.
pub fn mat_pow<T: Int>(a: &Matrix<T>, k: i64) -> Result<Matrix<Ratio<T>>> {
    a.pow_signed(k)
}

/// True iff the power sums `Tr(A^j)`, `j = 1..n`, match those that Newton's
/// identities derive from the coefficients of `f`.
pub fn newton_check<T: Ring>(f: &MonicPoly<T>, a: &Matrix<T>) -> bool {
    let n = a.dim();
    if f.degree() != n {
        return false;
    }
    let expected = f.power_sums(n);
    let mut power = a.clone();
    for (j, p) in expected.iter().enumerate() {
        if j > 0 {
            power = &power * a;
        }
        if power.trace() != *p {
            return false;
        }
    }
    true
}

/// Companion matrix: ones on the subdiagonal, `-c_i` down the last column.
pub fn companion<T: Ring>(f: &MonicPoly<T>) -> Matrix<T> {
    let d = f.degree();
    let c = f.coeffs();
    Matrix::from_fn(d, |i, j| {
        if j == d - 1 {
            -c[i].clone()
        } else if i == j + 1 {
            T::one()
        } else {
            T::zero()
        }
    })
}

/// Block-diagonal assembly of square blocks.
pub fn block_diag<T: Ring>(blocks: &[Matrix<T>]) -> Result<Matrix<T>> {
    if blocks.is_empty() {
        return Err(Error::EmptyInput("block_diag needs at least one block"));
    }
    let n: usize = blocks.iter().map(Matrix::dim).sum();
    let mut m = Matrix::zeros(n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                m.set(off + i, off + j, b.get(i, j).clone());
            }
        }
        off += b.dim();
    }
    Ok(m)
}

#[cfg(test)]
mod tests;
