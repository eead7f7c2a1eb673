use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Ring;

/// Monic polynomial `X^d + c_{d-1} X^{d-1} + ... + c_0`.
///
/// Coefficients are stored constant term first and the leading 1 is implicit.
/// Characteristic polynomials follow the convention `det(X I - A)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonicPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> MonicPoly<T> {
    /// Builds from `c_0, ..., c_{d-1}` (leading coefficient omitted).
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput("monic polynomial needs degree >= 1"));
        }
        Ok(Self { coeffs })
    }

    /// Builds from the full coefficient list `c_0, ..., c_{d-1}, 1`.
    pub fn from_full(full: Vec<T>) -> Result<Self> {
        match full.split_last() {
            Some((lead, rest)) if lead.is_one() && !rest.is_empty() => Self::new(rest.to_vec()),
            Some((lead, _)) if !lead.is_one() => Err(Error::InvalidParameter(
                "leading coefficient must be 1".into(),
            )),
            _ => Err(Error::EmptyInput("monic polynomial needs degree >= 1")),
        }
    }

    /// `X^2 - t X + d`.
    pub fn quadratic(trace: T, det: T) -> Self {
        Self { coeffs: vec![det, -trace] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `c_0, ..., c_{d-1}`.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `c_0, ..., c_{d-1}, 1`.
    pub fn full_coeffs(&self) -> Vec<T> {
        let mut v = self.coeffs.clone();
        v.push(T::one());
        v
    }

    /// Trace of any matrix with this characteristic polynomial: `-c_{d-1}`.
    pub fn trace(&self) -> T {
        -self.coeffs[self.degree() - 1].clone()
    }

    /// Determinant of any matrix with this characteristic polynomial: `(-1)^d c_0`.
    pub fn det(&self) -> T {
        let c0 = self.coeffs[0].clone();
        if self.degree() % 2 == 0 {
            c0
        } else {
            -c0
        }
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Power sums `p_1, ..., p_k` of the roots, from Newton's identities:
    /// `p_j = -(j c_{d-j} + sum_{i=1}^{j-1} c_{d-i} p_{j-i})`, with `c_m = 0` for `m < 0`.
    pub fn power_sums(&self, k: usize) -> Vec<T> {
        let d = self.degree();
        let coeff = |m: isize| -> T {
            if m < 0 {
                T::zero()
            } else {
                self.coeffs[m as usize].clone()
            }
        };
        let mut p: Vec<T> = Vec::with_capacity(k);
        for j in 1..=k {
            let mut acc = T::zero();
            let mut jj = T::zero();
            for _ in 0..j {
                jj = jj + T::one();
            }
            if j <= d {
                acc = acc + jj * coeff(d as isize - j as isize);
            }
            for i in 1..j {
                if i > d {
                    break;
                }
                acc = acc + coeff(d as isize - i as isize) * p[j - i - 1].clone();
            }
            p.push(-acc);
        }
        p
    }
}

impl<T: Ring + fmt::Display + PartialOrd> fmt::Display for MonicPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        write!(f, "X")?;
        if d > 1 {
            write!(f, "^{d}")?;
        }
        for k in (0..d).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = *c < T::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            write!(f, " {} ", if neg { '-' } else { '+' })?;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}")?;
                    }
                    write!(f, "X")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Product of dense polynomials stored constant term first.
pub fn poly_mul<T: Ring>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// Quotient and remainder of `a` by a monic `b` (both constant term first).
pub fn poly_divrem_monic<T: Ring>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let mut rem = a.to_vec();
    let mut quot = vec![T::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] = rem[k + j].clone() - c.clone() * bj.clone();
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_accessors() {
        let f = MonicPoly::new(vec![6i64, -5]).unwrap();
        assert_eq!(f.to_string(), "X^2 - 5X + 6");
        assert_eq!(f.trace(), 5);
        assert_eq!(f.det(), 6);
        let g = MonicPoly::new(vec![5i64, -2, 0]).unwrap();
        assert_eq!(g.det(), -5);
        assert_eq!(g.eval(&1), 4);
    }

    #[test]
    fn from_full_requires_leading_one() {
        assert!(MonicPoly::from_full(vec![1i64, 0, 1]).is_ok());
        assert!(MonicPoly::from_full(vec![1i64, 0, 2]).is_err());
        assert!(MonicPoly::<i64>::from_full(vec![1]).is_err());
        assert!(MonicPoly::<i64>::new(vec![]).is_err());
    }

    #[test]
    fn power_sums_of_x2_plus_1() {
        let f = MonicPoly::new(vec![1i64, 0]).unwrap();
        // roots +-i: p1 = 0, p2 = -2, p3 = 0, p4 = 2
        assert_eq!(f.power_sums(4), vec![0, -2, 0, 2]);
    }

    #[test]
    fn divrem_recovers_factor() {
        let a = poly_mul(&[-1i64, 1], &[1i64, 1]);
        assert_eq!(a, vec![-1, 0, 1]);
        let (q, r) = poly_divrem_monic(&a, &[1i64, 1]);
        assert_eq!(q, vec![-1, 1]);
        assert!(r.iter().all(|x| *x == 0));
    }
}
