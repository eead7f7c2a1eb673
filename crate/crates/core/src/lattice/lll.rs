//! Integral LLL reduction (Cohen, Algorithm 2.6.7) with a rational Lovász
//! parameter. All arithmetic stays in the integers: the Gram-Schmidt data is
//! carried as the subdeterminants `d_i` and the scaled coefficients `lambda_ij`.

use crate::error::{Error, Result};
use crate::scalar::Int;

fn dot<T: Int>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// LLL-reduces `basis` in place with `delta = num / den` (e.g. 99/100).
///
/// Fails if the vectors are linearly dependent.
pub fn lll_reduce<T: Int>(basis: &mut [Vec<T>], num: i64, den: i64) -> Result<()> {
    let n = basis.len();
    if n <= 1 {
        if n == 1 && basis[0].iter().all(|x| x.is_zero()) {
            return Err(Error::DependentBasis);
        }
        return Ok(());
    }
    let num = T::from_i64(num).expect("small");
    let den = T::from_i64(den).expect("small");
    let two = T::one() + T::one();

    // 1-based bookkeeping as in the reference algorithm; b[k-1] is b_k.
    let mut d = vec![T::zero(); n + 1];
    let mut lam = vec![vec![T::zero(); n + 1]; n + 1];
    d[0] = T::one();
    d[1] = dot(&basis[0], &basis[0]);
    if d[1].is_zero() {
        return Err(Error::DependentBasis);
    }
    let mut k = 2;
    let mut kmax = 1;

    let red = |basis: &mut [Vec<T>], lam: &mut Vec<Vec<T>>, d: &[T], k: usize, l: usize| {
        if (two.clone() * lam[k][l].clone()).abs() > d[l] {
            let q = (two.clone() * lam[k][l].clone() + d[l].clone()).div_floor(&(two.clone() * d[l].clone()));
            let bl = basis[l - 1].clone();
            for (x, y) in basis[k - 1].iter_mut().zip(&bl) {
                *x = x.clone() - q.clone() * y.clone();
            }
            lam[k][l] = lam[k][l].clone() - q.clone() * d[l].clone();
            for i in 1..l {
                lam[k][i] = lam[k][i].clone() - q.clone() * lam[l][i].clone();
            }
        }
    };

    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&basis[k - 1], &basis[j - 1]);
                for i in 1..j {
                    u = (d[i].clone() * u - lam[k][i].clone() * lam[j][i].clone()) / d[i - 1].clone();
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::DependentBasis);
                    }
                    d[k] = u;
                }
            }
        }
        loop {
            red(basis, &mut lam, &d, k, k - 1);
            let lhs = den.clone() * d[k].clone() * d[k - 2].clone();
            let rhs = num.clone() * d[k - 1].clone() * d[k - 1].clone()
                - den.clone() * lam[k][k - 1].clone() * lam[k][k - 1].clone();
            if lhs < rhs {
                // swap b_k and b_{k-1}
                basis.swap(k - 1, k - 2);
                for j in 1..k - 1 {
                    let tmp = lam[k][j].clone();
                    lam[k][j] = lam[k - 1][j].clone();
                    lam[k - 1][j] = tmp;
                }
                let l = lam[k][k - 1].clone();
                let b = (d[k - 2].clone() * d[k].clone() + l.clone() * l.clone()) / d[k - 1].clone();
                for i in k + 1..=kmax {
                    let t = lam[i][k].clone();
                    lam[i][k] = (d[k].clone() * lam[i][k - 1].clone() - l.clone() * t.clone()) / d[k - 1].clone();
                    lam[i][k - 1] = (b.clone() * t + l.clone() * lam[i][k].clone()) / d[k].clone();
                }
                d[k - 1] = b;
                if k > 2 {
                    k -= 1;
                }
            } else {
                for l in (1..k - 1).rev() {
                    red(basis, &mut lam, &d, k, l);
                }
                k += 1;
                break;
            }
        }
    }
    Ok(())
}
