use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::factor::divisors_u64;
use crate::linalg::{poly_divrem_monic, poly_mul, MonicPoly};

/// The `k`-th cyclotomic polynomial, from `X^k - 1 = prod_{d | k} Phi_d(X)`.
pub fn cyclotomic(k: u64) -> MonicPoly<BigInt> {
    assert!(k >= 1, "cyclotomic index must be >= 1");
    let mut memo = HashMap::new();
    let full = cyclotomic_full(k, &mut memo);
    MonicPoly::from_full(full).expect("cyclotomic polynomials are monic of degree >= 1")
}

fn cyclotomic_full(k: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&k) {
        return p.clone();
    }
    let mut xk1 = vec![BigInt::zero(); k as usize + 1];
    xk1[0] = -BigInt::one();
    xk1[k as usize] = BigInt::one();
    let mut denom = vec![BigInt::one()];
    for d in divisors_u64(k) {
        if d < k {
            denom = poly_mul(&denom, &cyclotomic_full(d, memo));
        }
    }
    let (q, r) = poly_divrem_monic(&xk1, &denom);
    debug_assert!(r.iter().all(Zero::is_zero));
    memo.insert(k, q.clone());
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::euler_phi;

    fn full(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic(1).full_coeffs(), full(&[-1, 1]));
        assert_eq!(cyclotomic(4).full_coeffs(), full(&[1, 0, 1]));
        assert_eq!(cyclotomic(6).full_coeffs(), full(&[1, -1, 1]));
        assert_eq!(cyclotomic(12).full_coeffs(), full(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_105_has_minus_two() {
        let c = cyclotomic(105).full_coeffs();
        let first_big = c.iter().position(|x| x.magnitude() > &One::one()).unwrap();
        assert_eq!(c[first_big], BigInt::from(-2));
        // index 7 and 41 in the standard expansion
        assert_eq!(first_big, 7);
        assert_eq!(c[41], BigInt::from(-2));
        assert_eq!(cyclotomic(104).full_coeffs().iter().filter(|x| x.magnitude() > &One::one()).count(), 0);
    }

    #[test]
    fn product_over_divisors_is_xk_minus_1() {
        for k in 1..=120u64 {
            let mut prod = vec![BigInt::one()];
            for d in divisors_u64(k) {
                prod = poly_mul(&prod, &cyclotomic(d).full_coeffs());
            }
            let mut expected = vec![BigInt::zero(); k as usize + 1];
            expected[0] = -BigInt::one();
            expected[k as usize] = BigInt::one();
            assert_eq!(prod, expected, "k = {k}");
            assert_eq!(cyclotomic(k).degree() as u64, euler_phi(k));
        }
    }
}
