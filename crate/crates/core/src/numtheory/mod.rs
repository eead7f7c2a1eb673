//! Scalar number theory: factorization, divisor counts, totients, cyclotomic
//! polynomials, and counts of integers built from a prescribed set of primes.

mod cyclotomic;
mod factor;
mod totient;

pub use cyclotomic::cyclotomic;
pub use factor::{divisors_u64, factorize, factorize_u64, is_prime_u64, primes_below, FactoredInt};
pub use totient::{euler_phi, v, w, TotientTable};

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::floor_real;

/// Number of positive divisors of `|k|`.
pub fn tau(k: &BigInt) -> Result<u64> {
    Ok(factorize(k)?.divisor_count())
}

/// `F(Q, U)`: the number of positive integers `u <= U` whose prime divisors all divide `Q`.
///
/// Depth-first over products of prime powers. The count equals the number of
/// visited nodes, so a `u64` cannot overflow in any feasible run.
pub fn count_smooth_wrt(q: &BigInt, u: f64) -> Result<u64> {
    if u < 1.0 {
        return Err(Error::InvalidParameter(format!("U must be >= 1, got {u}")));
    }
    let bound = floor_real(u)
        .ok_or_else(|| Error::InvalidParameter(format!("U must be finite, got {u}")))?
        .to_biguint()
        .expect("U >= 1");
    let primes: Vec<BigUint> = factorize(q)?.primes().cloned().collect();
    Ok(smooth_dfs(&primes, 0, BigUint::one(), &bound))
}

fn smooth_dfs(primes: &[BigUint], from: usize, current: BigUint, bound: &BigUint) -> u64 {
    let mut count = 1;
    for (i, p) in primes.iter().enumerate().skip(from) {
        let mut next = &current * p;
        while &next <= bound {
            count += smooth_dfs(primes, i + 1, next.clone(), bound);
            next *= p;
        }
    }
    count
}
