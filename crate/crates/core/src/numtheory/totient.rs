//! Totients: values of Euler's function, the largest totient below `n`, and
//! the maximal sum of squared totients over totient partitions of `n`.

use super::factor::factorize_u64;

/// Euler's function via factorization. `phi(1) = 1`.
pub fn euler_phi(k: u64) -> u64 {
    assert!(k >= 1, "euler_phi is defined for k >= 1");
    factorize_u64(k)
        .into_iter()
        .fold(k, |acc, (p, _)| acc / p * (p - 1))
}

/// Lower bound `phi(k) > k / (e^gamma ln ln k + 2.50637 / ln ln k)`, valid for all `k >= 3`
/// (Rosser and Schoenfeld). Increasing for `k >= 16`.
fn phi_lower_bound(k: f64) -> f64 {
    const EXP_GAMMA: f64 = 1.781_072_417_990_198;
    let ll = k.ln().ln();
    k / (EXP_GAMMA * ll + 2.50637 / ll)
}

/// Smallest `K >= 16` beyond which every `phi(k)` exceeds `limit`.
fn witness_bound(limit: u64) -> u64 {
    let target = limit as f64 * (1.0 + 1e-9) + 1.0;
    let mut lo = 16u64;
    if phi_lower_bound(lo as f64) > target {
        return lo;
    }
    let mut hi = 32u64;
    while phi_lower_bound(hi as f64) <= target {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if phi_lower_bound(mid as f64) > target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// The exact set of totients in `[1, limit]`.
///
/// Built by sieving `phi(k)` for every `k` up to a witness bound derived from
/// the Rosser-Schoenfeld lower bound on `phi`, so no totient is missed.
#[derive(Clone, Debug)]
pub struct TotientTable {
    limit: u64,
    values: Vec<u64>,
    witnesses: Vec<u64>,
    member: Vec<bool>,
    witness_bound: u64,
}

impl TotientTable {
    pub fn up_to(limit: u64) -> Self {
        assert!(limit >= 1, "totient table needs limit >= 1");
        let bound = witness_bound(limit);
        let size = bound as usize + 1;
        let mut phi: Vec<u64> = (0..size as u64).collect();
        for p in 2..size {
            if phi[p] == p as u64 {
                let mut m = p;
                while m < size {
                    phi[m] -= phi[m] / p as u64;
                    m += p;
                }
            }
        }
        let mut witness = vec![0u64; limit as usize + 1];
        for k in 1..size {
            let v = phi[k];
            if v <= limit && witness[v as usize] == 0 {
                witness[v as usize] = k as u64;
            }
        }
        let mut values = Vec::new();
        let mut witnesses = Vec::new();
        let mut member = vec![false; limit as usize + 1];
        for (m, &k) in witness.iter().enumerate().skip(1) {
            if k != 0 {
                values.push(m as u64);
                witnesses.push(k);
                member[m] = true;
            }
        }
        Self { limit, values, witnesses, member, witness_bound: bound }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Sorted distinct totients up to the limit.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Every `k` with `phi(k) <= limit` satisfies `k <= witness_bound()`.
    pub fn witness_bound(&self) -> u64 {
        self.witness_bound
    }

    /// Smallest `k` with `phi(k) = m`, if `m` is a totient in range.
    pub fn witness(&self, m: u64) -> Option<u64> {
        self.values.binary_search(&m).ok().map(|i| self.witnesses[i])
    }

    pub fn contains(&self, m: u64) -> bool {
        (m as usize) < self.member.len() && self.member[m as usize]
    }

    /// Largest totient `<= n`, for `1 <= n <= limit`.
    pub fn largest_at_most(&self, n: u64) -> u64 {
        assert!(n >= 1 && n <= self.limit, "n outside table range");
        let idx = self.values.partition_point(|&m| m <= n);
        self.values[idx - 1]
    }

    /// `w(0), ..., w(n)`: `w(m) = max (tau^2 + w(m - tau))` over totients `tau <= m`.
    pub fn max_square_sums(&self, n: u64) -> Vec<u128> {
        assert!(n <= self.limit, "n outside table range");
        let n = n as usize;
        let mut w = vec![0u128; n + 1];
        for m in 1..=n {
            let mut best = 0u128;
            for &t in &self.values {
                let t = t as usize;
                if t > m {
                    break;
                }
                let cand = (t as u128) * (t as u128) + w[m - t];
                best = best.max(cand);
            }
            w[m] = best;
        }
        w
    }
}

/// Largest totient `m <= n`.
pub fn v(n: u64) -> u64 {
    TotientTable::up_to(n).largest_at_most(n)
}

/// Maximum of `sum phi(k_j)^2` over representations `n = sum phi(k_j)`.
/// Repeated summands are allowed.
pub fn w(n: u64) -> u128 {
    assert!(n >= 1, "w is defined for n >= 1");
    TotientTable::up_to(n).max_square_sums(n)[n as usize]
}
