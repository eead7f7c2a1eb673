//! Exhaustive scans of `M_n(Z; H)`. These are the reference implementations
//! the optimized counters are checked against.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::kernels::{charpoly_flat, decode, det_flat, odometer, trace_flat, trace_sq_flat};
use super::{check_budget, poly_to_i64, universe_size, CountOptions};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, MonicPoly};
use crate::par;

/// First-row codes handled by the shard `(index, total)`, 1-based.
pub(crate) fn shard_codes(n: usize, h: i64, shard: Option<(usize, usize)>) -> Result<Vec<u64>> {
    let rows = ((2 * h + 1) as u64).pow(n as u32);
    let (index, total) = shard.unwrap_or((1, 1));
    if total == 0 || index == 0 || index > total {
        return Err(Error::InvalidParameter(format!("shard {index}/{total} must satisfy 1 <= index <= total")));
    }
    Ok((index as u64 - 1..rows).step_by(total).collect())
}

fn validate(n: usize, h: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    i64::try_from(h).map_err(|_| Error::InvalidParameter("H too large".into()))
}

/// Number of matrices in the (shard of the) universe satisfying `pred`.
pub(crate) fn scan_count(n: usize, h: u64, opts: &CountOptions, pred: impl Fn(&[i64]) -> bool + Sync) -> Result<u128> {
    let hi = validate(n, h)?;
    check_budget(universe_size(n, h), opts.budget)?;
    let codes = shard_codes(n, hi, opts.shard)?;
    par::install(opts.threads, || {
        codes
            .par_iter()
            .map(|&code| {
                let mut a = vec![-hi; n * n];
                decode(code, hi, &mut a[..n]);
                let mut c = 0u128;
                loop {
                    if pred(&a) {
                        c += 1;
                    }
                    if !odometer(&mut a[n..], hi) {
                        break;
                    }
                }
                c
            })
            .sum()
    })
}

/// Histogram of `key` over the (shard of the) universe.
pub(crate) fn scan_histogram<K: Ord + Send>(
    n: usize,
    h: u64,
    opts: &CountOptions,
    key: impl Fn(&[i64]) -> K + Sync,
) -> Result<BTreeMap<K, u128>> {
    let hi = validate(n, h)?;
    check_budget(universe_size(n, h), opts.budget)?;
    let codes = shard_codes(n, hi, opts.shard)?;
    let parts: Vec<BTreeMap<K, u128>> = par::install(opts.threads, || {
        codes
            .par_iter()
            .map(|&code| {
                let mut a = vec![-hi; n * n];
                decode(code, hi, &mut a[..n]);
                let mut m = BTreeMap::new();
                loop {
                    *m.entry(key(&a)).or_insert(0) += 1;
                    if !odometer(&mut a[n..], hi) {
                        break;
                    }
                }
                m
            })
            .collect()
    })?;
    let mut out = BTreeMap::new();
    for p in parts {
        for (k, v) in p {
            *out.entry(k).or_insert(0) += v;
        }
    }
    Ok(out)
}

pub fn count_with_det_naive(n: usize, h: u64, d: i64, opts: &CountOptions) -> Result<u128> {
    scan_count(n, h, opts, |a| det_flat(n, a) == d)
}

/// `R_n(H; f)` by enumeration and comparison of characteristic polynomials.
pub fn count_charpoly(n: usize, h: u64, f: &MonicPoly<BigInt>, opts: &CountOptions) -> Result<u128> {
    if f.degree() != n {
        return Err(Error::DimensionMismatch { expected: n, found: f.degree() });
    }
    let Some(target) = poly_to_i64(f) else {
        return Ok(0);
    };
    scan_count(n, h, opts, |a| charpoly_flat(n, a) == target)
}

pub fn count_det_trace_naive(n: usize, h: u64, d: i64, t: i64, opts: &CountOptions) -> Result<u128> {
    scan_count(n, h, opts, |a| trace_flat(n, a) == t && det_flat(n, a) == d)
}

pub fn count_det_trace2_naive(n: usize, h: u64, d: i64, t1: i64, t2: i64, opts: &CountOptions) -> Result<u128> {
    scan_count(n, h, opts, |a| trace_flat(n, a) == t1 && trace_sq_flat(n, a) == t2 && det_flat(n, a) == d)
}

/// `(U_n(K), V_n(K))` by a full scan.
pub fn count_singular_bordered_naive(n: usize, k: u64, opts: &CountOptions) -> Result<(u128, u128)> {
    if n < 2 {
        return Err(Error::InvalidParameter("bordered counts need n >= 2".into()));
    }
    let m = n - 1;
    let in_u = |a: &[i64]| a[n * n - 1] == 0 && (0..m).any(|i| a[i * n + m] != 0) && det_flat(n, a) == 0;
    let u = scan_count(n, k, opts, in_u)?;
    let v = scan_count(n, k, opts, |a| in_u(a) && (0..m).map(|i| a[m * n + i] * a[i * n + m]).sum::<i64>() == 0)?;
    Ok((u, v))
}

pub fn centralizer_count_naive(a: &Matrix<i64>, h: u64, opts: &CountOptions) -> Result<u128> {
    let n = a.dim();
    scan_count(n, h, opts, |b| {
        let bm = Matrix::new(n, b.to_vec()).expect("square");
        &bm * a == a * &bm
    })
}

/// Histogram of characteristic polynomials (coefficients `c_0, ..., c_{n-1}`).
pub fn charpoly_histogram(n: usize, h: u64, opts: &CountOptions) -> Result<BTreeMap<Vec<i64>, u128>> {
    scan_histogram(n, h, opts, |a| charpoly_flat(n, a))
}
