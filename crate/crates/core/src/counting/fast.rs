//! Optimized counters: histogram and divisor tricks for `n = 2`, and the
//! bordered decomposition `A = [[R, a], [b^T, a_nn]]` in general, where
//! `det A = a_nn det R - b^T adj(R) a` and `Tr A^2 = Tr R^2 + 2 b.a + a_nn^2`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::kernels::{adjugate_flat, count_linear, decode, det_flat, odometer, product_histogram, trace_flat, trace_sq_flat};
use super::{check_budget, poly_to_i64, pow_u128, CountOptions};
use crate::error::{Error, Result};
use crate::lattice::{integer_kernel, points_in_box, Lattice};
use crate::linalg::{Matrix, MonicPoly};
use crate::numtheory::divisors_u64;
use crate::par;

fn small(h: u64) -> Result<i64> {
    i64::try_from(h)
        .ok()
        .filter(|&x| x <= 3_000_000)
        .ok_or_else(|| Error::InvalidParameter(format!("H = {h} is too large for machine-word kernels")))
}

/// Sums `body` over all `m x m` matrices with entries in `[-h, h]`, in parallel
/// over the first row.
fn sum_over_blocks(m: usize, h: i64, threads: usize, body: impl Fn(&[i64]) -> u128 + Sync) -> Result<u128> {
    let rows = ((2 * h + 1) as u64).pow(m as u32);
    par::install(threads, || {
        (0..rows)
            .into_par_iter()
            .map(|code| {
                let mut r = vec![-h; m * m];
                decode(code, h, &mut r[..m]);
                let mut c = 0u128;
                loop {
                    c += body(&r);
                    if !odometer(&mut r[m..], h) {
                        break;
                    }
                }
                c
            })
            .sum()
    })
}

fn mat_vec(m: usize, r: &[i64], v: &[i64]) -> Vec<i64> {
    (0..m).map(|i| (0..m).map(|j| r[i * m + j] * v[j]).sum()).collect()
}

/// `#{A in M_n(Z; H) : det A = d}`.
pub fn count_with_det(n: usize, h: u64, d: i64, opts: &CountOptions) -> Result<u128> {
    let hi = small(h)?;
    match n {
        0 => Err(Error::InvalidParameter("n must be >= 1".into())),
        1 => Ok((d.unsigned_abs() <= h) as u128),
        2 => {
            // ad - bc = d: pair a product p = ad with a product p - d = bc
            let c = product_histogram(hi);
            let h2 = hi * hi;
            Ok((-h2..=h2)
                .filter_map(|p| {
                    let q = p - d;
                    (q.abs() <= h2).then(|| c[(p + h2) as usize] * c[(q + h2) as usize])
                })
                .sum())
        }
        _ => {
            check_budget(pow_u128(2 * h + 1, (n - 1) * n + n - 1), opts.budget)?;
            let rows = n - 1;
            let codes: Vec<u64> = (0..((2 * hi + 1) as u64).pow(n as u32)).collect();
            par::install(opts.threads, || {
                codes
                    .par_iter()
                    .map(|&code| {
                        let mut top = vec![-hi; rows * n];
                        decode(code, hi, &mut top[..n]);
                        let mut minor = vec![0i64; rows * rows];
                        let mut total = 0u128;
                        loop {
                            let cof: Vec<i64> = (0..n)
                                .map(|j| {
                                    for i in 0..rows {
                                        let mut k = 0;
                                        for c in 0..n {
                                            if c != j {
                                                minor[i * rows + k] = top[i * n + c];
                                                k += 1;
                                            }
                                        }
                                    }
                                    let s = if (rows + j) % 2 == 0 { 1 } else { -1 };
                                    s * det_flat(rows, &minor)
                                })
                                .collect();
                            total += count_linear(&[&cof], &[d], hi);
                            if !odometer(&mut top[n..], hi) {
                                break;
                            }
                        }
                        total
                    })
                    .sum()
            })
        }
    }
}

/// `#{(x, y) in [-h, h]^2 : x y = p}`.
pub(crate) fn product_pairs(p: i64, h: i64) -> u128 {
    if p == 0 {
        return (4 * h + 1) as u128;
    }
    let a = p.unsigned_abs();
    if a > (h as u64) * (h as u64) {
        return 0;
    }
    // each positive divisor x <= h with p / x also in range gives (x, p/x) and (-x, -p/x)
    divisors_u64(a).into_iter().filter(|&x| x <= h as u64 && a / x <= h as u64).count() as u128 * 2
}

/// `R_2(H; X^2 - t X + d)`: for each `a_11` the off-diagonal product is forced.
pub fn count_charpoly_fast2(h: u64, f: &MonicPoly<BigInt>) -> Result<u128> {
    if f.degree() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: f.degree() });
    }
    let hi = small(h)?;
    let (Some(t), Some(d)) = (f.trace().to_i64(), f.det().to_i64()) else {
        return Ok(0);
    };
    if t.abs() > 2 * hi {
        return Ok(0);
    }
    let mut total = 0;
    for a11 in (t - hi).max(-hi)..=(t + hi).min(hi) {
        let p = a11.checked_mul(t - a11).and_then(|x| x.checked_sub(d));
        if let Some(p) = p {
            total += product_pairs(p, hi);
        }
    }
    Ok(total)
}

/// Shared loop of the bordered decomposition: for each block `R` with a
/// feasible corner `a_nn = corner(R)`, and each border column `a`, counts the
/// rows `b` meeting the linear constraints returned by `constraints`.
fn bordered(
    n: usize,
    h: i64,
    opts: &CountOptions,
    corner: impl Fn(&[i64]) -> Option<i64> + Sync,
    constraints: impl Fn(&[i64], i64, &[i64], &[i64]) -> Option<Vec<(Vec<i64>, i64)>> + Sync,
) -> Result<u128> {
    let m = n - 1;
    check_budget(pow_u128(2 * h as u64 + 1, m * m + m + m - 1), opts.budget)?;
    sum_over_blocks(m, h, opts.threads, |r| {
        let Some(ann) = corner(r) else {
            return 0;
        };
        if ann.abs() > h {
            return 0;
        }
        let adj = adjugate_flat(m, r);
        let mut a = vec![-h; m];
        let mut total = 0;
        loop {
            let w = mat_vec(m, &adj, &a);
            if let Some(cs) = constraints(r, ann, &a, &w) {
                let ws: Vec<&[i64]> = cs.iter().map(|(w, _)| w.as_slice()).collect();
                let ts: Vec<i64> = cs.iter().map(|(_, t)| *t).collect();
                total += count_linear(&ws, &ts, h);
            }
            if !odometer(&mut a, h) {
                break;
            }
        }
        total
    })
}

/// `S_n(H; d, t)`.
pub fn count_det_trace(n: usize, h: u64, d: i64, t: i64, opts: &CountOptions) -> Result<u128> {
    let hi = small(h)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if t.unsigned_abs() > n as u64 * h {
        return Ok(0);
    }
    if n == 1 {
        return Ok((d == t) as u128);
    }
    let m = n - 1;
    bordered(n, hi, opts, |r| Some(t - trace_flat(m, r)), |r, ann, _a, w| {
        Some(vec![(w.to_vec(), ann * det_flat(m, r) - d)])
    })
}

/// `S_n(H; d, t_1, t_2)`: additionally `Tr A^2 = t_2`.
pub fn count_det_trace2(n: usize, h: u64, d: i64, t1: i64, t2: i64, opts: &CountOptions) -> Result<u128> {
    let hi = small(h)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if t1.unsigned_abs() > n as u64 * h {
        return Ok(0);
    }
    if n == 1 {
        return Ok((d == t1 && t2 == t1 * t1) as u128);
    }
    let m = n - 1;
    bordered(n, hi, opts, |r| Some(t1 - trace_flat(m, r)), |r, ann, a, w| {
        let twice = t2 - trace_sq_flat(m, r) - ann * ann;
        if twice % 2 != 0 {
            return None;
        }
        Some(vec![(w.to_vec(), ann * det_flat(m, r) - d), (a.to_vec(), twice / 2)])
    })
}

/// `(U_n(K), V_n(K))`: singular matrices with `a_nn = 0` and nonzero last
/// column `a`; `V` also requires `b . a = 0`.
pub fn count_singular_bordered(n: usize, k: u64, opts: &CountOptions) -> Result<(u128, u128)> {
    if n < 2 {
        return Err(Error::InvalidParameter("bordered counts need n >= 2".into()));
    }
    let hi = small(k)?;
    let u = bordered(n, hi, opts, |_| Some(0), |_, _, a, w| {
        a.iter().any(|&x| x != 0).then(|| vec![(w.to_vec(), 0)])
    })?;
    let v = bordered(n, hi, opts, |_| Some(0), |_, _, a, w| {
        a.iter().any(|&x| x != 0).then(|| vec![(w.to_vec(), 0), (a.to_vec(), 0)])
    })?;
    Ok((u, v))
}

/// `R_n(H; f)` through the fastest available route: the divisor counter for
/// `n = 2`, and for `n = 3` the determinant/trace/trace-of-square counter
/// (the three power sums fix a cubic). Larger `n` fall back to the scan.
pub fn count_charpoly_fast(n: usize, h: u64, f: &MonicPoly<BigInt>, opts: &CountOptions) -> Result<u128> {
    if f.degree() != n {
        return Err(Error::DimensionMismatch { expected: n, found: f.degree() });
    }
    match n {
        1 => Ok(f.trace().to_i64().is_some_and(|a| a.unsigned_abs() <= h) as u128),
        2 => count_charpoly_fast2(h, f),
        3 => {
            let Some(c) = poly_to_i64(f) else {
                return Ok(0);
            };
            let p = MonicPoly::new(c.clone()).expect("nonempty").power_sums(2);
            count_det_trace2(3, h, -c[0], p[0], p[1], opts)
        }
        _ => super::naive::count_charpoly(n, h, f, opts),
    }
}

/// Matrix entries of the commutant of `a`, as a sublattice of `Z^{n^2}`.
pub fn commutant_lattice(a: &Matrix<BigInt>) -> Lattice<BigInt> {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // coefficient of b_kl in (AB - BA)_ij
            let mut row = vec![BigInt::from(0); n * n];
            for k in 0..n {
                row[k * n + j] += a.get(i, k);
                row[i * n + k] -= a.get(k, j);
            }
            rows.push(row);
        }
    }
    let basis = integer_kernel(&rows, n * n);
    Lattice::new(n * n, basis).expect("kernel basis is independent")
}

/// `#{B in M_n(Z; H) : AB = BA}` as a box count on the commutant lattice.
pub fn centralizer_count(a: &Matrix<BigInt>, h: u64, opts: &CountOptions) -> Result<u128> {
    let l = commutant_lattice(a);
    let small: Option<Vec<Vec<i64>>> = l.basis().iter().map(|v| v.iter().map(ToPrimitive::to_i64).collect()).collect();
    match small.and_then(|b| Lattice::new(l.ambient_dim(), b).ok()) {
        Some(ls) if h < (1 << 20) => points_in_box(&ls, h, opts.budget),
        _ => points_in_box(&l, h, opts.budget),
    }
}

fn table_row(t: i64, h: i64, prods: &[(i64, u128)]) -> Vec<u128> {
    // d ranges over [-2h^2, 2h^2]
    let off = 2 * h * h;
    let mut row = vec![0u128; (2 * off + 1) as usize];
    for a in (t - h).max(-h)..=(t + h).min(h) {
        let q = a * (t - a);
        for &(p, c) in prods {
            row[(q - p + off) as usize] += c;
        }
    }
    row
}

fn products(h: i64) -> Vec<(i64, u128)> {
    let h2 = h * h;
    product_histogram(h)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(i, c)| (i as i64 - h2, c))
        .collect()
}

/// All nonzero `R_2(H; X^2 - t X + d)` as `(t, d, count)`, sorted by `(t, d)`.
pub fn charpoly_table2(h: u64) -> Result<Vec<(i64, i64, u128)>> {
    let hi = small(h)?;
    let prods = products(hi);
    let off = 2 * hi * hi;
    let mut out = Vec::new();
    for t in -2 * hi..=2 * hi {
        for (i, c) in table_row(t, hi, &prods).into_iter().enumerate() {
            if c > 0 {
                out.push((t, i as i64 - off, c));
            }
        }
    }
    Ok(out)
}

/// `max_f R_n(H; f)` and a maximizer. Ties go to the smallest coefficient
/// vector `(c_0, ..., c_{n-1})` in lexicographic order.
///
/// For `n = 2` every realized `(t, d)` is tabulated exactly, which covers
/// `|t| <= 2H` and `|d| <= 2H^2`. Other sizes use a full scan.
pub fn max_charpoly_count(n: usize, h: u64, opts: &CountOptions) -> Result<(MonicPoly<BigInt>, u128)> {
    if n == 2 {
        let hi = small(h)?;
        let prods = products(hi);
        let off = 2 * hi * hi;
        let best = par::install(opts.threads, || {
            (-2 * hi..=2 * hi)
                .into_par_iter()
                .map(|t| {
                    let row = table_row(t, hi, &prods);
                    let mut best: Option<(u128, (i64, i64))> = None;
                    for (i, c) in row.into_iter().enumerate() {
                        let key = (i as i64 - off, -t);
                        if better(c, key, &best) {
                            best = Some((c, key));
                        }
                    }
                    best
                })
                .collect::<Vec<_>>()
        })?;
        let mut top: Option<(u128, (i64, i64))> = None;
        for (c, key) in best.into_iter().flatten() {
            if better(c, key, &top) {
                top = Some((c, key));
            }
        }
        let (c, (c0, c1)) = top.expect("nonempty universe");
        return Ok((MonicPoly::new(vec![BigInt::from(c0), BigInt::from(c1)]).expect("degree 2"), c));
    }
    let hist = super::naive::charpoly_histogram(n, h, opts)?;
    let mut top: Option<(u128, &Vec<i64>)> = None;
    for (k, &c) in &hist {
        if top.is_none_or(|(tc, _)| c > tc) {
            top = Some((c, k));
        }
    }
    let (c, k) = top.expect("nonempty universe");
    Ok((MonicPoly::new(k.iter().map(|&x| BigInt::from(x)).collect()).expect("degree n"), c))
}

fn better(c: u128, key: (i64, i64), best: &Option<(u128, (i64, i64))>) -> bool {
    match best {
        None => c > 0,
        Some((bc, bk)) => c > *bc || (c == *bc && key < *bk),
    }
}
