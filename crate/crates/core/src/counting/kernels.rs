//! Machine-word kernels on flat row-major matrices with small entries.

use crate::linalg::Matrix;

pub(crate) fn det_flat(n: usize, a: &[i64]) -> i64 {
    match n {
        0 => 1,
        1 => a[0],
        2 => a[0] * a[3] - a[1] * a[2],
        3 => {
            a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6])
                + a[2] * (a[3] * a[7] - a[4] * a[6])
        }
        _ => Matrix::new(n, a.to_vec()).expect("square").det(),
    }
}

pub(crate) fn trace_flat(n: usize, a: &[i64]) -> i64 {
    (0..n).map(|i| a[i * n + i]).sum()
}

/// `Tr A^2`.
pub(crate) fn trace_sq_flat(n: usize, a: &[i64]) -> i64 {
    let mut s = 0;
    for i in 0..n {
        for k in 0..n {
            s += a[i * n + k] * a[k * n + i];
        }
    }
    s
}

/// Coefficients `c_0, ..., c_{n-1}` of `det(X I - A)`.
pub(crate) fn charpoly_flat(n: usize, a: &[i64]) -> Vec<i64> {
    match n {
        1 => vec![-a[0]],
        2 => vec![det_flat(2, a), -(a[0] + a[3])],
        3 => {
            let m2 = a[0] * a[4] - a[1] * a[3] + a[0] * a[8] - a[2] * a[6] + a[4] * a[8] - a[5] * a[7];
            vec![-det_flat(3, a), m2, -(a[0] + a[4] + a[8])]
        }
        _ => Matrix::new(n, a.to_vec()).expect("square").charpoly().coeffs().to_vec(),
    }
}

/// Adjugate of an `m x m` flat matrix.
pub(crate) fn adjugate_flat(m: usize, r: &[i64]) -> Vec<i64> {
    match m {
        1 => vec![1],
        2 => vec![r[3], -r[1], -r[2], r[0]],
        _ => Matrix::new(m, r.to_vec()).expect("square").adjugate().entries().to_vec(),
    }
}

/// Advances `v` through `[-h, h]^len` in odometer order; false after the last.
pub(crate) fn odometer(v: &mut [i64], h: i64) -> bool {
    for x in v.iter_mut() {
        if *x < h {
            *x += 1;
            return true;
        }
        *x = -h;
    }
    false
}

/// Decodes `code` in base `2h + 1` into `out` (least significant first).
pub(crate) fn decode(mut code: u64, h: i64, out: &mut [i64]) {
    let base = (2 * h + 1) as u64;
    for x in out.iter_mut() {
        *x = (code % base) as i64 - h;
        code /= base;
    }
}

/// Number of `x in [-h, h]^m` with `<w_i, x> = c_i` for every constraint.
///
/// All but the last coordinate are enumerated; the last is solved for.
pub(crate) fn count_linear(ws: &[&[i64]], cs: &[i64], h: i64) -> u128 {
    let m = ws.first().map_or(0, |w| w.len());
    if m == 0 {
        return cs.iter().all(|&c| c == 0) as u128;
    }
    let mut rem = cs.to_vec();
    count_linear_rec(ws, &mut rem, h, 0, m)
}

fn count_linear_rec(ws: &[&[i64]], rem: &mut Vec<i64>, h: i64, j: usize, m: usize) -> u128 {
    if j == m - 1 {
        let mut fixed: Option<i64> = None;
        for (w, &r) in ws.iter().zip(rem.iter()) {
            let a = w[j];
            if a == 0 {
                if r != 0 {
                    return 0;
                }
                continue;
            }
            if r % a != 0 {
                return 0;
            }
            let x = r / a;
            if x.abs() > h || fixed.is_some_and(|f| f != x) {
                return 0;
            }
            fixed = Some(x);
        }
        return if fixed.is_some() { 1 } else { (2 * h + 1) as u128 };
    }
    if ws.iter().all(|w| w[j] == 0) {
        return (2 * h + 1) as u128 * count_linear_rec(ws, rem, h, j + 1, m);
    }
    let mut total = 0;
    for x in -h..=h {
        for (r, w) in rem.iter_mut().zip(ws) {
            *r -= w[j] * x;
        }
        total += count_linear_rec(ws, rem, h, j + 1, m);
        for (r, w) in rem.iter_mut().zip(ws) {
            *r += w[j] * x;
        }
    }
    total
}

/// `#{(x, y) in [-h, h]^2 : x y = p}` for every `p`, indexed by `p + h^2`.
pub(crate) fn product_histogram(h: i64) -> Vec<u128> {
    let h2 = h * h;
    let mut c = vec![0u128; (2 * h2 + 1) as usize];
    for x in -h..=h {
        for y in -h..=h {
            c[(x * y + h2) as usize] += 1;
        }
    }
    c
}
