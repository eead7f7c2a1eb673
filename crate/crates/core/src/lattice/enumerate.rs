//! Lattice point enumeration: short vectors (Fincke-Pohst), successive minima,
//! greedy Minkowski bases and exact counts in centred boxes.


use super::echelon::row_echelon;
use super::{dot, lll, Lattice};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Int;

/// Node cap used when the caller does not pick one.
pub const DEFAULT_NODE_CAP: u64 = 2_000_000_000;

fn to_f64<T: Int>(x: &T) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

fn norm2<T: Int>(v: &[T]) -> T {
    dot(v, v)
}

fn sub_mul<T: Int>(b: &[T], q: &T, a: &[T]) -> Vec<T> {
    b.iter().zip(a).map(|(x, y)| x.clone() - q.clone() * y.clone()).collect()
}

/// Lagrange-Gauss reduction of a rank-2 basis; the result realises both
/// successive minima.
pub(crate) fn gauss_reduce<T: Int>(mut a: Vec<T>, mut b: Vec<T>) -> (Vec<T>, Vec<T>) {
    let two = T::one() + T::one();
    loop {
        if norm2(&b) < norm2(&a) {
            std::mem::swap(&mut a, &mut b);
        }
        let na = norm2(&a);
        let q = (two.clone() * dot(&a, &b) + na.clone()).div_floor(&(two.clone() * na));
        if q.is_zero() {
            return (a, b);
        }
        b = sub_mul(&b, &q, &a);
    }
}

/// Nonzero lattice vectors with squared norm at most `r2`, one from each pair
/// `{v, -v}`, together with their coordinates in `basis`.
///
/// The search runs on floating Gram-Schmidt data with a padded radius and
/// every candidate is re-checked exactly, so the output is exact as long as
/// the basis is reasonably reduced.
pub fn short_vectors<T: Int>(basis: &[Vec<T>], r2: &T, max_nodes: u64) -> Result<Vec<(Vec<T>, Vec<T>)>> {
    let s = basis.len();
    if s == 0 {
        return Ok(Vec::new());
    }
    let bf: Vec<Vec<f64>> = basis.iter().map(|v| v.iter().map(to_f64).collect()).collect();
    let mut bstar: Vec<Vec<f64>> = Vec::with_capacity(s);
    let mut bb = vec![0.0; s];
    let mut mu = vec![vec![0.0; s]; s];
    for i in 0..s {
        let mut v = bf[i].clone();
        for j in 0..i {
            let m = bf[i].iter().zip(&bstar[j]).map(|(x, y)| x * y).sum::<f64>() / bb[j];
            mu[i][j] = m;
            for (x, y) in v.iter_mut().zip(&bstar[j]) {
                *x -= m * y;
            }
        }
        bb[i] = v.iter().map(|x| x * x).sum();
        bstar.push(v);
    }
    let radius = to_f64(r2) * (1.0 + 1e-9) + 1e-6;
    let mut out = Vec::new();
    let mut x = vec![0i64; s];
    let mut nodes = 0u64;
    fp_level(s - 1, radius, &mu, &bb, &mut x, true, &mut nodes, max_nodes, &mut |coef: &[i64]| {
        let c: Vec<T> = coef.iter().map(|&k| T::from_i64(k).expect("fits")).collect();
        let mut v = vec![T::zero(); basis[0].len()];
        for (k, b) in c.iter().zip(basis) {
            if !k.is_zero() {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = vi.clone() + k.clone() * bi.clone();
                }
            }
        }
        if &norm2(&v) <= r2 {
            out.push((c, v));
        }
    })?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn fp_level(
    i: usize,
    rem: f64,
    mu: &[Vec<f64>],
    bb: &[f64],
    x: &mut [i64],
    upper_zero: bool,
    nodes: &mut u64,
    max_nodes: u64,
    emit: &mut dyn FnMut(&[i64]),
) -> Result<()> {
    *nodes += 1;
    if *nodes > max_nodes {
        return Err(Error::BudgetExceeded { needed: format!("> {max_nodes}"), budget: max_nodes });
    }
    let s = x.len();
    let c: f64 = -(i + 1..s).map(|j| x[j] as f64 * mu[j][i]).sum::<f64>();
    let w = (rem.max(0.0) / bb[i]).sqrt();
    let mut lo = (c - w).ceil() as i64;
    let hi = (c + w).floor() as i64;
    if upper_zero {
        lo = lo.max(0);
    }
    for k in lo..=hi {
        let d = k as f64 - c;
        let r = rem - d * d * bb[i];
        if r < 0.0 {
            continue;
        }
        x[i] = k;
        if i == 0 {
            if !(upper_zero && k == 0) {
                emit(x);
            }
        } else {
            fp_level(i - 1, r, mu, bb, x, upper_zero && k == 0, nodes, max_nodes, emit)?;
        }
    }
    x[i] = 0;
    Ok(())
}

fn sorted_candidates<T: Int>(basis: &[Vec<T>], r2: &T) -> Vec<(Vec<T>, Vec<T>)> {
    let mut c = short_vectors(basis, r2, u64::MAX).expect("unbounded enumeration");
    for (coef, v) in c.iter_mut() {
        if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            *v = v.iter().map(|x| -x.clone()).collect();
            *coef = coef.iter().map(|x| -x.clone()).collect();
        }
    }
    c.sort_by(|a, b| norm2(&a.1).cmp(&norm2(&b.1)).then_with(|| b.1.cmp(&a.1)));
    c
}

fn lll_basis<T: Int>(basis: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut b = basis.to_vec();
    lll::lll_reduce(&mut b, 99, 100).expect("lattice basis is independent");
    b
}

fn max_norm2<T: Int>(basis: &[Vec<T>]) -> T {
    basis.iter().map(|v| norm2(v)).max().unwrap_or_else(T::zero)
}

/// Squared successive minima, in increasing order.
pub fn successive_minima<T: Int>(l: &Lattice<T>) -> Vec<T> {
    let s = l.rank();
    if s == 0 {
        return Vec::new();
    }
    let b = lll_basis(l.basis());
    let cands = sorted_candidates(&b, &max_norm2(&b));
    let mut chosen: Vec<Vec<T>> = Vec::new();
    let mut minima = Vec::new();
    for (coef, v) in cands {
        let mut trial = chosen.clone();
        trial.push(coef);
        if row_echelon(&trial).1.len() == trial.len() {
            chosen = trial;
            minima.push(norm2(&v));
            if chosen.len() == s {
                break;
            }
        }
    }
    minima
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rows extend to a basis of `Z^s` iff their maximal minors are coprime.
fn extends_to_basis<T: Int>(rows: &[Vec<T>]) -> bool {
    let k = rows.len();
    let s = rows[0].len();
    let mut g = T::zero();
    for cols in combinations(s, k) {
        let m = Matrix::from_fn(k, |i, j| rows[i][cols[j]].clone());
        g = g.gcd(&m.det());
        if g.is_one() {
            return true;
        }
    }
    false
}

/// Greedy Minkowski-style basis: repeatedly takes the shortest lattice vector
/// that extends the current choice to a basis.
pub(crate) fn minkowski_greedy<T: Int>(basis: &[Vec<T>]) -> Vec<Vec<T>> {
    let s = basis.len();
    let b = lll_basis(basis);
    let mut r2 = max_norm2(&b);
    loop {
        let cands = sorted_candidates(&b, &r2);
        let mut chosen: Vec<Vec<T>> = Vec::new();
        let mut vecs = Vec::new();
        for (coef, v) in cands {
            let mut trial = chosen.clone();
            trial.push(coef);
            if extends_to_basis(&trial) {
                chosen = trial;
                vecs.push(v);
                if chosen.len() == s {
                    return vecs;
                }
            }
        }
        let four = T::from_u8(4).expect("small");
        r2 = r2 * four;
    }
}

struct BoxWalk<T> {
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
    h: T,
    nodes: u64,
    max_nodes: u64,
}

impl<T: Int> BoxWalk<T> {
    fn new(l: &Lattice<T>, h: u64, max_nodes: u64) -> Self {
        let (rows, pivots) = row_echelon(l.basis());
        BoxWalk { rows, pivots, h: T::from_u64(h).expect("fits"), nodes: 0, max_nodes }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::BudgetExceeded { needed: format!("> {}", self.max_nodes), budget: self.max_nodes });
        }
        Ok(())
    }

    fn in_box(&self, x: &T) -> bool {
        x.abs() <= self.h
    }

    /// Range of `c` with `|base + c*a| <= h` for nonzero `a`, or `None` if empty.
    fn range(&self, base: &T, a: &T) -> Option<(T, T)> {
        let lo_num = -self.h.clone() - base.clone();
        let hi_num = self.h.clone() - base.clone();
        let (lo, hi) = if a.is_positive() {
            (lo_num.div_ceil(a), hi_num.div_floor(a))
        } else {
            (hi_num.div_ceil(a), lo_num.div_floor(a))
        };
        if lo > hi {
            None
        } else {
            Some((lo, hi))
        }
    }

    /// Interval of the last coefficient given the partial sum `acc`.
    fn last_range(&self, acc: &[T]) -> Option<(T, T)> {
        let i = self.rows.len() - 1;
        let p = self.pivots[i];
        let mut lo: Option<T> = None;
        let mut hi: Option<T> = None;
        for col in p..acc.len() {
            let a = &self.rows[i][col];
            if a.is_zero() {
                if !self.in_box(&acc[col]) {
                    return None;
                }
                continue;
            }
            let (l, h) = self.range(&acc[col], a)?;
            lo = Some(lo.map_or(l.clone(), |x: T| x.max(l)));
            hi = Some(hi.map_or(h.clone(), |x: T| x.min(h)));
        }
        let (lo, hi) = (lo?, hi?);
        if lo > hi {
            None
        } else {
            Some((lo, hi))
        }
    }

    fn walk(&mut self, i: usize, acc: &[T], leaf: &mut dyn FnMut(&[T], &T, &T, &[Vec<T>])) -> Result<()> {
        self.tick()?;
        let s = self.rows.len();
        if i == s - 1 {
            if let Some((lo, hi)) = self.last_range(acc) {
                leaf(acc, &lo, &hi, &self.rows);
            }
            return Ok(());
        }
        let p = self.pivots[i];
        let next = self.pivots[i + 1];
        let Some((lo, hi)) = self.range(&acc[p], &self.rows[i][p].clone()) else {
            return Ok(());
        };
        let mut c = lo;
        while c <= hi {
            let mut ok = true;
            let mut nacc = acc.to_vec();
            for col in p..nacc.len() {
                nacc[col] = nacc[col].clone() + c.clone() * self.rows[i][col].clone();
                if col < next && !self.in_box(&nacc[col]) {
                    ok = false;
                }
            }
            if ok {
                self.walk(i + 1, &nacc, leaf)?;
            }
            c = c + T::one();
        }
        Ok(())
    }

    fn run(&mut self, t: usize, leaf: &mut dyn FnMut(&[T], &T, &T, &[Vec<T>])) -> Result<()> {
        self.walk(0, &vec![T::zero(); t], leaf)
    }
}

/// Exact number of lattice points in `[-h, h]^t`.
///
/// Works on the echelon form of the basis: each coefficient is confined by its
/// pivot column and the last one by the intersection of all remaining
/// columns. Fails with `BudgetExceeded` once more than `max_nodes` search
/// nodes are visited.
pub fn points_in_box<T: Int>(l: &Lattice<T>, h: u64, max_nodes: u64) -> Result<u128> {
    if l.rank() == 0 {
        return Ok(1);
    }
    let mut w = BoxWalk::new(l, h, max_nodes);
    let mut total: u128 = 0;
    w.run(l.ambient_dim(), &mut |_, lo, hi, _| {
        let n = (hi.clone() - lo.clone() + T::one()).to_u128().expect("nonnegative");
        total += n;
    })?;
    Ok(total)
}

/// Calls `visit` on every lattice point in `[-h, h]^t`.
pub fn enumerate_box<T: Int>(l: &Lattice<T>, h: u64, max_nodes: u64, visit: &mut dyn FnMut(&[T])) -> Result<()> {
    let t = l.ambient_dim();
    if l.rank() == 0 {
        visit(&vec![T::zero(); t]);
        return Ok(());
    }
    let mut w = BoxWalk::new(l, h, max_nodes);
    w.run(t, &mut |acc, lo, hi, rows| {
        let last = &rows[rows.len() - 1];
        let mut c = lo.clone();
        while &c <= hi {
            let v: Vec<T> = acc.iter().zip(last).map(|(x, y)| x.clone() + c.clone() * y.clone()).collect();
            visit(&v);
            c = c + T::one();
        }
    })
}
