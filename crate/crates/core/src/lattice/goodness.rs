//! K-good vectors, slabs, perfect/mediocre classification and K-bad censuses.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::enumerate::successive_minima;
use super::{orthogonal_lattice, reduced_basis, Vector};
use crate::error::{Error, Result};
use crate::scalar::{cast, floor_square, Int};

/// Outcome of a K-goodness test together with its certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct GoodnessVerdict<T> {
    pub vector: Vector<T>,
    pub k: f64,
    pub good: bool,
    /// Reduced basis of the orthogonal complement, sorted by length.
    pub basis: Vec<Vector<T>>,
    /// Squared successive minima of the orthogonal complement.
    pub minima2: Vec<T>,
    /// The first squared minimum exceeding `k^2`, if any.
    pub violating: Option<T>,
}

impl<T: Int> GoodnessVerdict<T> {
    /// Largest squared minimum (0 for an empty complement).
    pub fn max_len2(&self) -> T {
        self.minima2.last().cloned().unwrap_or_else(T::zero)
    }
}

fn k_squared<T: Int>(k: f64) -> Result<T> {
    if !(k >= 1.0) || !k.is_finite() {
        return Err(Error::InvalidParameter(format!("K must be a finite real >= 1, got {k}")));
    }
    Ok(cast(&floor_square(k).expect("finite")))
}

/// Decides whether every vector of a reduced basis of `u`'s orthogonal
/// complement has length at most `k`.
///
/// Ties between reduced bases are resolved by using the successive minima,
/// so the verdict does not depend on which reduced basis is found.
pub fn is_k_good<T: Int>(u: &Vector<T>, k: f64) -> Result<GoodnessVerdict<T>> {
    let k2: T = k_squared(k)?;
    if u.is_zero() {
        return Err(Error::ZeroArgument);
    }
    u.require_primitive()?;
    let dual = orthogonal_lattice(std::slice::from_ref(u))?;
    let basis = reduced_basis(&dual);
    let minima2: Vec<T> = if basis.len() <= 4 {
        basis.iter().map(Vector::norm2).collect()
    } else {
        successive_minima(&dual)
    };
    let violating = minima2.iter().find(|m| **m > k2).cloned();
    Ok(GoodnessVerdict { vector: u.clone(), k, good: violating.is_none(), basis, minima2, violating })
}

/// Radius constant `c` such that every primitive `u` is K-good once `K >= c |u|`.
///
/// The vectors `u_i e_j - u_j e_i` lie in the complement, span it and have
/// length at most `|u|`, so every successive minimum is at most `|u|` and
/// `c = 1` works in every dimension.
pub fn good_radius_constant(_t: usize) -> f64 {
    1.0
}

/// Classification of a vector `lambda` from its truncation `lambda*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PerfectVerdict {
    Perfect,
    Mediocre,
    /// `lambda` itself is not H-good.
    NotHGood,
    /// `lambda*` vanishes, so there is nothing to classify.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification<T> {
    pub verdict: PerfectVerdict,
    /// Gcd of the first `n - 1` coordinates.
    pub ell: T,
    /// `lambda* / ell` when `ell > 0`.
    pub mu_star: Option<Vector<T>>,
}

/// Perfect/mediocre classification of an H-good primitive `lambda`.
pub fn classify_perfect_mediocre<T: Int>(lambda: &Vector<T>, h: f64, k: f64) -> Result<Classification<T>> {
    let n = lambda.dim();
    if n < 2 {
        return Err(Error::InvalidParameter("lambda needs at least two coordinates".into()));
    }
    k_squared::<T>(k)?;
    if lambda.is_zero() {
        return Err(Error::ZeroArgument);
    }
    lambda.require_primitive()?;
    let head = &lambda.0[..n - 1];
    if head.iter().all(Zero::is_zero) && lambda.0[n - 1].is_one() {
        return Err(Error::InvalidParameter("lambda = (0,...,0,1) is excluded".into()));
    }
    let star = Vector(head.to_vec());
    let ell = star.content();
    if !is_k_good(lambda, h)?.good {
        let mu_star = (!ell.is_zero()).then(|| Vector(head.iter().map(|x| x.clone() / ell.clone()).collect()));
        return Ok(Classification { verdict: PerfectVerdict::NotHGood, ell, mu_star });
    }
    if ell.is_zero() {
        return Ok(Classification { verdict: PerfectVerdict::Degenerate, ell, mu_star: None });
    }
    let mu = Vector(head.iter().map(|x| x.clone() / ell.clone()).collect());
    let verdict = if is_k_good(&mu, k)?.good { PerfectVerdict::Perfect } else { PerfectVerdict::Mediocre };
    Ok(Classification { verdict, ell, mu_star: Some(mu) })
}

/// Membership in the slab around the hyperplane orthogonal to `v`:
/// `|<w, v>| <= |v|^2`.
pub fn slab_contains<T: Int>(v: &Vector<T>, w: &Vector<T>) -> bool {
    v.dot(w).abs() <= v.norm2()
}

/// Exact number of slab points of `v` in the box `[-t_box, t_box]^t`.
pub fn slab_count_in_box<T: Int>(v: &Vector<T>, t_box: u64) -> Result<u128> {
    if v.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let coords: Vec<i64> = v
        .0
        .iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::InvalidParameter("slab vector too large".into())))
        .collect::<Result<_>>()?;
    let tb = i64::try_from(t_box).map_err(|_| Error::InvalidParameter("box too large".into()))?;
    let l1: i64 = coords.iter().map(|x| x.abs()).sum();
    let span = tb
        .checked_mul(l1)
        .filter(|s| *s < 1 << 26)
        .ok_or_else(|| Error::InvalidParameter("slab histogram too large".into()))?;
    let width = (2 * span + 1) as usize;
    // hist[i] counts partial vectors with <w, v> = i - span
    let mut hist = vec![0u128; width];
    hist[span as usize] = 1;
    for &c in &coords {
        if c == 0 {
            for x in hist.iter_mut() {
                *x *= (2 * tb + 1) as u128;
            }
            continue;
        }
        let mut next = vec![0u128; width];
        for (i, &cnt) in hist.iter().enumerate() {
            if cnt == 0 {
                continue;
            }
            for w in -tb..=tb {
                let j = i as i64 + w * c;
                next[j as usize] += cnt;
            }
        }
        hist = next;
    }
    let n2: i64 = coords.iter().map(|x| x * x).sum();
    let lo = (span - n2).max(0) as usize;
    let hi = ((span + n2) as usize).min(width - 1);
    Ok(hist[lo..=hi].iter().sum())
}

/// Exhaustive K-bad census over primitive vectors of norm at most `U`.
#[derive(Clone, Debug, PartialEq)]
pub struct Census {
    pub t: usize,
    pub u: f64,
    pub k: f64,
    pub count: u64,
    /// Sum of `|u|^-t` over the K-bad vectors.
    pub sum: f64,
    /// Bound on the absolute floating error of `sum`.
    pub err_bound: f64,
    pub vectors: Option<Vec<Vector<i64>>>,
}

#[derive(Default)]
struct Shard {
    count: u64,
    sum: f64,
    comp: f64,
    vectors: Vec<Vector<i64>>,
}

impl Shard {
    fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

fn scan(coords: &mut Vec<i64>, t: usize, rem: i64, g: i64, k2: i64, collect: bool, out: &mut Shard) {
    if coords.len() == t {
        if g != 1 {
            return;
        }
        let u = Vector(coords.clone());
        let v = is_k_good(&u, 1.0).expect("primitive nonzero vector");
        if v.max_len2() > k2 {
            out.count += 1;
            let n2 = u.norm2() as f64;
            out.add(n2.powf(-(t as f64) / 2.0));
            if collect {
                out.vectors.push(u);
            }
        }
        return;
    }
    let r = num_integer::Roots::sqrt(&rem);
    for x in -r..=r {
        coords.push(x);
        scan(coords, t, rem - x * x, num_integer::Integer::gcd(&g, &x), k2, collect, out);
        coords.pop();
    }
}

/// Counts the K-bad primitive `u in Z^t` with `|u| <= U` (both signs).
///
/// Shards by the first coordinate and merges in shard order, so the result
/// does not depend on the number of threads (`0` means rayon's default).
pub fn kbad_census(t: usize, u_max: f64, k: f64, collect: bool, threads: usize) -> Result<Census> {
    if t < 3 {
        return Err(Error::InvalidParameter(format!("census needs t >= 3, got {t}")));
    }
    let k2: i64 = k_squared(k)?;
    let u2: i64 = cast(&floor_square(u_max).ok_or_else(|| Error::InvalidParameter("U must be finite and >= 0".into()))?);
    let r = num_integer::Roots::sqrt(&u2);
    let run = || -> Vec<Shard> {
        (-r..=r)
            .into_par_iter()
            .map(|x0| {
                let mut s = Shard::default();
                let mut coords = vec![x0];
                scan(&mut coords, t, u2 - x0 * x0, x0.abs(), k2, collect, &mut s);
                s
            })
            .collect()
    };
    let shards = crate::par::install(threads, run)?;
    let mut total = Shard::default();
    for s in shards {
        total.count += s.count;
        total.add(s.sum);
        total.add(-s.comp);
        total.vectors.extend(s.vectors);
    }
    let err_bound = (8.0 + total.count as f64) * f64::EPSILON * total.sum;
    Ok(Census {
        t,
        u: u_max,
        k,
        count: total.count,
        sum: total.sum,
        err_bound,
        vectors: collect.then_some(total.vectors),
    })
}

/// Sum of `|u|^-t` over the K-bad census, with an error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InverseNormSum {
    pub value: f64,
    pub err_bound: f64,
}

pub fn kbad_inverse_norm_sum(t: usize, u_max: f64, k: f64, threads: usize) -> Result<InverseNormSum> {
    let c = kbad_census(t, u_max, k, false, threads)?;
    Ok(InverseNormSum { value: c.sum, err_bound: c.err_bound })
}
