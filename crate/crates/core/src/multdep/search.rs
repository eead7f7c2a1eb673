//! Bounded searches: exponent vectors inside the relation lattice and kernel
//! words by breadth-first search with meet-in-the-middle collisions.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::{check_relation, det_relation_lattice, MatrixTuple, RelationVector, Word};
use crate::error::{Error, Result};
use crate::lattice::enumerate_box;
use crate::linalg::Matrix;
use crate::par;
use crate::scalar::BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Cap on enumeration nodes and stored word states.
    pub budget: u64,
    /// Worker threads; 0 uses the global rayon pool.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 50_000_000, threads: 0 }
    }
}

/// Default exponent bound `max(64, 2 * max |entry|)`.
pub fn default_bound(tuple: &MatrixTuple) -> u64 {
    let m = (tuple.max_abs() * 2u32).to_u64().unwrap_or(u64::MAX);
    m.max(64)
}

/// Integer eigenvalues with multiplicity, if the characteristic polynomial
/// splits into linear factors over `Z`.
fn integer_spectrum(a: &Matrix<BigInt>) -> Option<Vec<BigInt>> {
    let n = a.dim();
    let mut full = a.charpoly().full_coeffs();
    let mut roots = Vec::new();
    while full.len() > 1 {
        let c0 = full[0].clone();
        if c0.is_zero() {
            return None;
        }
        let cands = crate::numtheory::factorize(&c0).ok()?;
        let mut divisors = vec![BigInt::from(1)];
        for (p, e) in cands.factors() {
            let p = BigInt::from(p.clone());
            let mut next = Vec::new();
            for d in &divisors {
                let mut q = d.clone();
                for _ in 0..=*e {
                    next.push(q.clone());
                    q *= &p;
                }
            }
            divisors = next;
        }
        let root = divisors
            .iter()
            .flat_map(|d| [d.clone(), -d.clone()])
            .find(|r| full.iter().rev().fold(BigInt::zero(), |acc, c| acc * r + c).is_zero())?;
        // synthetic division by (X - root), coefficients constant-first
        let deg = full.len() - 1;
        let mut q = vec![BigInt::zero(); deg];
        let mut carry = BigInt::zero();
        for i in (0..deg).rev() {
            carry = &full[i + 1] + &carry * &root;
            q[i] = carry.clone();
        }
        full = q;
        roots.push(root);
    }
    (roots.len() == n).then_some(roots)
}

fn spectrum_power(spec: &[BigInt], e: i64) -> Vec<BigRational> {
    let mut v: Vec<BigRational> = spec
        .iter()
        .map(|x| {
            let r = Ratio::from_integer(x.clone());
            if e >= 0 {
                num_traits::pow::pow(r, e as usize)
            } else {
                num_traits::pow::pow(r.recip(), e.unsigned_abs() as usize)
            }
        })
        .collect();
    v.sort();
    v
}

fn order_key(k: &[i64]) -> (u64, u64, bool, Vec<i64>) {
    let linf = k.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    let l1 = k.iter().map(|x| x.unsigned_abs()).sum();
    let neg_lead = k.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0);
    (linf, l1, neg_lead, k.iter().map(|x| -x).collect())
}

/// Looks for a nonzero `k` with `|k_i| <= bound` and `A_1^{k_1} ... A_s^{k_s} = I`.
///
/// Candidates are the points of the determinant relation lattice in the
/// box, tried in order of L-infinity norm, then L1 norm, then positive
/// leading entry first, then decreasing lexicographic order; the first one
/// that verifies is returned. `None` only means nothing was found within the
/// bound.
pub fn find_dependence(tuple: &MatrixTuple, bound: u64, opts: &SearchOptions) -> Result<Option<RelationVector>> {
    let rl = det_relation_lattice(tuple)?;
    let mut cands: Vec<Vec<i64>> = Vec::new();
    enumerate_box(&rl.lattice, bound, opts.budget, &mut |p| {
        if p.iter().any(|x| !x.is_zero()) {
            cands.push(p.iter().map(|x| x.to_i64().expect("bounded")).collect());
        }
    })?;
    // for pairs with integer spectra, A^k B^l = I forces equal spectra of A^k and B^-l
    if tuple.len() == 2 {
        if let (Some(sa), Some(sb)) = (integer_spectrum(&tuple.matrices()[0]), integer_spectrum(&tuple.matrices()[1])) {
            cands.retain(|k| spectrum_power(&sa, k[0]) == spectrum_power(&sb, -k[1]));
        }
    }
    cands.sort_by_cached_key(|k| order_key(k));
    let found = par::install(opts.threads, || {
        cands
            .par_iter()
            .find_first(|k| check_relation(tuple, &RelationVector(k.to_vec())).expect("nonsingular tuple"))
            .cloned()
    })?;
    Ok(found.map(RelationVector))
}

fn subsets(s: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, s: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..s {
            cur.push(i);
            rec(i + 1, s, r, cur, out);
            cur.pop();
        }
    }
    rec(0, s, r, &mut cur, &mut out);
    out
}

/// Largest `r` such that some `r`-element sub-tuple has no dependence within
/// `bound`. Exact only relative to the bound.
pub fn tuple_rank(tuple: &MatrixTuple, bound: u64, opts: &SearchOptions) -> Result<usize> {
    tuple.require_nonsingular()?;
    let s = tuple.len();
    for r in (1..=s).rev() {
        for idx in subsets(s, r) {
            if find_dependence(&tuple.select(&idx), bound, opts)?.is_none() {
                return Ok(r);
            }
        }
    }
    Ok(0)
}

/// Dependent within `bound`, while no proper nonempty sub-tuple is.
pub fn is_maximal_rank_dependent(tuple: &MatrixTuple, bound: u64, opts: &SearchOptions) -> Result<bool> {
    if find_dependence(tuple, bound, opts)?.is_none() {
        return Ok(false);
    }
    let s = tuple.len();
    for r in 1..s {
        for idx in subsets(s, r) {
            if find_dependence(&tuple.select(&idx), bound, opts)?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Searches for a reduced word of length at most `max_len` that equals `I`
/// while its per-letter exponent sums are not all zero.
///
/// Words are grown breadth-first to half the length, keeping the first word
/// for each (product, exponent sums) state. Two words `u`, `v` with the same
/// product and different sums give the answer `u v^-1`.
pub fn find_kernel_word(tuple: &MatrixTuple, max_len: usize, opts: &SearchOptions) -> Result<Option<Word>> {
    tuple.require_nonsingular()?;
    let s = tuple.len();
    let n = tuple.dim();
    let mut letters: Vec<((usize, i8), Matrix<BigRational>)> = Vec::new();
    for (i, a) in tuple.matrices().iter().enumerate() {
        letters.push(((i, 1), a.to_rational()));
        letters.push(((i, -1), a.inverse_rational()?));
    }
    let id = Matrix::<BigInt>::identity(n).to_rational();
    let mut seen: HashSet<(Matrix<BigRational>, Vec<i64>)> = HashSet::new();
    let mut by_product: HashMap<Matrix<BigRational>, Vec<(Vec<i64>, Word)>> = HashMap::new();
    seen.insert((id.clone(), vec![0; s]));
    by_product.insert(id.clone(), vec![(vec![0; s], Word::default())]);
    let mut frontier: Vec<(Word, Matrix<BigRational>, Vec<i64>)> = vec![(Word::default(), id, vec![0; s])];
    let half = max_len.div_ceil(2);
    for _ in 0..half {
        let mut next = Vec::new();
        for (w, p, sums) in &frontier {
            for (l, m) in &letters {
                if w.0.last().is_some_and(|&(i, e)| i == l.0 && e == -l.1) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.0.push(*l);
                let p2 = p * m;
                let mut s2 = sums.clone();
                s2[l.0] += l.1 as i64;
                if let Some(prev) = by_product.get(&p2) {
                    for (ps, pw) in prev {
                        if *ps != s2 && pw.len() + w2.len() <= max_len {
                            let mut joined = w2.clone();
                            joined.0.extend(pw.inverse().0);
                            return Ok(Some(joined.reduce()));
                        }
                    }
                }
                if !seen.insert((p2.clone(), s2.clone())) {
                    continue;
                }
                if seen.len() as u64 > opts.budget {
                    return Err(Error::BudgetExceeded { needed: format!("> {}", opts.budget), budget: opts.budget });
                }
                by_product.entry(p2.clone()).or_default().push((s2.clone(), w2.clone()));
                next.push((w2, p2, s2));
            }
        }
        frontier = next;
    }
    Ok(None)
}


#[cfg(test)]
pub(super) fn integer_spectrum_for_tests(a: &Matrix<BigInt>) -> Option<Vec<BigInt>> {
    integer_spectrum(a)
}
