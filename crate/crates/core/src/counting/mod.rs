//! Counting integer matrices in the box `M_n(Z; H)` by characteristic
//! polynomial, determinant, trace data, commutation, and bordered
//! singularity conditions.
//!
//! Each statistic has a naive scan and an optimized counter; the two are
//! cross-checked in the tests. Counts are exact `u128` values.

mod fast;
mod kernels;
mod naive;

use std::fmt;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, MonicPoly};

pub use fast::{
    centralizer_count, charpoly_table2, commutant_lattice, count_charpoly_fast, count_charpoly_fast2,
    count_det_trace, count_det_trace2, count_singular_bordered, count_with_det, max_charpoly_count,
};
pub use naive::{
    centralizer_count_naive, charpoly_histogram, count_charpoly, count_det_trace2_naive, count_det_trace_naive,
    count_singular_bordered_naive, count_with_det_naive,
};

/// Default cap on elementary iterations.
pub const DEFAULT_BUDGET: u64 = 2_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountOptions {
    /// Maximum number of elementary iterations a counter may plan.
    pub budget: u64,
    /// Worker threads; 0 uses the global rayon pool.
    pub threads: usize,
    /// Restricts scans to the shard `(index, total)` of first rows, 1-based.
    pub shard: Option<(usize, usize)>,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { budget: DEFAULT_BUDGET, threads: 0, shard: None }
    }
}

pub(crate) fn pow_u128(base: u64, e: usize) -> Option<u128> {
    (0..e).try_fold(1u128, |acc, _| acc.checked_mul(base as u128))
}

pub(crate) fn universe_size(n: usize, h: u64) -> Option<u128> {
    pow_u128(2 * h + 1, n * n)
}

pub(crate) fn check_budget(needed: Option<u128>, budget: u64) -> Result<()> {
    match needed {
        Some(x) if x <= budget as u128 => Ok(()),
        Some(x) => Err(Error::BudgetExceeded { needed: x.to_string(), budget }),
        None => Err(Error::BudgetExceeded { needed: "overflow".into(), budget }),
    }
}

pub(crate) fn poly_to_i64(f: &MonicPoly<BigInt>) -> Option<Vec<i64>> {
    f.coeffs().iter().map(ToPrimitive::to_i64).collect()
}

/// Odometer over `M_n(Z; H)` restricted to one shard of first rows.
///
/// Shard `(index, total)` takes the first-row codes congruent to
/// `index - 1` modulo `total`, so the shards partition the universe.
pub struct MatrixStream {
    n: usize,
    h: i64,
    codes: std::vec::IntoIter<u64>,
    current: Option<Vec<i64>>,
}

impl Iterator for MatrixStream {
    type Item = Matrix<i64>;

    fn next(&mut self) -> Option<Matrix<i64>> {
        loop {
            if let Some(a) = self.current.as_mut() {
                let out = Matrix::new(self.n, a.clone()).expect("square");
                if !kernels::odometer(&mut a[self.n..], self.h) {
                    self.current = None;
                }
                return Some(out);
            }
            let code = self.codes.next()?;
            let mut a = vec![-self.h; self.n * self.n];
            kernels::decode(code, self.h, &mut a[..self.n]);
            self.current = Some(a);
        }
    }
}

/// Streams every matrix of `M_n(Z; H)` in the given shard exactly once.
pub fn enumerate_matrices(n: usize, h: u64, shard: (usize, usize), budget: u64) -> Result<MatrixStream> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    check_budget(universe_size(n, h), budget)?;
    let hi = i64::try_from(h).map_err(|_| Error::InvalidParameter("H too large".into()))?;
    let codes = naive::shard_codes(n, hi, Some(shard))?;
    Ok(MatrixStream { n, h: hi, codes: codes.into_iter(), current: None })
}

/// Which statistic to count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CountConstraint {
    Charpoly(MonicPoly<BigInt>),
    Det(i64),
    DetTrace { d: i64, t: i64 },
    DetTrace2 { d: i64, t1: i64, t2: i64 },
    /// `U_n(K)`, or `V_n(K)` when `refined`.
    SingularBordered { refined: bool },
    Centralizer(Matrix<BigInt>),
}

impl CountConstraint {
    pub fn kind(&self) -> &'static str {
        match self {
            CountConstraint::Charpoly(_) => "charpoly",
            CountConstraint::Det(_) => "det",
            CountConstraint::DetTrace { .. } => "det_trace",
            CountConstraint::DetTrace2 { .. } => "det_trace2",
            CountConstraint::SingularBordered { refined: false } => "singular_bordered_u",
            CountConstraint::SingularBordered { refined: true } => "singular_bordered_v",
            CountConstraint::Centralizer(_) => "centralizer",
        }
    }

    /// Parameters as a compact string, e.g. `d=0;t=1`.
    pub fn params(&self) -> String {
        match self {
            CountConstraint::Charpoly(f) => {
                let c: Vec<String> = f.coeffs().iter().map(|x| x.to_string()).collect();
                format!("coeffs={}", c.join(" "))
            }
            CountConstraint::Det(d) => format!("d={d}"),
            CountConstraint::DetTrace { d, t } => format!("d={d};t={t}"),
            CountConstraint::DetTrace2 { d, t1, t2 } => format!("d={d};t1={t1};t2={t2}"),
            CountConstraint::SingularBordered { .. } => String::new(),
            CountConstraint::Centralizer(a) => {
                let rows: Vec<String> = a
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                    .collect();
                format!("A={}", rows.join(";"))
            }
        }
    }
}

/// One counted statistic.
///
/// Equality ignores timing and shard metadata.
#[derive(Clone, Debug)]
pub struct CountRecord {
    pub n: usize,
    pub h: u64,
    pub constraint: CountConstraint,
    pub count: BigUint,
    pub elapsed_ms: Option<u64>,
    pub shard: Option<(usize, usize)>,
}

impl PartialEq for CountRecord {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.h == other.h && self.constraint == other.constraint && self.count == other.count
    }
}

impl CountRecord {
    pub const CSV_HEADER: [&'static str; 6] = ["n", "H", "kind", "params", "count", "elapsed_ms"];

    /// CSV fields in `CSV_HEADER` order; the timing column is empty when absent.
    pub fn csv_fields(&self) -> [String; 6] {
        [
            self.n.to_string(),
            self.h.to_string(),
            self.constraint.kind().to_string(),
            self.constraint.params(),
            self.count.to_string(),
            self.elapsed_ms.map(|x| x.to_string()).unwrap_or_default(),
        ]
    }
}

impl fmt::Display for CountRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} H={} {} {} count={}", self.n, self.h, self.constraint.kind(), self.constraint.params(), self.count)
    }
}

/// Counts with the production counter for `constraint`.
///
/// With `opts.shard` set, the naive scan restricted to that shard is used so
/// that partial counts can be merged by addition.
pub fn count(n: usize, h: u64, constraint: &CountConstraint, opts: &CountOptions) -> Result<CountRecord> {
    let start = Instant::now();
    let value = match (constraint, opts.shard) {
        (CountConstraint::Charpoly(f), None) => count_charpoly_fast(n, h, f, opts)?,
        (CountConstraint::Charpoly(f), Some(_)) => count_charpoly(n, h, f, opts)?,
        (CountConstraint::Det(d), None) => count_with_det(n, h, *d, opts)?,
        (CountConstraint::Det(d), Some(_)) => count_with_det_naive(n, h, *d, opts)?,
        (CountConstraint::DetTrace { d, t }, None) => count_det_trace(n, h, *d, *t, opts)?,
        (CountConstraint::DetTrace { d, t }, Some(_)) => count_det_trace_naive(n, h, *d, *t, opts)?,
        (CountConstraint::DetTrace2 { d, t1, t2 }, None) => count_det_trace2(n, h, *d, *t1, *t2, opts)?,
        (CountConstraint::DetTrace2 { d, t1, t2 }, Some(_)) => count_det_trace2_naive(n, h, *d, *t1, *t2, opts)?,
        (CountConstraint::SingularBordered { refined }, None) => {
            let (u, v) = count_singular_bordered(n, h, opts)?;
            if *refined { v } else { u }
        }
        (CountConstraint::SingularBordered { refined }, Some(_)) => {
            let (u, v) = count_singular_bordered_naive(n, h, opts)?;
            if *refined { v } else { u }
        }
        (CountConstraint::Centralizer(a), shard) => {
            if a.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: a.dim() });
            }
            match shard {
                None => centralizer_count(a, h, opts)?,
                Some(_) => {
                    let small = a.map(|x| x.to_i64().expect("small centralizer input"));
                    centralizer_count_naive(&small, h, opts)?
                }
            }
        }
    };
    Ok(CountRecord {
        n,
        h,
        constraint: constraint.clone(),
        count: BigUint::from(value),
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
        shard: opts.shard,
    })
}
