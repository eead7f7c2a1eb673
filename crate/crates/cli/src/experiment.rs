//! Grid experiments over `H` and log-log exponent fits.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use matstat_core::{BigInt, BigUint};
use serde::Serialize;

use matstat_core::counting::{self, CountOptions};
use matstat_core::lattice::kbad_census;
use matstat_core::linalg::Matrix;
use matstat_core::multdep::{find_dependence, MatrixTuple, SearchOptions};
use matstat_core::numtheory;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// `max_f R_n(H; f)`.
    CharpolyMax,
    /// `S_n(H; d, t)`, or `S_n(H; d, t, t2)` when `t2` is set.
    DetTrace,
    /// `U_n(K)` over the grid of `K`.
    SingularBordered,
    /// K-bad primitive vectors of norm at most `U`, over the grid of `U`.
    KbadCensus,
    /// Smallest exponent bound exposing the relation of the pair
    /// `[[1, H-1], [0, 1]]`, `[[1, H], [0, 1]]`.
    MultdepFamily,
    /// `n - v(n)`, the distance to the largest totient not above `n`.
    TotientCheck,
    /// Number of matrices commuting with a fixed `A`.
    Centralizer,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::CharpolyMax,
        ExperimentKind::DetTrace,
        ExperimentKind::SingularBordered,
        ExperimentKind::KbadCensus,
        ExperimentKind::MultdepFamily,
        ExperimentKind::TotientCheck,
        ExperimentKind::Centralizer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::CharpolyMax => "charpoly-max",
            ExperimentKind::DetTrace => "det-trace",
            ExperimentKind::SingularBordered => "singular-bordered",
            ExperimentKind::KbadCensus => "kbad-census",
            ExperimentKind::MultdepFamily => "multdep-family",
            ExperimentKind::TotientCheck => "totient-check",
            ExperimentKind::Centralizer => "centralizer",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown experiment '{s}'")))
    }
}

/// Everything needed to reproduce a grid run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub n: usize,
    /// Values of `H` (or `K`, `U`, `n` depending on the kind), strictly increasing.
    pub grid: Vec<u64>,
    pub d: i64,
    pub t: i64,
    pub t2: Option<i64>,
    /// Ambient dimension for censuses.
    pub dim: usize,
    /// Goodness radius for censuses; `None` means `ceil(sqrt(U))`.
    pub k: Option<f64>,
    /// Fixed matrix for centralizer runs, row-major.
    pub matrix: Option<Vec<Vec<i64>>>,
    pub threads: usize,
    pub budget: u64,
    pub seed: u64,
}

impl ExperimentSpec {
    pub fn new(kind: ExperimentKind, n: usize, grid: Vec<u64>) -> Self {
        ExperimentSpec {
            kind,
            n,
            grid,
            d: 0,
            t: 0,
            t2: None,
            dim: 3,
            k: None,
            matrix: None,
            threads: 0,
            budget: counting::DEFAULT_BUDGET,
            seed: 0,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.grid.is_empty() {
            return Err(CliError::Usage("grid is empty".into()));
        }
        if self.grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Usage("grid must be strictly increasing".into()));
        }
        Ok(())
    }
}

/// One grid point. A failed point keeps its error instead of a count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridRecord {
    pub kind: ExperimentKind,
    pub n: usize,
    pub h: u64,
    pub params: String,
    pub count: Option<BigUint>,
    pub error: Option<String>,
    pub elapsed_ms: Option<u64>,
}

impl GridRecord {
    pub const CSV_HEADER: [&'static str; 7] = ["experiment", "n", "H", "params", "count", "error", "elapsed_ms"];

    pub fn csv_fields(&self) -> [String; 7] {
        [
            self.kind.name().to_string(),
            self.n.to_string(),
            self.h.to_string(),
            self.params.clone(),
            self.count.as_ref().map(ToString::to_string).unwrap_or_default(),
            self.error.clone().unwrap_or_default(),
            self.elapsed_ms.map(|x| x.to_string()).unwrap_or_default(),
        ]
    }
}

fn point(spec: &ExperimentSpec, h: u64) -> Result<(String, BigUint), matstat_core::Error> {
    let opts = CountOptions { budget: spec.budget, threads: spec.threads, shard: None };
    match spec.kind {
        ExperimentKind::CharpolyMax => {
            let (f, c) = counting::max_charpoly_count(spec.n, h, &opts)?;
            Ok((format!("f={f}"), BigUint::from(c)))
        }
        ExperimentKind::DetTrace => {
            let c = match spec.t2 {
                None => counting::count_det_trace(spec.n, h, spec.d, spec.t, &opts)?,
                Some(t2) => counting::count_det_trace2(spec.n, h, spec.d, spec.t, t2, &opts)?,
            };
            let params = match spec.t2 {
                None => format!("d={};t={}", spec.d, spec.t),
                Some(t2) => format!("d={};t1={};t2={t2}", spec.d, spec.t),
            };
            Ok((params, BigUint::from(c)))
        }
        ExperimentKind::SingularBordered => {
            let (u, v) = counting::count_singular_bordered(spec.n, h, &opts)?;
            Ok((format!("V={v}"), BigUint::from(u)))
        }
        ExperimentKind::KbadCensus => {
            let k = spec.k.unwrap_or_else(|| (h as f64).sqrt().ceil());
            let c = kbad_census(spec.dim, h as f64, k, false, spec.threads)?;
            Ok((format!("t={};K={k};sum={:.12e}", spec.dim, c.sum), BigUint::from(c.count)))
        }
        ExperimentKind::MultdepFamily => {
            let hh = i64::try_from(h).map_err(|_| matstat_core::Error::InvalidParameter("H too large".into()))?;
            let tuple = MatrixTuple::from_i64(&[vec![vec![1, hh - 1], vec![0, 1]], vec![vec![1, hh], vec![0, 1]]])?;
            let sopts = SearchOptions { budget: spec.budget, threads: spec.threads };
            for b in 1..=2 * h.max(1) {
                if let Some(k) = find_dependence(&tuple, b, &sopts)? {
                    return Ok((format!("k={k}"), BigUint::from(b)));
                }
            }
            Err(matstat_core::Error::InvalidParameter(format!("no relation with bound <= {}", 2 * h)))
        }
        ExperimentKind::TotientCheck => {
            let v = numtheory::v(h);
            Ok((format!("v={v};bound={:.6}", (h as f64).powf(21.0 / 40.0)), BigUint::from(h - v)))
        }
        ExperimentKind::Centralizer => {
            let rows = spec
                .matrix
                .as_ref()
                .ok_or_else(|| matstat_core::Error::InvalidParameter("centralizer runs need a matrix".into()))?;
            let a = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())?;
            let c = counting::centralizer_count(&a, h, &opts)?;
            let desc: Vec<String> = rows.iter().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")).collect();
            Ok((format!("A={}", desc.join(";")), BigUint::from(c)))
        }
    }
}

/// Runs every grid point in order. Per-point failures are recorded in the
/// returned rows; only an invalid spec is an error.
pub fn run_grid(spec: &ExperimentSpec) -> Result<Vec<GridRecord>, CliError> {
    spec.validate()?;
    let mut out = Vec::with_capacity(spec.grid.len());
    for &h in &spec.grid {
        let start = Instant::now();
        let res = point(spec, h);
        let elapsed_ms = Some(start.elapsed().as_millis() as u64);
        let (params, count, error) = match res {
            Ok((p, c)) => (p, Some(c), None),
            Err(e) => (String::new(), None, Some(e.to_string())),
        };
        out.push(GridRecord { kind: spec.kind, n: spec.n, h, params, count, error, elapsed_ms });
    }
    Ok(out)
}

/// Whether a fitted exponent is read as an upper bound or as a conjectured
/// exact value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    UpperBound,
    Tight,
}

impl BoundMode {
    pub fn name(self) -> &'static str {
        match self {
            BoundMode::UpperBound => "upper-bound",
            BoundMode::Tight => "tight",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Consistent,
    Inconsistent,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
        }
    }
}

/// Least-squares fit of `log count` against `log H`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// Largest absolute deviation of a point from the fitted line, in log units.
    pub residual: f64,
    pub grid: Vec<f64>,
    pub predicted: Option<f64>,
    pub tolerance: Option<f64>,
    pub mode: Option<BoundMode>,
    pub verdict: Option<Verdict>,
}

pub fn fit_exponent(points: &[(f64, f64)]) -> Result<FitResult, CliError> {
    if points.len() < 3 {
        return Err(CliError::Usage(format!("slope fits need at least 3 points, got {}", points.len())));
    }
    if let Some(&(h, c)) = points.iter().find(|&&(h, c)| !(h > 0.0 && c > 0.0)) {
        return Err(CliError::Usage(format!("cannot fit nonpositive data point (H = {h}, count = {c})")));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(CliError::Usage("grid needs at least two distinct values".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).abs()).fold(0.0, f64::max);
    Ok(FitResult {
        slope,
        intercept,
        residual,
        grid: points.iter().map(|p| p.0).collect(),
        predicted: None,
        tolerance: None,
        mode: None,
        verdict: None,
    })
}

/// Fits the successful records of a grid run.
pub fn fit_records(records: &[GridRecord]) -> Result<FitResult, CliError> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter_map(|r| r.count.as_ref().map(|c| (r.h as f64, biguint_to_f64(c))))
        .collect();
    fit_exponent(&pts)
}

fn biguint_to_f64(c: &BigUint) -> f64 {
    c.to_string().parse().unwrap_or(f64::INFINITY)
}

/// `slope <= predicted + tol` for upper bounds, `|slope - predicted| <= tol`
/// for tight predictions.
pub fn compare_to_bound(fit: &FitResult, predicted: f64, tol: f64, mode: BoundMode) -> Verdict {
    let ok = match mode {
        BoundMode::UpperBound => fit.slope <= predicted + tol,
        BoundMode::Tight => (fit.slope - predicted).abs() <= tol,
    };
    if ok {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    }
}

/// Records the verdict in the fit.
pub fn judge(mut fit: FitResult, predicted: f64, tol: f64, mode: BoundMode) -> FitResult {
    fit.verdict = Some(compare_to_bound(&fit, predicted, tol, mode));
    fit.predicted = Some(predicted);
    fit.tolerance = Some(tol);
    fit.mode = Some(mode);
    fit
}
