//! Command-line surface. `main` parses [`Cli`] and hands it to [`execute`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use matstat_core::counting::{self, CountConstraint, CountOptions, CountRecord};
use matstat_core::lattice::{self, Vector};
use matstat_core::linalg::{Matrix, MonicPoly};
use matstat_core::multdep::{self, MatrixTuple, RelationVector, SearchOptions};
use matstat_core::{numtheory, BigInt};

use crate::experiment::{fit_records, judge, run_grid, BoundMode, ExperimentKind, ExperimentSpec, GridRecord};
use crate::io::{matrix_to_json, parse_list, read_matrix, read_tuple, Format, Report, Table};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "matstat", version, about = "Exact counting, lattice and multiplicative-dependence experiments on integer matrices")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Global {
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Iteration budget; defaults depend on the command.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Seed for sampled inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write results here and the manifest next to it; otherwise results go
    /// to stdout and the manifest to stderr.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Keep wall-clock columns in the output.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Count matrices in M_n(Z;H) under a constraint.
    #[command(subcommand)]
    Count(CountCmd),
    /// Multiplicative dependence of matrix tuples.
    #[command(subcommand)]
    Multdep(MultdepCmd),
    /// Orthogonal lattices, goodness and censuses.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Largest totients and totient partitions.
    #[command(subcommand)]
    Totient(TotientCmd),
    /// Number-theoretic helpers.
    #[command(subcommand)]
    Nt(NtCmd),
    /// Run an experiment over a grid and fit the log-log slope.
    Fit(FitArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Shard {
    /// Count only shard `i/m` (1-based) of first rows, with the naive scan.
    #[arg(long, value_parser = parse_shard)]
    pub shard: Option<(usize, usize)>,
}

fn parse_shard(s: &str) -> Result<(usize, usize), String> {
    let (i, m) = s.split_once('/').ok_or("expected i/m")?;
    let i: usize = i.trim().parse().map_err(|_| "bad shard index")?;
    let m: usize = m.trim().parse().map_err(|_| "bad shard count")?;
    if m == 0 || i == 0 || i > m {
        return Err(format!("shard {i}/{m} out of range"));
    }
    Ok((i, m))
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountCmd {
    /// R_n(H; f).
    Charpoly {
        #[arg(long)]
        n: usize,
        #[arg(long = "H")]
        h: u64,
        /// Coefficients c0,c1,...,1 from the constant term up.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        shard: Shard,
    },
    /// S_n(H; d, t), or S_n(H; d, t, t2) with `--t2`.
    Dettrace {
        #[arg(long)]
        n: usize,
        #[arg(long = "H")]
        h: u64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long, allow_hyphen_values = true)]
        t2: Option<i64>,
        #[command(flatten)]
        shard: Shard,
    },
    /// Matrices with a given determinant.
    Det {
        #[arg(long)]
        n: usize,
        #[arg(long = "H")]
        h: u64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[command(flatten)]
        shard: Shard,
    },
    /// U_n(K) and V_n(K) for bordered singular matrices.
    Bordered {
        #[arg(long)]
        n: usize,
        #[arg(long = "K")]
        k: u64,
        #[command(flatten)]
        shard: Shard,
    },
    /// Matrices commuting with the matrix in FILE.
    Centralizer {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long = "H")]
        h: u64,
        #[command(flatten)]
        shard: Shard,
    },
    /// max_f R_n(H; f) and a maximizing f.
    Max {
        #[arg(long)]
        n: usize,
        #[arg(long = "H")]
        h: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructMode {
    Even,
    Odd,
    Torsion,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultdepCmd {
    /// Search for a relation with |k_i| <= B, or verify `--relation`.
    Check {
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        relation: Option<String>,
    },
    /// Rank of the relation module within the bound, and maximal-rank dependence.
    Rank {
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Shortest nontrivial reduced word of length <= L evaluating to I.
    Word {
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long)]
        len: usize,
    },
    /// Build a dependent tuple.
    Construct {
        #[arg(long, value_enum)]
        mode: ConstructMode,
        /// Tuple file with the B matrices (even and odd modes).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Tuple size s when B matrices are sampled.
        #[arg(long)]
        s: Option<usize>,
        /// Matrix size when B matrices are sampled.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Entry bound when B matrices are sampled.
        #[arg(long = "H", default_value_t = 3)]
        h: i64,
        /// Cyclotomic indices for torsion mode, e.g. "3,4".
        #[arg(long)]
        orders: Option<String>,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeCmd {
    /// Orthogonal lattice of a primitive vector and its volume.
    Dual {
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// K-goodness of a primitive vector.
    Good {
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long = "K")]
        k: f64,
    },
    /// K-bad primitive vectors with norm at most U.
    Census {
        #[arg(long)]
        t: usize,
        #[arg(long = "U")]
        u: f64,
        #[arg(long = "K")]
        k: f64,
        /// List the vectors instead of the summary.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TotientCmd {
    /// Largest totient not above n.
    V {
        #[arg(long)]
        n: u64,
    },
    /// Largest sum of squared totients over totient partitions of n.
    W {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NtCmd {
    /// Number of positive integers <= U whose prime factors all divide Q.
    Smoothcount {
        #[arg(long = "Q")]
        q: String,
        #[arg(long = "U")]
        u: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Upper,
    Tight,
}

#[derive(Debug, Args, Serialize)]
pub struct FitArgs {
    #[arg(long)]
    pub experiment: String,
    /// Strictly increasing values of H (K for singular-bordered, U for
    /// kbad-census, n for totient-check).
    #[arg(long)]
    pub grid: String,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub d: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub t: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub t2: Option<i64>,
    /// Ambient dimension for kbad-census.
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    /// Goodness radius for kbad-census; default ceil(sqrt(U)).
    #[arg(long = "K")]
    pub k: Option<f64>,
    /// Matrix file for centralizer runs.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub predicted: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Upper)]
    pub mode: ModeArg,
}

/// Results plus the spec echo for the manifest.
pub struct Outcome {
    pub report: Report,
    pub spec: Value,
}

fn count_table(records: &[CountRecord]) -> Table {
    let mut t = Table::new(&CountRecord::CSV_HEADER);
    for r in records {
        t.push(&r.csv_fields());
    }
    t
}

fn grid_table(records: &[GridRecord]) -> Table {
    let mut t = Table::new(&GridRecord::CSV_HEADER);
    for r in records {
        t.push(&r.csv_fields());
    }
    t
}

fn vector_arg(s: &str) -> Result<Vector<BigInt>, CliError> {
    Ok(Vector::new(parse_list::<BigInt>(s)?))
}

fn join_vectors<T: std::fmt::Display>(vs: &[Vector<T>]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

fn random_nonsingular(rng: &mut ChaCha8Rng, n: usize, h: i64) -> Matrix<BigInt> {
    loop {
        let m = Matrix::from_fn(n, |_, _| BigInt::from(rng.gen_range(-h..=h)));
        if m.det() != BigInt::from(0) {
            return m;
        }
    }
}

fn tuple_json(t: &MatrixTuple) -> String {
    Value::Array(t.matrices().iter().map(matrix_to_json).collect()).to_string()
}

fn run_count(cmd: &CountCmd, g: &Global) -> Result<Table, CliError> {
    let opts = |shard: &Shard| CountOptions {
        budget: g.budget.unwrap_or(counting::DEFAULT_BUDGET),
        threads: g.threads,
        shard: shard.shard,
    };
    let records = match cmd {
        CountCmd::Charpoly { n, h, f, shard } => {
            let mut c = parse_list::<BigInt>(f)?;
            if c.last() != Some(&BigInt::from(1)) || c.len() != n + 1 {
                return Err(CliError::Usage(format!("--f must list {} coefficients ending in 1", n + 1)));
            }
            c.pop();
            let f = MonicPoly::new(c)?;
            vec![counting::count(*n, *h, &CountConstraint::Charpoly(f), &opts(shard))?]
        }
        CountCmd::Dettrace { n, h, d, t, t2, shard } => {
            let c = match t2 {
                None => CountConstraint::DetTrace { d: *d, t: *t },
                Some(t2) => CountConstraint::DetTrace2 { d: *d, t1: *t, t2: *t2 },
            };
            vec![counting::count(*n, *h, &c, &opts(shard))?]
        }
        CountCmd::Det { n, h, d, shard } => vec![counting::count(*n, *h, &CountConstraint::Det(*d), &opts(shard))?],
        CountCmd::Bordered { n, k, shard } => [false, true]
            .into_iter()
            .map(|refined| counting::count(*n, *k, &CountConstraint::SingularBordered { refined }, &opts(shard)))
            .collect::<Result<_, _>>()?,
        CountCmd::Centralizer { matrix, h, shard } => {
            let a = read_matrix(matrix)?;
            vec![counting::count(a.dim(), *h, &CountConstraint::Centralizer(a), &opts(shard))?]
        }
        CountCmd::Max { n, h } => {
            let (f, c) = counting::max_charpoly_count(*n, *h, &opts(&Shard { shard: None }))?;
            let coeffs: Vec<String> = f.full_coeffs().iter().map(ToString::to_string).collect();
            let mut t = Table::new(&["n", "H", "f", "count"]);
            t.push(&[n.to_string(), h.to_string(), coeffs.join(","), c.to_string()]);
            return Ok(t);
        }
    };
    Ok(count_table(&records))
}

fn run_multdep(cmd: &MultdepCmd, g: &Global) -> Result<Table, CliError> {
    let opts = SearchOptions { budget: g.budget.unwrap_or(SearchOptions::default().budget), threads: g.threads };
    match cmd {
        MultdepCmd::Check { tuple, bound, relation } => {
            let tup = read_tuple(tuple)?;
            let mut t = Table::new(&["s", "n", "bound", "dependent", "relation"]);
            match relation {
                Some(r) => {
                    let k = RelationVector(parse_list(r)?);
                    let ok = multdep::check_relation(&tup, &k)?;
                    t.push(&[tup.len().to_string(), tup.dim().to_string(), String::new(), ok.to_string(), k.to_string()]);
                }
                None => {
                    let b = bound.unwrap_or_else(|| multdep::default_bound(&tup));
                    let found = multdep::find_dependence(&tup, b, &opts)?;
                    let rel = found.as_ref().map(ToString::to_string).unwrap_or_default();
                    t.push(&[tup.len().to_string(), tup.dim().to_string(), b.to_string(), found.is_some().to_string(), rel]);
                }
            }
            Ok(t)
        }
        MultdepCmd::Rank { tuple, bound } => {
            let tup = read_tuple(tuple)?;
            let b = bound.unwrap_or_else(|| multdep::default_bound(&tup));
            let rank = multdep::tuple_rank(&tup, b, &opts)?;
            let maximal = multdep::is_maximal_rank_dependent(&tup, b, &opts)?;
            let mut t = Table::new(&["s", "n", "bound", "rank", "maximal_rank_dependent"]);
            t.push(&[tup.len().to_string(), tup.dim().to_string(), b.to_string(), rank.to_string(), maximal.to_string()]);
            Ok(t)
        }
        MultdepCmd::Word { tuple, len } => {
            let tup = read_tuple(tuple)?;
            let w = multdep::find_kernel_word(&tup, *len, &opts)?;
            let mut t = Table::new(&["s", "n", "max_len", "found", "length", "word"]);
            t.push(&[
                tup.len().to_string(),
                tup.dim().to_string(),
                len.to_string(),
                w.is_some().to_string(),
                w.as_ref().map(|w| w.len().to_string()).unwrap_or_default(),
                w.as_ref().map(ToString::to_string).unwrap_or_default(),
            ]);
            Ok(t)
        }
        MultdepCmd::Construct { mode, input, s, n, h, orders } => {
            if let ConstructMode::Torsion = mode {
                let ks: Vec<u64> = parse_list(orders.as_deref().ok_or_else(|| CliError::Usage("torsion mode needs --orders".into()))?)?;
                let (a, k) = multdep::construct_torsion_block(&ks)?;
                let mut t = Table::new(&["mode", "orders", "n", "order", "matrix"]);
                let orders: Vec<String> = ks.iter().map(u64::to_string).collect();
                t.push(&["torsion".into(), orders.join(","), a.dim().to_string(), k.to_string(), matrix_to_json(&a).to_string()]);
                return Ok(t);
            }
            let bs: Vec<Matrix<BigInt>> = match (input, s) {
                (Some(p), _) => read_tuple(p)?.matrices().to_vec(),
                (None, Some(s)) => {
                    let m = match mode {
                        ConstructMode::Even => *s,
                        _ => s.checked_sub(1).ok_or_else(|| CliError::Usage("--s must be positive".into()))?,
                    };
                    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
                    (0..m).map(|_| random_nonsingular(&mut rng, *n, (*h).max(1))).collect()
                }
                (None, None) => return Err(CliError::Usage("give --input FILE or --s".into())),
            };
            let (tup, k) = match mode {
                ConstructMode::Even => multdep::construct_even(&bs)?,
                _ => multdep::construct_odd(&bs)?,
            };
            let ok = multdep::check_relation(&tup, &k)?;
            let name = if let ConstructMode::Even = mode { "even" } else { "odd" };
            let mut t = Table::new(&["mode", "s", "n", "relation", "verified", "tuple"]);
            t.push(&[name.to_string(), tup.len().to_string(), tup.dim().to_string(), k.to_string(), ok.to_string(), tuple_json(&tup)]);
            Ok(t)
        }
    }
}

fn run_lattice(cmd: &LatticeCmd, g: &Global) -> Result<Table, CliError> {
    match cmd {
        LatticeCmd::Dual { vector } => {
            let v = vector_arg(vector)?;
            v.require_primitive()?;
            let l = lattice::orthogonal_lattice(std::slice::from_ref(&v))?;
            let basis = lattice::reduced_basis(&l);
            let vol = lattice::lattice_det(&l);
            let mut t = Table::new(&["vector", "rank", "basis", "gram_det", "norm2", "volume_matches"]);
            t.push(&[
                v.to_string(),
                l.rank().to_string(),
                join_vectors(&basis),
                vol.gram_det.to_string(),
                v.norm2().to_string(),
                (vol.gram_det == v.norm2()).to_string(),
            ]);
            Ok(t)
        }
        LatticeCmd::Good { vector, k } => {
            let v = vector_arg(vector)?;
            let verdict = lattice::is_k_good(&v, *k)?;
            let minima: Vec<String> = verdict.minima2.iter().map(ToString::to_string).collect();
            let mut t = Table::new(&["vector", "K", "good", "minima2", "basis", "violating"]);
            t.push(&[
                v.to_string(),
                k.to_string(),
                verdict.good.to_string(),
                minima.join(";"),
                join_vectors(&verdict.basis),
                verdict.violating.as_ref().map(ToString::to_string).unwrap_or_default(),
            ]);
            Ok(t)
        }
        LatticeCmd::Census { t: dim, u, k, list } => {
            let c = lattice::kbad_census(*dim, *u, *k, *list, g.threads)?;
            if *list {
                let mut t = Table::new(&["vector", "norm2"]);
                for v in c.vectors.iter().flatten() {
                    t.push(&[v.to_string(), v.norm2().to_string()]);
                }
                return Ok(t);
            }
            let mut t = Table::new(&["t", "U", "K", "count", "inverse_norm_sum", "err_bound"]);
            t.push(&[
                dim.to_string(),
                u.to_string(),
                k.to_string(),
                c.count.to_string(),
                format!("{:.15e}", c.sum),
                format!("{:.3e}", c.err_bound),
            ]);
            Ok(t)
        }
    }
}

fn run_fit(a: &FitArgs, g: &Global) -> Result<(Report, Value), CliError> {
    let kind: ExperimentKind = a.experiment.parse()?;
    let mut spec = ExperimentSpec::new(kind, a.n, parse_list(&a.grid)?);
    spec.d = a.d;
    spec.t = a.t;
    spec.t2 = a.t2;
    spec.dim = a.dim;
    spec.k = a.k;
    spec.threads = g.threads;
    spec.seed = g.seed;
    if let Some(b) = g.budget {
        spec.budget = b;
    }
    if let Some(p) = &a.matrix {
        let m = read_matrix(p)?;
        let rows = m
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).map_err(|_| CliError::Usage("matrix entries exceed i64".into()))).collect())
            .collect::<Result<Vec<Vec<i64>>, _>>()?;
        spec.matrix = Some(rows);
    }
    let records = run_grid(&spec)?;
    let mut report = Report::single(grid_table(&records));
    // failed points stay in the table; the fit needs three good ones
    if records.iter().filter(|r| r.count.is_some()).count() >= 3 {
        let mut fit = fit_records(&records)?;
        if let Some(p) = a.predicted {
            let mode = match a.mode {
                ModeArg::Upper => BoundMode::UpperBound,
                ModeArg::Tight => BoundMode::Tight,
            };
            fit = judge(fit, p, a.tol, mode);
        }
        let mut t = Table::new(&["slope", "intercept", "residual", "predicted", "tolerance", "mode", "verdict"]);
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        t.push(&[
            format!("{:.9}", fit.slope),
            format!("{:.9}", fit.intercept),
            format!("{:.3e}", fit.residual),
            opt(fit.predicted),
            opt(fit.tolerance),
            fit.mode.map(|m| m.name().to_string()).unwrap_or_default(),
            fit.verdict.map(|v| v.name().to_string()).unwrap_or_default(),
        ]);
        report.push("fit", t);
    }
    Ok((report, serde_json::to_value(&spec)?))
}

/// Runs a parsed command. Timing columns are dropped unless `--timings`.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    let echo = serde_json::to_value(&cli.command)?;
    let (mut report, spec) = match &cli.command {
        Command::Count(c) => (Report::single(run_count(c, g)?), echo),
        Command::Multdep(c) => (Report::single(run_multdep(c, g)?), echo),
        Command::Lattice(c) => (Report::single(run_lattice(c, g)?), echo),
        Command::Totient(TotientCmd::V { n }) => {
            if *n == 0 {
                return Err(CliError::Usage("n must be positive".into()));
            }
            let v = numtheory::v(*n);
            let mut t = Table::new(&["n", "v", "gap"]);
            t.push(&[n.to_string(), v.to_string(), (n - v).to_string()]);
            (Report::single(t), echo)
        }
        Command::Totient(TotientCmd::W { n }) => {
            if *n == 0 {
                return Err(CliError::Usage("n must be positive".into()));
            }
            let mut t = Table::new(&["n", "w"]);
            t.push(&[n.to_string(), numtheory::w(*n).to_string()]);
            (Report::single(t), echo)
        }
        Command::Nt(NtCmd::Smoothcount { q, u }) => {
            let qb: BigInt = q.trim().parse().map_err(|_| CliError::Usage(format!("--Q {q} is not an integer")))?;
            let c = numtheory::count_smooth_wrt(&qb, *u)?;
            let mut t = Table::new(&["Q", "U", "count"]);
            t.push(&[qb.to_string(), u.to_string(), c.to_string()]);
            (Report::single(t), echo)
        }
        Command::Fit(a) => run_fit(a, g)?,
    };
    if !g.timings {
        report.drop_column("elapsed_ms");
    }
    Ok(Outcome { report, spec })
}
