//! Experiment runner: build the dataset, sample the function family once,
//! then select and evaluate for every (algorithm, k) pair in config order.

use std::io::Write;
use std::time::{Duration, Instant};

use kregret::bounds::{ces_upper_bound, muf_upper_bound};
use kregret::datagen::{gen_anticorrelated, gen_circle_lowerbound, load_csv};
use kregret::partition::PartitionStrategy;
use kregret::selector::{self, compute_t, MinVarConfig, RfConfig};
use kregret::utility::{FamilyEvaluator, FamilyKind, FamilySpec, UtilityFunction};
use kregret::{normalize, AnswerSet, Dataset64};

use crate::config::{Algorithm, DatasetSpec, ExperimentConfig};
use crate::error::{BenchError, BenchResult};

/// Result CSV header; column order is part of the output contract.
pub const CSV_HEADER: &str =
    "dataset,algorithm,n,d,k,t,family,b,num_functions,seed,max_rr,bound,select_ms,eval_ms";

/// Columns holding wall-clock timings, excluded from determinism checks.
pub const TIMING_COLUMNS: [&str; 2] = ["select_ms", "eval_ms"];

/// Offset between the dataset seed and the function-family seed, so the two
/// streams never coincide.
const FAMILY_SEED_SALT: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub t: usize,
    pub family: FamilyKind,
    pub b: Option<f64>,
    pub num_functions: usize,
    pub seed: u64,
    pub max_rr: f64,
    /// Index into the sampled family of the function attaining `max_rr`.
    pub argmax_function: usize,
    /// Theoretical MinVar bound for this (k, d, family); `None` when the
    /// data is not normalized into (1, 2].
    pub bound: Option<f64>,
    pub select: Duration,
    pub eval: Duration,
}

impl ResultRow {
    pub fn to_csv_line(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{:.3},{:.3}",
            self.dataset,
            self.algorithm,
            self.n,
            self.d,
            self.k,
            self.t,
            self.family,
            opt(self.b),
            self.num_functions,
            self.seed,
            self.max_rr,
            opt(self.bound),
            self.select.as_secs_f64() * 1e3,
            self.eval.as_secs_f64() * 1e3,
        )
    }
}

pub fn write_csv<W: Write>(rows: &[ResultRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.to_csv_line())?;
    }
    out.flush()
}

/// Drops the timing columns from a result CSV, leaving the part that must be
/// reproducible from config and seed.
pub fn strip_timing(csv: &str) -> String {
    let header: Vec<&str> = CSV_HEADER.split(',').collect();
    let keep: Vec<bool> = header.iter().map(|h| !TIMING_COLUMNS.contains(h)).collect();
    csv.lines()
        .map(|line| {
            line.split(',')
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(f, _)| f)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Builds the dataset described by `spec`. Anti-correlated data is
/// normalized; circle data is left raw.
pub fn build_dataset(cfg: &ExperimentConfig) -> BenchResult<Dataset64> {
    let ds = match &cfg.dataset {
        DatasetSpec::AntiCorrelated { n, d } => normalize(
            &gen_anticorrelated(*n, *d, cfg.seed)
                .map_err(|e| BenchError::run("generating dataset", e))?,
        ),
        DatasetSpec::Circle { m } => {
            gen_circle_lowerbound(*m).map_err(|e| BenchError::run("generating dataset", e))?
        }
        DatasetSpec::Csv { path, columns } => {
            let loaded =
                load_csv(path, columns).map_err(|e| BenchError::run("loading dataset", e))?;
            if cfg.normalize {
                normalize(&loaded.dataset)
            } else {
                loaded.dataset
            }
        }
    };
    cfg.check_ks(ds.len(), ds.dim())?;
    Ok(ds)
}

pub fn sample_family(cfg: &ExperimentConfig, d: usize) -> BenchResult<Vec<UtilityFunction<f64>>> {
    let mut spec = FamilySpec::new(cfg.family, cfg.num_functions);
    spec.ces_b = cfg.ces_b;
    spec.sample(d, cfg.seed ^ FAMILY_SEED_SALT)
        .map_err(|e| BenchError::run("sampling utility functions", e))
}

/// MinVar bound for the family. Sampled Cobb-Douglas weights sum to one, so
/// the MUF bound applies. A CES family with per-function exponents uses the
/// loosest per-function bound.
pub fn family_bound(
    family: FamilyKind,
    functions: &[UtilityFunction<f64>],
    k: usize,
    d: usize,
) -> kregret::Result<f64> {
    match family {
        FamilyKind::Muf | FamilyKind::CobbDouglas => muf_upper_bound(k, d),
        FamilyKind::Ces => {
            let b_min = functions
                .iter()
                .filter_map(|f| f.exponent())
                .fold(f64::INFINITY, f64::min);
            ces_upper_bound(k, d, b_min)
        }
    }
}

/// Selector knobs shared by the bench loop and the `select` subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectOptions {
    pub inc: Option<usize>,
    pub itr_max: usize,
    /// Seed for RF-MinVar's random fill and the random baseline.
    pub seed: u64,
}

impl From<&ExperimentConfig> for SelectOptions {
    fn from(cfg: &ExperimentConfig) -> Self {
        Self {
            inc: cfg.inc,
            itr_max: cfg.itr_max,
            seed: cfg.seed,
        }
    }
}

/// Runs one selector. Data that is not normalized runs MinVar in raw mode.
pub fn select(
    algorithm: Algorithm,
    ds: &Dataset64,
    k: usize,
    opts: &SelectOptions,
) -> kregret::Result<AnswerSet> {
    let base = |strategy| MinVarConfig {
        inc: opts.inc,
        strategy,
        allow_raw: !ds.is_normalized(),
    };
    match algorithm {
        Algorithm::MinVar => {
            selector::minvar_with(ds, k, &base(PartitionStrategy::FindBreakpoints))
        }
        Algorithm::MinVarEquiWidth => {
            selector::minvar_with(ds, k, &base(PartitionStrategy::EquiWidth))
        }
        Algorithm::MinVarMinWidth => {
            selector::minvar_with(ds, k, &base(PartitionStrategy::MinWidth))
        }
        Algorithm::RfMinVar => selector::rf_minvar_with(
            ds,
            k,
            &RfConfig {
                base: base(PartitionStrategy::FindBreakpoints),
                itr_max: opts.itr_max,
                seed: opts.seed,
            },
        ),
        Algorithm::MaxDom => selector::maxdom(ds, k),
        Algorithm::Random => selector::random_subset(ds, k, opts.seed),
    }
}

/// Runs every (algorithm, k) pair. Any failure aborts the whole run.
pub fn run_experiment(cfg: &ExperimentConfig) -> BenchResult<Vec<ResultRow>> {
    cfg.validate()?;
    let ds = build_dataset(cfg)?;
    let functions = sample_family(cfg, ds.dim())?;
    run_on(cfg, &ds, &functions)
}

/// As [`run_experiment`] with the dataset and family supplied.
pub fn run_on(
    cfg: &ExperimentConfig,
    ds: &Dataset64,
    functions: &[UtilityFunction<f64>],
) -> BenchResult<Vec<ResultRow>> {
    let d = ds.dim();
    let evaluator = FamilyEvaluator::new(ds, functions)
        .map_err(|e| BenchError::run("preparing evaluation", e))?;
    let label = cfg.dataset.label();
    let opts = SelectOptions::from(cfg);
    let mut rows = Vec::with_capacity(cfg.algorithms.len() * cfg.ks.len());
    for &algorithm in &cfg.algorithms {
        for &k in &cfg.ks {
            let context = || format!("{algorithm} with k = {k}");
            let t = compute_t(k, d).map_err(|e| BenchError::run(context(), e))?;
            let started = Instant::now();
            let answer =
                select(algorithm, ds, k, &opts).map_err(|e| BenchError::run(context(), e))?;
            let select_time = started.elapsed();
            let started = Instant::now();
            let report = evaluator
                .report(answer.ids())
                .map_err(|e| BenchError::run(context(), e))?;
            let eval_time = started.elapsed();
            let bound = if ds.is_normalized() {
                Some(
                    family_bound(cfg.family, functions, k, d)
                        .map_err(|e| BenchError::run(context(), e))?,
                )
            } else {
                None
            };
            rows.push(ResultRow {
                dataset: label.clone(),
                algorithm,
                n: ds.len(),
                d,
                k,
                t,
                family: cfg.family,
                b: cfg.ces_b,
                num_functions: functions.len(),
                seed: cfg.seed,
                max_rr: report.max_ratio,
                argmax_function: report.argmax_function,
                bound,
                select: select_time,
                eval: eval_time,
            });
        }
    }
    Ok(rows)
}
