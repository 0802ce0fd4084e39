use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kregret::bounds::bound_report;
use kregret::datagen::{
    gen_anticorrelated, gen_circle_lowerbound, load_csv, load_dump, write_dataset,
};
use kregret::utility::{FamilyEvaluator, FamilyKind, FamilySpec};
use kregret::{normalize, Dataset64};
use kregret_bench::config::parse_k_list;
use kregret_bench::experiment::run_experiment;
use kregret_bench::{
    select, write_csv, Algorithm, BenchError, BenchResult, RawConfig, SelectOptions, THREADS_ENV,
};

#[derive(Parser)]
#[command(
    name = "kregret",
    version,
    about = "k-regret subset selection under multiplicative utilities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic dataset as `id,c0,..` CSV.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
        /// Output file; stdout when omitted.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Run one selector and print the chosen ids with provenance.
    Select {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value = "minvar")]
        algorithm: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        inc: Option<usize>,
        #[arg(long, default_value_t = 11)]
        itr_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Maximum regret ratio of an id list over a sampled family.
    Evaluate {
        #[command(flatten)]
        data: DataArgs,
        /// Comma-separated point ids.
        #[arg(long)]
        ids: String,
        #[arg(long, default_value = "muf")]
        family: String,
        #[arg(long, default_value_t = 10_000)]
        num_functions: usize,
        /// Fixed CES exponent.
        #[arg(long)]
        ces_b: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print theoretical bounds for a (k, d) grid as CSV.
    Bounds {
        /// k values: list, `lo..hi` or `lo..hi:step`.
        #[arg(long)]
        k: String,
        #[arg(long, default_value = "2")]
        d: String,
        /// CES exponents, comma-separated.
        #[arg(long, default_value = "0.5")]
        b: String,
    },
    /// Run a full experiment from a config file and write the result CSV.
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// `key=value` overrides applied after the file.
        #[arg(long = "set")]
        overrides: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    Anticorrelated {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Circle {
        #[arg(long)]
        m: usize,
    },
}

#[derive(clap::Args)]
struct DataArgs {
    /// Dataset CSV. Without `--columns` the `id,c0,..` layout written by
    /// `generate` is expected.
    #[arg(long)]
    data: PathBuf,
    /// Zero-based columns to read from an arbitrary CSV.
    #[arg(long)]
    columns: Option<String>,
    /// Keep raw values instead of normalizing into (1, 2].
    #[arg(long)]
    raw: bool,
}

fn config_error(field: &str, message: impl Into<String>) -> BenchError {
    BenchError::Config {
        field: field.into(),
        message: message.into(),
    }
}

fn parse_list<V: std::str::FromStr>(field: &str, s: &str) -> BenchResult<Vec<V>>
where
    V::Err: std::fmt::Display,
{
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|e| config_error(field, format!("`{t}`: {e}")))
        })
        .collect()
}

fn load_data(args: &DataArgs) -> BenchResult<Dataset64> {
    let ds = match &args.columns {
        Some(cols) => {
            let columns: Vec<usize> = parse_list("columns", cols)?;
            let loaded = load_csv(&args.data, &columns)
                .map_err(|e| BenchError::run("loading dataset", e))?;
            if loaded.dropped > 0 {
                eprintln!(
                    "dropped {} rows with missing or non-positive values",
                    loaded.dropped
                );
            }
            loaded.dataset
        }
        None => load_dump(&args.data).map_err(|e| BenchError::run("loading dataset", e))?,
    };
    Ok(if args.raw || ds.is_normalized() {
        ds
    } else {
        normalize(&ds)
    })
}

fn output(path: Option<&Path>) -> BenchResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn configure_threads() -> BenchResult<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|e| config_error(THREADS_ENV, format!("`{value}`: {e}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| config_error(THREADS_ENV, e.to_string()))
}

fn run(cli: Cli) -> BenchResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Generate { kind, out } => {
            let ds: Dataset64 = match kind {
                GenerateKind::Anticorrelated { n, d, seed } => gen_anticorrelated(n, d, seed),
                GenerateKind::Circle { m } => gen_circle_lowerbound(m),
            }
            .map_err(|e| match e {
                kregret::Error::EmptyDataset
                | kregret::Error::DimensionTooSmall(_)
                | kregret::Error::CircleTooSmall(_) => config_error("generate", e.to_string()),
                e => BenchError::run("generating dataset", e),
            })?;
            write_dataset(&ds, output(out.as_deref())?)
                .map_err(|e| BenchError::run("writing dataset", e))?;
        }
        Command::Select {
            data,
            algorithm,
            k,
            inc,
            itr_max,
            seed,
        } => {
            let algorithm: Algorithm = algorithm
                .parse()
                .map_err(|m: String| config_error("algorithm", m))?;
            let ds = load_data(&data)?;
            let opts = SelectOptions { inc, itr_max, seed };
            let answer = select(algorithm, &ds, k, &opts)
                .map_err(|e| BenchError::run(format!("{algorithm} with k = {k}"), e))?;
            let mut out = output(None)?;
            writeln!(out, "# {algorithm} k={k} t={}", answer.t_base)?;
            writeln!(out, "rank,id,provenance")?;
            for (rank, (id, prov)) in answer.iter().enumerate() {
                writeln!(out, "{rank},{id},{prov}")?;
            }
            out.flush()?;
        }
        Command::Evaluate {
            data,
            ids,
            family,
            num_functions,
            ces_b,
            seed,
        } => {
            let ids: Vec<usize> = parse_list("ids", &ids)?;
            let kind: FamilyKind = family
                .parse()
                .map_err(|e: kregret::Error| config_error("family", e.to_string()))?;
            let mut spec = FamilySpec::new(kind, num_functions);
            spec.ces_b = ces_b;
            let ds = load_data(&data)?;
            let functions = spec
                .sample::<f64>(ds.dim(), seed)
                .map_err(|e| config_error("family", e.to_string()))?;
            let report = FamilyEvaluator::new(&ds, &functions)
                .and_then(|ev| ev.report(&ids))
                .map_err(|e| BenchError::run("evaluating subset", e))?;
            let mut out = output(None)?;
            writeln!(out, "max_ratio={}", report.max_ratio)?;
            writeln!(out, "max_ratio_percent={:.4}", report.max_ratio * 100.0)?;
            writeln!(out, "argmax_function={}", report.argmax_function)?;
            writeln!(
                out,
                "argmax_alpha={:?}",
                functions[report.argmax_function].alpha()
            )?;
            if let Some(b) = functions[report.argmax_function].exponent() {
                writeln!(out, "argmax_b={b}")?;
            }
            writeln!(out, "gain_subset={}", report.gain_subset)?;
            writeln!(out, "gain_full={}", report.gain_full)?;
            out.flush()?;
        }
        Command::Bounds { k, d, b } => {
            let ks = parse_k_list(&k).map_err(|m| config_error("k", m))?;
            let ds: Vec<usize> = parse_list("d", &d)?;
            let bs: Vec<f64> = parse_list("b", &b)?;
            let mut out = output(None)?;
            let ces_cols: Vec<String> = bs.iter().map(|b| format!("ces_upper_b{b}")).collect();
            writeln!(
                out,
                "k,d,t,muf_upper,{},muf_lower_scale",
                ces_cols.join(",")
            )?;
            for &d in &ds {
                for &k in &ks {
                    let r = bound_report(k, d, &bs)
                        .map_err(|e| config_error("bounds", e.to_string()))?;
                    let ces: Vec<String> = r.ces_upper.iter().map(|(_, v)| v.to_string()).collect();
                    writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        r.k,
                        r.d,
                        r.t,
                        r.muf_upper,
                        ces.join(","),
                        r.muf_lower_scale
                    )?;
                }
            }
            out.flush()?;
        }
        Command::Bench {
            config,
            overrides,
            out,
        } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| config_error("config", format!("{}: {e}", config.display())))?;
            let mut raw = RawConfig::parse(&text)?;
            for pair in &overrides {
                raw.set_pair(pair)?;
            }
            let cfg = raw.build()?;
            let rows = run_experiment(&cfg)?;
            write_csv(&rows, output(out.as_deref())?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
