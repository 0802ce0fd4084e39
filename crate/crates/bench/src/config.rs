//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # comments start with '#'
//! dataset = anticorrelated
//! n = 10000
//! d = 3
//! algorithms = minvar, rf-minvar, maxdom
//! k = 10..34:2
//! family = muf
//! num_functions = 10000
//! seed = 7
//! ```
//!
//! Later assignments override earlier ones, which is how command-line
//! `--set key=value` overrides are applied.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use kregret::utility::FamilyKind;

use crate::error::{BenchError, BenchResult};

pub const DEFAULT_NUM_FUNCTIONS: usize = 10_000;
pub const DEFAULT_ITR_MAX: usize = 11;

#[derive(Debug, Clone, PartialEq)]
pub enum DatasetSpec {
    AntiCorrelated { n: usize, d: usize },
    Circle { m: usize },
    Csv { path: PathBuf, columns: Vec<usize> },
}

impl DatasetSpec {
    /// Short name used in the `dataset` result column.
    pub fn label(&self) -> String {
        match self {
            DatasetSpec::AntiCorrelated { .. } => "anticorrelated".into(),
            DatasetSpec::Circle { .. } => "circle".into(),
            DatasetSpec::Csv { path, .. } => path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "csv".into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    MinVar,
    RfMinVar,
    MaxDom,
    Random,
    MinVarEquiWidth,
    MinVarMinWidth,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::MinVar,
        Algorithm::RfMinVar,
        Algorithm::MaxDom,
        Algorithm::Random,
        Algorithm::MinVarEquiWidth,
        Algorithm::MinVarMinWidth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::MinVar => "minvar",
            Algorithm::RfMinVar => "rf-minvar",
            Algorithm::MaxDom => "maxdom",
            Algorithm::Random => "random",
            Algorithm::MinVarEquiWidth => "minvar-equiwidth",
            Algorithm::MinVarMinWidth => "minvar-minwidth",
        }
    }

    /// Whether the MinVar regret-ratio guarantee covers this selector.
    pub fn is_bounded(self) -> bool {
        !matches!(self, Algorithm::MaxDom | Algorithm::Random)
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dataset: DatasetSpec,
    pub algorithms: Vec<Algorithm>,
    pub ks: Vec<usize>,
    pub family: FamilyKind,
    /// Fixed CES exponent; `None` samples `b` per function.
    pub ces_b: Option<f64>,
    pub num_functions: usize,
    pub seed: u64,
    /// FindBreakpoints increment; `None` uses the size-based default.
    pub inc: Option<usize>,
    pub itr_max: usize,
    /// Normalize loaded CSV data into (1, 2]. Generated anti-correlated data
    /// is always normalized and the circle dataset never is.
    pub normalize: bool,
}

/// Raw key/value pairs in assignment order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawConfig {
    entries: Vec<(String, String)>,
}

const KEYS: [&str; 15] = [
    "dataset",
    "n",
    "d",
    "m",
    "path",
    "columns",
    "algorithms",
    "k",
    "family",
    "ces_b",
    "num_functions",
    "seed",
    "inc",
    "itr_max",
    "normalize",
];

impl RawConfig {
    pub fn parse(text: &str) -> BenchResult<Self> {
        let mut raw = RawConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| BenchError::Config {
                field: format!("line {}", lineno + 1),
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            raw.set(key.trim(), value.trim())?;
        }
        Ok(raw)
    }

    /// Applies a `key=value` override.
    pub fn set_pair(&mut self, pair: &str) -> BenchResult<()> {
        let (key, value) = pair.split_once('=').ok_or_else(|| BenchError::Config {
            field: pair.to_string(),
            message: "override must look like key=value".into(),
        })?;
        self.set(key.trim(), value.trim())
    }

    pub fn set(&mut self, key: &str, value: &str) -> BenchResult<()> {
        if !KEYS.contains(&key) {
            return Err(BenchError::Config {
                field: key.to_string(),
                message: "unknown key".into(),
            });
        }
        self.entries.push((key.to_string(), value.to_string()));
        Ok(())
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn required(&self, key: &str) -> BenchResult<&str> {
        self.get(key).ok_or_else(|| BenchError::Config {
            field: key.to_string(),
            message: "missing".into(),
        })
    }

    fn parsed<V: FromStr>(&self, key: &str) -> BenchResult<Option<V>>
    where
        V::Err: fmt::Display,
    {
        self.get(key)
            .map(|v| {
                v.parse::<V>().map_err(|e| BenchError::Config {
                    field: key.to_string(),
                    message: format!("`{v}`: {e}"),
                })
            })
            .transpose()
    }

    fn parsed_required<V: FromStr>(&self, key: &str) -> BenchResult<V>
    where
        V::Err: fmt::Display,
    {
        self.required(key)?;
        Ok(self.parsed(key)?.expect("present"))
    }

    pub fn build(&self) -> BenchResult<ExperimentConfig> {
        let dataset = match self.required("dataset")? {
            "anticorrelated" | "anti-correlated" => DatasetSpec::AntiCorrelated {
                n: self.parsed_required("n")?,
                d: self.parsed_required("d")?,
            },
            "circle" => DatasetSpec::Circle {
                m: self.parsed_required("m")?,
            },
            "csv" => DatasetSpec::Csv {
                path: PathBuf::from(self.required("path")?),
                columns: parse_usize_list(self.required("columns")?).map_err(|message| {
                    BenchError::Config {
                        field: "columns".into(),
                        message,
                    }
                })?,
            },
            other => {
                return Err(BenchError::Config {
                    field: "dataset".into(),
                    message: format!("unknown dataset `{other}` (anticorrelated | circle | csv)"),
                })
            }
        };

        let algorithms = self
            .required("algorithms")?
            .split(',')
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(Algorithm::from_str)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|message| BenchError::Config {
                field: "algorithms".into(),
                message,
            })?;
        let ks = parse_k_list(self.required("k")?).map_err(|message| BenchError::Config {
            field: "k".into(),
            message,
        })?;
        let family: FamilyKind = self.parsed("family")?.unwrap_or(FamilyKind::Muf);
        let ces_b: Option<f64> = self.parsed("ces_b")?;
        let cfg = ExperimentConfig {
            dataset,
            algorithms,
            ks,
            family,
            ces_b,
            num_functions: self
                .parsed("num_functions")?
                .unwrap_or(DEFAULT_NUM_FUNCTIONS),
            seed: self.parsed("seed")?.unwrap_or(0),
            inc: self.parsed("inc")?,
            itr_max: self.parsed("itr_max")?.unwrap_or(DEFAULT_ITR_MAX),
            normalize: self.parsed("normalize")?.unwrap_or(true),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl ExperimentConfig {
    pub fn from_text(text: &str) -> BenchResult<Self> {
        RawConfig::parse(text)?.build()
    }

    /// Checks everything that does not need the dataset loaded.
    pub fn validate(&self) -> BenchResult<()> {
        let bad = |field: &str, message: String| {
            Err(BenchError::Config {
                field: field.into(),
                message,
            })
        };
        if self.algorithms.is_empty() {
            return bad("algorithms", "empty list".into());
        }
        if self.ks.is_empty() {
            return bad("k", "empty list".into());
        }
        if self.num_functions == 0 {
            return bad("num_functions", "must be at least 1".into());
        }
        if self.itr_max == 0 {
            return bad("itr_max", "must be at least 1".into());
        }
        if self.inc == Some(0) {
            return bad("inc", "must be at least 1".into());
        }
        match self.ces_b {
            Some(b) if !(b > 0.0 && b < 1.0) => return bad("ces_b", format!("{b} not in (0, 1)")),
            Some(_) if self.family != FamilyKind::Ces => {
                return bad("ces_b", "only meaningful with family = ces".into())
            }
            _ => {}
        }
        match &self.dataset {
            DatasetSpec::AntiCorrelated { n, d } => {
                if *d < 2 {
                    return bad("d", "must be at least 2".into());
                }
                self.check_ks(*n, *d)?;
            }
            DatasetSpec::Circle { m } => {
                if *m < 2 {
                    return bad("m", "must be at least 2".into());
                }
                self.check_ks(*m, 2)?;
            }
            DatasetSpec::Csv { columns, .. } => {
                if columns.len() < 2 {
                    return bad("columns", "need at least two columns".into());
                }
                self.check_ks(usize::MAX, columns.len())?;
            }
        }
        Ok(())
    }

    /// Every `k` must satisfy `d <= k <= n`.
    pub fn check_ks(&self, n: usize, d: usize) -> BenchResult<()> {
        match self.ks.iter().find(|&&k| k < d || k > n) {
            Some(k) => Err(BenchError::Config {
                field: "k".into(),
                message: format!("k = {k} outside [{d}, {n}]"),
            }),
            None => Ok(()),
        }
    }
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| format!("`{t}`: {e}")))
        .collect()
}

/// Parses `10,20,34`, an inclusive range `10..34`, a stepped range
/// `10..34:2`, or a comma-separated mix.
pub fn parse_k_list(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let Some((lo, rest)) = item.split_once("..") else {
            out.push(
                item.parse::<usize>()
                    .map_err(|e| format!("`{item}`: {e}"))?,
            );
            continue;
        };
        let (hi, step) = rest.split_once(':').unwrap_or((rest, "1"));
        let num = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|e| format!("`{item}`: {e}"))
        };
        let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
        if step == 0 {
            return Err(format!("`{item}`: step must be positive"));
        }
        if lo > hi {
            return Err(format!("`{item}`: empty range"));
        }
        out.extend((lo..=hi).step_by(step));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_ranges() {
        assert_eq!(parse_k_list("10..34:2").unwrap().len(), 13);
        assert_eq!(parse_k_list("3, 5..7").unwrap(), vec![3, 5, 6, 7]);
        assert!(parse_k_list("5..3").is_err());
        assert!(parse_k_list("1..4:0").is_err());
        assert!(parse_k_list("x").is_err());
    }

    #[test]
    fn last_assignment_wins() {
        let mut raw =
            RawConfig::parse("dataset=circle\nm=100\nalgorithms=minvar\nk=4\nseed=1").unwrap();
        raw.set_pair("seed=9").unwrap();
        assert_eq!(raw.build().unwrap().seed, 9);
    }
}
