//! Synthetic generators and CSV ingestion.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Shift added to generated coordinates so every value is strictly positive.
pub const POSITIVE_SHIFT: f64 = 1e-6;

/// Standard deviation of the plane value in [`gen_anticorrelated`]. A wider
/// spread (0.25 and up) lets the shared plane value dominate and produces
/// positively correlated dimensions.
pub const ANTI_SD: f64 = 0.05;

/// Anti-correlated points in the style of the skyline benchmark generator.
///
/// Each point starts at a plane value `v ~ N(0.5, ANTI_SD^2)` clamped to [0, 1]
/// in every dimension, then receives `d` balanced pairwise exchanges
/// `x_j += h, x_{j+1} -= h` with `h ~ U[-l, l]`, `l = min(v, 1 - v)`. Draws
/// that leave [0, 1] are rejected. Finally every coordinate is shifted by
/// [`POSITIVE_SHIFT`].
pub fn gen_anticorrelated<T: Scalar>(n: usize, d: usize, seed: u64) -> Result<Dataset<T>> {
    if n == 0 {
        return Err(Error::EmptyDataset);
    }
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::<f64>::new(0.5, ANTI_SD).expect("valid normal parameters");
    let mut coords = Vec::with_capacity(n * d);
    let mut x = vec![0.0f64; d];
    for _ in 0..n {
        loop {
            let v: f64 = normal.sample(&mut rng).clamp(0.0, 1.0);
            let l = v.min(1.0 - v);
            x.iter_mut().for_each(|c| *c = v);
            for j in 0..d {
                let h = if l > 0.0 {
                    rng.random_range(-l..=l)
                } else {
                    0.0
                };
                x[j] += h;
                x[(j + 1) % d] -= h;
            }
            if x.iter().all(|c| (0.0..=1.0).contains(c)) {
                break;
            }
        }
        coords.extend(x.iter().map(|&c| T::lit(c + POSITIVE_SHIFT)));
    }
    Dataset::from_flat(d, coords)
}

/// Points `(e^cos(theta), e^sin(theta))` at `theta_i = i * (pi/2) / m`,
/// `i = 1..=m`. The data lies in (1, e] and is not normalized.
pub fn gen_circle_lowerbound<T: Scalar>(m: usize) -> Result<Dataset<T>> {
    if m < 2 {
        return Err(Error::CircleTooSmall(m));
    }
    let step = T::FRAC_PI_2() / T::from_count(m);
    let mut coords = Vec::with_capacity(2 * m);
    for i in 1..=m {
        let theta = step * T::from_count(i);
        coords.push(theta.cos().exp());
        coords.push(theta.sin().exp());
    }
    Dataset::from_flat(2, coords)
}

/// A dataset read from CSV plus the number of rows rejected.
#[derive(Debug, Clone)]
pub struct Loaded<T> {
    pub dataset: Dataset<T>,
    pub dropped: usize,
}

fn parse_field<T: Scalar>(field: Option<&str>) -> Option<T> {
    let x: f64 = field?.trim().parse().ok()?;
    (x.is_finite() && x > 0.0).then(|| T::lit(x))
}

fn looks_like_header(record: &csv::StringRecord, columns: &[usize]) -> bool {
    columns.iter().any(|&c| match record.get(c).map(str::trim) {
        Some(s) if !s.is_empty() => s.parse::<f64>().is_err(),
        _ => false,
    })
}

/// Reads the selected zero-based `columns` from comma-separated input.
///
/// A first row with a non-empty, non-numeric selected field is treated as a
/// header. Rows with a missing, non-numeric or non-positive selected field
/// are dropped and counted.
pub fn read_csv<T: Scalar, R: Read>(
    reader: R,
    columns: &[usize],
    origin: &Path,
) -> Result<Loaded<T>> {
    if columns.is_empty() {
        return Err(Error::NoColumns);
    }
    let csv_err = |source| Error::Csv {
        path: origin.to_path_buf(),
        source,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut coords = Vec::new();
    let mut dropped = 0;
    for (row, record) in rdr.records().enumerate() {
        let record = record.map_err(csv_err)?;
        if row == 0 && looks_like_header(&record, columns) {
            continue;
        }
        let parsed: Option<Vec<T>> = columns
            .iter()
            .map(|&c| parse_field(record.get(c)))
            .collect();
        match parsed {
            Some(values) => coords.extend(values),
            None => dropped += 1,
        }
    }
    if coords.is_empty() {
        return Err(Error::NoRows {
            path: origin.to_path_buf(),
            dropped,
        });
    }
    Ok(Loaded {
        dataset: Dataset::from_flat(columns.len(), coords)?,
        dropped,
    })
}

pub fn load_csv<T: Scalar>(path: impl AsRef<Path>, columns: &[usize]) -> Result<Loaded<T>> {
    let path = path.as_ref();
    let file = File::open(path)?;
    read_csv(BufReader::new(file), columns, path)
}

/// Writes `id,c0,..,c{d-1}` with 17 significant digits per coordinate.
pub fn write_dataset<T: Scalar, W: Write>(ds: &Dataset<T>, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    let header: Vec<String> = (0..ds.dim()).map(|j| format!("c{j}")).collect();
    writeln!(out, "id,{}", header.join(","))?;
    for (id, row) in ds.rows().enumerate() {
        write!(out, "{id}")?;
        for c in row {
            write!(out, ",{:.16e}", c.to_f64().unwrap_or(f64::NAN))?;
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

pub fn dump_csv<T: Scalar>(ds: &Dataset<T>, path: impl AsRef<Path>) -> Result<()> {
    write_dataset(ds, File::create(path)?)
}

/// Reads a file written by [`dump_csv`], restoring the normalized flag when
/// the data satisfies it.
pub fn load_dump<T: Scalar>(path: impl AsRef<Path>) -> Result<Dataset<T>> {
    let path = path.as_ref();
    let mut rdr = csv::Reader::from_path(path).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })?;
    let d = rdr
        .headers()
        .map_err(|source| Error::Csv {
            path: path.to_path_buf(),
            source,
        })?
        .len()
        .saturating_sub(1);
    drop(rdr);
    let columns: Vec<usize> = (1..=d).collect();
    let loaded = load_csv(path, &columns)?;
    let ds = loaded.dataset;
    Ok(match ds.clone().assume_normalized() {
        Ok(norm) => norm,
        Err(_) => ds,
    })
}
