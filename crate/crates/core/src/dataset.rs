//! Points, datasets, normalization and dominance.
//!
//! A [`Dataset`] stores its coordinates row-major in one flat buffer. Point
//! ids are dense indices assigned in construction order.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type PointId = usize;

/// An owned point with its id in the owning dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<T> {
    pub id: PointId,
    pub coords: Vec<T>,
}

/// Immutable collection of strictly positive d-dimensional points.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T> {
    coords: Vec<T>,
    n: usize,
    d: usize,
    dim_max: Vec<T>,
    dim_min: Vec<T>,
    normalized: bool,
}

impl<T: Scalar> Dataset<T> {
    /// Builds a dataset from row-major coordinates, `d` values per point.
    pub fn from_flat(d: usize, coords: Vec<T>) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        if coords.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if !coords.len().is_multiple_of(d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: coords.len() % d,
            });
        }
        let n = coords.len() / d;
        for (idx, &c) in coords.iter().enumerate() {
            if !(c.is_finite() && c > T::zero()) {
                return Err(Error::NonPositiveCoordinate {
                    point: idx / d,
                    dim: idx % d,
                });
            }
        }
        let mut dim_max = coords[..d].to_vec();
        let mut dim_min = coords[..d].to_vec();
        for row in coords.chunks_exact(d).skip(1) {
            for j in 0..d {
                dim_max[j] = dim_max[j].max(row[j]);
                dim_min[j] = dim_min[j].min(row[j]);
            }
        }
        Ok(Self {
            coords,
            n,
            d,
            dim_max,
            dim_min,
            normalized: false,
        })
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let first = rows.first().ok_or(Error::EmptyDataset)?;
        let d = first.as_ref().len();
        let mut coords = Vec::with_capacity(rows.len() * d);
        for row in rows {
            let row = row.as_ref();
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: row.len(),
                });
            }
            coords.extend_from_slice(row);
        }
        Self::from_flat(d, coords)
    }

    /// Marks an already-normalized dataset (e.g. one read back from a dump)
    /// as normalized after checking that it satisfies the (1, 2] contract.
    pub fn assume_normalized(mut self) -> Result<Self> {
        let two = T::lit(2.0);
        if self.dim_max.iter().any(|&m| m != two) || self.coords.iter().any(|&c| c <= T::one()) {
            return Err(Error::NotNormalized);
        }
        self.normalized = true;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn dim_max(&self) -> &[T] {
        &self.dim_max
    }

    pub fn dim_min(&self) -> &[T] {
        &self.dim_min
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Coordinates of point `id`. Panics if `id` is out of range.
    pub fn point(&self, id: PointId) -> &[T] {
        &self.coords[id * self.d..(id + 1) * self.d]
    }

    pub fn get(&self, id: PointId) -> Option<&[T]> {
        (id < self.n).then(|| self.point(id))
    }

    pub fn coord(&self, id: PointId, j: usize) -> T {
        self.coords[id * self.d + j]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, T> {
        self.coords.chunks_exact(self.d)
    }

    pub fn as_flat(&self) -> &[T] {
        &self.coords
    }

    pub fn to_points(&self) -> Vec<Point<T>> {
        self.rows()
            .enumerate()
            .map(|(id, c)| Point {
                id,
                coords: c.to_vec(),
            })
            .collect()
    }

    /// Lowest-id point with the largest coordinate in dimension `j`.
    pub fn argmax_dim(&self, j: usize) -> PointId {
        let mut best = 0;
        for id in 1..self.n {
            if self.coord(id, j) > self.coord(best, j) {
                best = id;
            }
        }
        best
    }

    pub(crate) fn check_ids(&self, ids: &[PointId]) -> Result<()> {
        match ids.iter().find(|&&id| id >= self.n) {
            Some(&id) => Err(Error::UnknownPoint(id)),
            None => Ok(()),
        }
    }
}

/// Maps every coordinate to `1 + c / max_j`, placing the data in (1, 2].
///
/// Not idempotent: normalize exactly once.
pub fn normalize<T: Scalar>(ds: &Dataset<T>) -> Dataset<T> {
    let d = ds.d;
    let coords = ds
        .coords
        .iter()
        .enumerate()
        .map(|(idx, &c)| T::one() + c / ds.dim_max[idx % d])
        .collect();
    let mut out = Dataset::from_flat(d, coords).expect("normalized coordinates stay positive");
    out.normalized = true;
    out
}

/// `p` dominates `q` when it is at least as large in every dimension.
/// A point dominates itself.
pub fn dominates<T: Scalar>(p: &[T], q: &[T]) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    Ok(dominates_unchecked(p, q))
}

#[inline]
pub(crate) fn dominates_unchecked<T: Scalar>(p: &[T], q: &[T]) -> bool {
    p.iter().zip(q).all(|(a, b)| a >= b)
}

#[inline]
pub(crate) fn strictly_dominates<T: Scalar>(p: &[T], q: &[T]) -> bool {
    dominates_unchecked(p, q) && p != q
}

/// Ids of points not strictly dominated by any other point, ascending.
/// Points equal in every coordinate are all kept.
pub fn skyline<T: Scalar>(ds: &Dataset<T>) -> Vec<PointId> {
    (0..ds.len())
        .filter(|&i| {
            let p = ds.point(i);
            !(0..ds.len()).any(|j| j != i && strictly_dominates(ds.point(j), p))
        })
        .collect()
}

/// Multiplies coordinate `j` of every point by `lambda`. The result is never
/// marked normalized.
pub fn scale_dimension<T: Scalar>(ds: &Dataset<T>, j: usize, lambda: T) -> Result<Dataset<T>> {
    if !(lambda > T::zero() && lambda.is_finite()) {
        return Err(Error::NonPositiveScale);
    }
    if j >= ds.d {
        return Err(Error::DimensionOutOfRange { index: j, d: ds.d });
    }
    let d = ds.d;
    let coords = ds
        .coords
        .iter()
        .enumerate()
        .map(|(idx, &c)| if idx % d == j { c * lambda } else { c })
        .collect();
    Dataset::from_flat(d, coords)
}
