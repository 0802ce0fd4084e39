//! Per-dimension interval construction.
//!
//! All strategies work on the points sorted ascending along one dimension
//! (stable, ties by id) and return contiguous index ranges of that order.
//! A point belongs to exactly one interval by its sorted position, so points
//! sharing a boundary coordinate are never assigned twice.

use std::ops::Range;

use crate::dataset::{Dataset, PointId};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PartitionStrategy {
    /// Count-balanced intervals under a width cap (the MinVar partition).
    #[default]
    FindBreakpoints,
    /// Equal-width intervals over the domain.
    EquiWidth,
    /// Smallest common width whose greedy cover needs at most `t` intervals.
    MinWidth,
}

/// One interval: positions `start..end` of the sorted order.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval<T> {
    pub start: usize,
    pub end: usize,
    /// Smallest and largest member coordinate; `None` when empty.
    pub bounds: Option<(T, T)>,
}

impl<T: Scalar> Interval<T> {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }

    pub fn width(&self) -> T {
        self.bounds.map_or(T::zero(), |(lo, hi)| hi - lo)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSet<T> {
    pub dim: usize,
    pub intervals: Vec<Interval<T>>,
    /// Final slack above `ceil(n / t)` (always 0 for the width-only strategies).
    pub delta_used: usize,
    /// `(top - floor) / t` for the domain the set was built on.
    pub width_cap: T,
    order: Vec<PointId>,
}

impl<T: Scalar> IntervalSet<T> {
    pub fn t(&self) -> usize {
        self.intervals.len()
    }

    /// Point ids in the sorted order the index ranges refer to.
    pub fn order(&self) -> &[PointId] {
        &self.order
    }

    /// Interval index of every point, indexed by point id.
    pub fn assignment(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.order.len()];
        for (j, iv) in self.intervals.iter().enumerate() {
            for &id in &self.order[iv.range()] {
                out[id] = j;
            }
        }
        out
    }
}

/// One dimension of a dataset sorted ascending, ties broken by id.
#[derive(Debug, Clone)]
pub struct SortedDim<T> {
    pub dim: usize,
    pub order: Vec<PointId>,
    pub values: Vec<T>,
}

impl<T: Scalar> SortedDim<T> {
    pub fn new(ds: &Dataset<T>, dim: usize) -> Self {
        // Coordinates are positive and finite, so their f64 bit patterns sort
        // like the values. Packing `bits << 64 | id` into one integer gives
        // value order with ties broken by id, as a stable sort would.
        let mut keys: Vec<u128> = (0..ds.len())
            .map(|id| {
                let bits = ds
                    .coord(id, dim)
                    .to_f64()
                    .expect("finite coordinate")
                    .to_bits();
                (u128::from(bits) << 64) | id as u128
            })
            .collect();
        keys.sort_unstable();
        let order = keys.iter().map(|&k| k as u64 as PointId).collect();
        let values = keys
            .iter()
            .map(|&k| T::lit(f64::from_bits((k >> 64) as u64)))
            .collect();
        Self { dim, order, values }
    }

    fn len(&self) -> usize {
        self.values.len()
    }
}

/// Domain `(floor, top]` of dimension `i`: floor is 1 on normalized data and
/// the smallest coordinate otherwise; top is the largest coordinate.
pub fn domain<T: Scalar>(ds: &Dataset<T>, i: usize) -> (T, T) {
    let floor = if ds.is_normalized() {
        T::one()
    } else {
        ds.dim_min()[i]
    };
    (floor, ds.dim_max()[i])
}

/// `max(1, ceil(0.0001 * n))`.
pub fn default_inc(n: usize) -> usize {
    n.div_ceil(10_000).max(1)
}

fn check_args<T: Scalar>(ds: &Dataset<T>, t: usize, i: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::ZeroIntervals);
    }
    if i >= ds.dim() {
        return Err(Error::DimensionOutOfRange {
            index: i,
            d: ds.dim(),
        });
    }
    Ok(())
}

/// FindBreakpoints on normalized data.
///
/// Each interval starts at the first uncovered sorted position `lo` and ends
/// at the largest `hi <= lo + ceil(n/t) - 1 + delta` whose coordinate is
/// within `(c_max - 1) / t` of the coordinate at `lo`. If `t` intervals leave
/// points uncovered, `delta` grows by `inc` and the pass restarts.
pub fn find_breakpoints<T: Scalar>(
    ds: &Dataset<T>,
    t: usize,
    i: usize,
    inc: usize,
) -> Result<IntervalSet<T>> {
    if !ds.is_normalized() {
        return Err(Error::NotNormalized);
    }
    check_args(ds, t, i)?;
    let (floor, top) = domain(ds, i);
    find_breakpoints_sorted(&SortedDim::new(ds, i), t, inc, floor, top)
}

pub fn find_breakpoints_sorted<T: Scalar>(
    sorted: &SortedDim<T>,
    t: usize,
    inc: usize,
    floor: T,
    top: T,
) -> Result<IntervalSet<T>> {
    if t == 0 {
        return Err(Error::ZeroIntervals);
    }
    if inc == 0 {
        return Err(Error::ZeroIncrement);
    }
    let v = &sorted.values;
    let n = sorted.len();
    let per = n.div_ceil(t);
    let cap = (top - floor) / T::from_count(t);
    let mut delta = 0usize;
    loop {
        let mut intervals = Vec::with_capacity(t);
        let mut lo = 0usize;
        for _ in 0..t {
            if lo >= n {
                intervals.push(Interval {
                    start: n,
                    end: n,
                    bounds: None,
                });
                continue;
            }
            let hi_cap = (lo + per - 1).saturating_add(delta).min(n - 1);
            let base = v[lo];
            let hi = lo + v[lo..=hi_cap].partition_point(|&x| x - base <= cap) - 1;
            intervals.push(Interval {
                start: lo,
                end: hi + 1,
                bounds: Some((base, v[hi])),
            });
            lo = hi + 1;
        }
        if lo >= n {
            return Ok(IntervalSet {
                dim: sorted.dim,
                intervals,
                delta_used: delta,
                width_cap: cap,
                order: sorted.order.clone(),
            });
        }
        if delta >= n {
            return Err(Error::NoCover(sorted.dim));
        }
        delta += inc;
    }
}

/// Equal-width intervals `(floor + j*w, floor + (j+1)*w]`, `w = (top - floor) / t`.
/// A coordinate on a breakpoint goes to the lower interval.
pub fn equiwidth_breakpoints<T: Scalar>(
    ds: &Dataset<T>,
    t: usize,
    i: usize,
) -> Result<IntervalSet<T>> {
    check_args(ds, t, i)?;
    let (floor, top) = domain(ds, i);
    equiwidth_sorted(&SortedDim::new(ds, i), t, floor, top)
}

pub fn equiwidth_sorted<T: Scalar>(
    sorted: &SortedDim<T>,
    t: usize,
    floor: T,
    top: T,
) -> Result<IntervalSet<T>> {
    if t == 0 {
        return Err(Error::ZeroIntervals);
    }
    let v = &sorted.values;
    let n = sorted.len();
    let cap = (top - floor) / T::from_count(t);
    let mut intervals = Vec::with_capacity(t);
    let mut start = 0;
    for j in 0..t {
        let end = if j + 1 == t {
            n
        } else {
            let edge = floor + cap * T::from_count(j + 1);
            v.partition_point(|&x| x <= edge).max(start)
        };
        intervals.push(make_interval(v, start, end));
        start = end;
    }
    Ok(IntervalSet {
        dim: sorted.dim,
        intervals,
        delta_used: 0,
        width_cap: cap,
        order: sorted.order.clone(),
    })
}

/// Greedy cover with intervals of width `w`, each starting at the first
/// uncovered point. Returns the cut positions if at most `t` intervals suffice.
fn greedy_cover<T: Scalar>(v: &[T], w: T, t: usize) -> Option<Vec<usize>> {
    let mut ends = Vec::with_capacity(t);
    let mut lo = 0;
    while lo < v.len() {
        if ends.len() == t {
            return None;
        }
        let base = v[lo];
        lo += v[lo..].partition_point(|&x| x - base <= w);
        ends.push(lo);
    }
    Some(ends)
}

/// Smallest width (to 1e-9) such that at most `t` greedy intervals cover all
/// points; gaps between intervals are skipped. Unused intervals are empty.
pub fn minwidth_breakpoints<T: Scalar>(
    ds: &Dataset<T>,
    t: usize,
    i: usize,
) -> Result<IntervalSet<T>> {
    check_args(ds, t, i)?;
    let (floor, top) = domain(ds, i);
    minwidth_sorted(&SortedDim::new(ds, i), t, floor, top)
}

pub fn minwidth_sorted<T: Scalar>(
    sorted: &SortedDim<T>,
    t: usize,
    floor: T,
    top: T,
) -> Result<IntervalSet<T>> {
    if t == 0 {
        return Err(Error::ZeroIntervals);
    }
    let v = &sorted.values;
    let n = sorted.len();
    let span = top - floor;
    let cap = span / T::from_count(t);
    let tol = T::lit(1e-9);

    let mut lo = T::zero();
    let mut hi = if greedy_cover(v, cap, t).is_some() {
        cap
    } else {
        span
    };
    if greedy_cover(v, lo, t).is_some() {
        hi = lo;
    }
    while hi - lo > tol {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if greedy_cover(v, mid, t).is_some() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let ends = greedy_cover(v, hi, t).ok_or(Error::NoCover(sorted.dim))?;
    let mut intervals = Vec::with_capacity(t);
    let mut start = 0;
    for &end in &ends {
        intervals.push(make_interval(v, start, end));
        start = end;
    }
    while intervals.len() < t {
        intervals.push(make_interval(v, n, n));
    }
    Ok(IntervalSet {
        dim: sorted.dim,
        intervals,
        delta_used: 0,
        width_cap: cap,
        order: sorted.order.clone(),
    })
}

fn make_interval<T: Scalar>(v: &[T], start: usize, end: usize) -> Interval<T> {
    Interval {
        start,
        end,
        bounds: (start < end).then(|| (v[start], v[end - 1])),
    }
}

/// Dispatches to the given strategy on a pre-sorted dimension.
pub fn partition_sorted<T: Scalar>(
    strategy: PartitionStrategy,
    sorted: &SortedDim<T>,
    t: usize,
    inc: usize,
    floor: T,
    top: T,
) -> Result<IntervalSet<T>> {
    match strategy {
        PartitionStrategy::FindBreakpoints => find_breakpoints_sorted(sorted, t, inc, floor, top),
        PartitionStrategy::EquiWidth => equiwidth_sorted(sorted, t, floor, top),
        PartitionStrategy::MinWidth => minwidth_sorted(sorted, t, floor, top),
    }
}
