//! Answer-set construction: MinVar, RF-MinVar, and the baselines.
//!
//! Every argmax in this module breaks ties toward the lowest point id.

mod baseline;
mod minvar;

pub use baseline::{maxdom, random_subset};
pub use minvar::{minvar, minvar_with, rf_minvar, rf_minvar_with, MinVarConfig, RfConfig};

use crate::dataset::{dominates_unchecked, Dataset, PointId};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Why a member was added to an answer set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Largest coordinate in dimension `dim`.
    Apex { dim: usize },
    /// Largest last-dimension coordinate in grid cell `cell` of a `t`-interval grid.
    BucketRep { t: usize, cell: Vec<usize> },
    /// Deterministic padding with the lowest unused ids.
    LowestIdFill,
    /// Seeded random padding.
    RandomFill,
    /// Greedy dominance pick, with the number of newly covered points.
    MaxDom { covered: usize },
    /// Padding from the skyline or the whole dataset after the greedy picks.
    MaxDomFill,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Apex { dim } => write!(f, "apex({dim})"),
            Provenance::BucketRep { t, cell } => {
                let cell: Vec<String> = cell.iter().map(|c| c.to_string()).collect();
                write!(f, "bucket(t={t};{})", cell.join(":"))
            }
            Provenance::LowestIdFill => f.write_str("fill"),
            Provenance::RandomFill => f.write_str("random_fill"),
            Provenance::MaxDom { covered } => write!(f, "maxdom({covered})"),
            Provenance::MaxDomFill => f.write_str("maxdom_fill"),
        }
    }
}

/// Ordered selection of distinct point ids with per-member provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct AnswerSet {
    pub members: Vec<PointId>,
    pub provenance: Vec<Provenance>,
    /// `floor((k - d + 1)^(1 / (d - 1)))`, or 0 for selectors that do not use it.
    pub t_base: usize,
}

impl AnswerSet {
    pub fn ids(&self) -> &[PointId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (PointId, &Provenance)> {
        self.members.iter().copied().zip(&self.provenance)
    }
}

/// Insertion-ordered set of ids under construction.
#[derive(Debug, Clone)]
pub(crate) struct Selection {
    entries: Vec<(PointId, Provenance)>,
    present: Vec<bool>,
}

impl Selection {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            entries: Vec::new(),
            present: vec![false; n],
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.entries.len()
    }

    pub(crate) fn contains(&self, id: PointId) -> bool {
        self.present[id]
    }

    /// Adds `id` unless already present.
    pub(crate) fn insert(&mut self, id: PointId, why: Provenance) -> bool {
        if self.present[id] {
            return false;
        }
        self.present[id] = true;
        self.entries.push((id, why));
        true
    }

    pub(crate) fn eliminate_redundant<T: Scalar>(&mut self, ds: &Dataset<T>) {
        let entries = std::mem::take(&mut self.entries);
        self.entries = eliminate_by(entries, |a, b| {
            dominates_unchecked(ds.point(a.0), ds.point(b.0))
        });
        self.present.iter_mut().for_each(|p| *p = false);
        for (id, _) in &self.entries {
            self.present[*id] = true;
        }
    }

    pub(crate) fn fill_lowest(&mut self, k: usize) {
        let mut next = 0;
        while self.len() < k && next < self.present.len() {
            self.insert(next, Provenance::LowestIdFill);
            next += 1;
        }
    }

    pub(crate) fn finish(mut self, k: usize, t_base: usize) -> AnswerSet {
        self.entries.truncate(k);
        let (members, provenance) = self.entries.into_iter().unzip();
        AnswerSet {
            members,
            provenance,
            t_base,
        }
    }
}

/// Drops every item dominated by another kept item, preserving order.
///
/// Equal items keep the earliest. A new item that dominates kept items takes
/// the position of the earliest one it removes.
pub(crate) fn eliminate_by<I>(items: Vec<I>, dominates: impl Fn(&I, &I) -> bool) -> Vec<I> {
    let mut out: Vec<I> = Vec::with_capacity(items.len());
    for q in items {
        if out.iter().any(|r| dominates(r, &q)) {
            continue;
        }
        let mut slot = None;
        let mut kept = Vec::with_capacity(out.len() + 1);
        for r in out {
            if dominates(&q, &r) {
                slot.get_or_insert(kept.len());
            } else {
                kept.push(r);
            }
        }
        match slot {
            Some(pos) => kept.insert(pos, q),
            None => kept.push(q),
        }
        out = kept;
    }
    out
}

/// Removes members dominated by another member. See [`eliminate_by`] for the
/// ordering rules.
pub fn eliminate_redundant<T: Scalar>(
    ds: &Dataset<T>,
    members: &[PointId],
) -> Result<Vec<PointId>> {
    ds.check_ids(members)?;
    Ok(eliminate_by(members.to_vec(), |&a, &b| {
        dominates_unchecked(ds.point(a), ds.point(b))
    }))
}

fn checked_pow(base: usize, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

/// `t = floor((k - d + 1)^(1 / (d - 1)))`, exact in integers.
pub fn compute_t(k: usize, d: usize) -> Result<usize> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if k < d {
        return Err(Error::KBelowDimension { k, d });
    }
    let m = (k - d + 1) as u128;
    let e = d - 1;
    let mut t = ((m as f64).powf(1.0 / e as f64).floor() as usize).max(1);
    while checked_pow(t + 1, e).is_some_and(|p| p <= m) {
        t += 1;
    }
    while t > 1 && checked_pow(t, e).is_none_or(|p| p > m) {
        t -= 1;
    }
    Ok(t)
}

/// `t^(d-1)` as a u128, if it fits.
pub(crate) fn grid_size(t: usize, d: usize) -> Result<u128> {
    checked_pow(t, d - 1).ok_or(Error::GridOverflow { t, exp: d - 1 })
}

pub(crate) fn check_k<T: Scalar>(ds: &Dataset<T>, k: usize) -> Result<()> {
    if k < ds.dim() {
        return Err(Error::KBelowDimension { k, d: ds.dim() });
    }
    if k > ds.len() {
        return Err(Error::KAboveSize { k, n: ds.len() });
    }
    Ok(())
}
