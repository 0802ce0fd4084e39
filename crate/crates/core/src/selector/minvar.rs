use std::collections::BTreeMap;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_k, compute_t, grid_size, AnswerSet, Provenance, Selection};
use crate::dataset::{Dataset, PointId};
use crate::error::{Error, Result};
use crate::partition::{default_inc, domain, partition_sorted, PartitionStrategy, SortedDim};
use crate::scalar::Scalar;

/// Options shared by MinVar and RF-MinVar.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MinVarConfig {
    /// Slack step for FindBreakpoints; `None` means `max(1, ceil(0.0001 n))`.
    pub inc: Option<usize>,
    pub strategy: PartitionStrategy,
    /// Accept data outside (1, 2]. Interval widths are then capped relative
    /// to each dimension's observed minimum rather than 1.
    pub allow_raw: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RfConfig {
    pub base: MinVarConfig,
    pub itr_max: usize,
    /// Seed for the random fill.
    pub seed: u64,
}

impl Default for RfConfig {
    fn default() -> Self {
        Self {
            base: MinVarConfig::default(),
            itr_max: 11,
            seed: 0,
        }
    }
}

/// MinVar on normalized data.
pub fn minvar<T: Scalar>(ds: &Dataset<T>, k: usize, inc: usize) -> Result<AnswerSet> {
    minvar_with(
        ds,
        k,
        &MinVarConfig {
            inc: Some(inc),
            ..Default::default()
        },
    )
}

/// RF-MinVar on normalized data.
pub fn rf_minvar<T: Scalar>(
    ds: &Dataset<T>,
    k: usize,
    inc: usize,
    itr_max: usize,
    seed: u64,
) -> Result<AnswerSet> {
    rf_minvar_with(
        ds,
        k,
        &RfConfig {
            base: MinVarConfig {
                inc: Some(inc),
                ..Default::default()
            },
            itr_max,
            seed,
        },
    )
}

/// Sorted views of the first `d - 1` dimensions, built once per selection.
struct Grid<'a, T> {
    ds: &'a Dataset<T>,
    sorted: Vec<SortedDim<T>>,
    domains: Vec<(T, T)>,
    inc: usize,
    strategy: PartitionStrategy,
}

impl<'a, T: Scalar> Grid<'a, T> {
    fn new(ds: &'a Dataset<T>, k: usize, cfg: &MinVarConfig) -> Result<Self> {
        check_k(ds, k)?;
        if !ds.is_normalized() && !cfg.allow_raw {
            return Err(Error::NotNormalized);
        }
        let inc = cfg.inc.unwrap_or_else(|| default_inc(ds.len()));
        if inc == 0 {
            return Err(Error::ZeroIncrement);
        }
        let lead = ds.dim() - 1;
        Ok(Self {
            ds,
            sorted: (0..lead).map(|i| SortedDim::new(ds, i)).collect(),
            domains: (0..lead).map(|i| domain(ds, i)).collect(),
            inc,
            strategy: cfg.strategy,
        })
    }

    /// One representative per non-empty cell of the `t^(d-1)` grid: the point
    /// with the largest last coordinate. Cells are visited in lexicographic
    /// order with dimension 0 most significant.
    fn representatives(&self, t: usize) -> Result<Vec<(PointId, Vec<usize>)>> {
        let ds = self.ds;
        let n = ds.len();
        let last = ds.dim() - 1;
        let total = grid_size(t, ds.dim())?;
        let assignments = self
            .sorted
            .iter()
            .zip(&self.domains)
            .map(|(sorted, &(floor, top))| {
                partition_sorted(self.strategy, sorted, t, self.inc, floor, top)
                    .map(|set| set.assignment())
            })
            .collect::<Result<Vec<_>>>()?;
        let key_of = |id: PointId| -> u128 {
            assignments
                .iter()
                .fold(0u128, |key, a| key * t as u128 + a[id] as u128)
        };
        let better = |cand: PointId, cur: PointId| ds.coord(cand, last) > ds.coord(cur, last);

        let best: Vec<(u128, PointId)> = if total <= (4 * n as u128).max(1 << 16) {
            let mut cells: Vec<Option<PointId>> = vec![None; total as usize];
            for id in 0..n {
                let slot = &mut cells[key_of(id) as usize];
                match slot {
                    Some(cur) if !better(id, *cur) => {}
                    _ => *slot = Some(id),
                }
            }
            cells
                .into_iter()
                .enumerate()
                .filter_map(|(key, id)| id.map(|id| (key as u128, id)))
                .collect()
        } else {
            let mut cells: BTreeMap<u128, PointId> = BTreeMap::new();
            for id in 0..n {
                cells
                    .entry(key_of(id))
                    .and_modify(|cur| {
                        if better(id, *cur) {
                            *cur = id;
                        }
                    })
                    .or_insert(id);
            }
            cells.into_iter().collect()
        };

        Ok(best
            .into_iter()
            .map(|(mut key, id)| {
                let mut cell = vec![0; last];
                for slot in cell.iter_mut().rev() {
                    *slot = (key % t as u128) as usize;
                    key /= t as u128;
                }
                (id, cell)
            })
            .collect())
    }
}

fn add_apexes<T: Scalar>(ds: &Dataset<T>, sel: &mut Selection) {
    for dim in 0..ds.dim() - 1 {
        sel.insert(ds.argmax_dim(dim), Provenance::Apex { dim });
    }
}

/// MinVar: the apex of each of the first `d - 1` dimensions, then the
/// representative of every bucket of the `t^(d-1)` grid. Empty buckets and
/// repeated representatives are padded with the lowest unused ids.
pub fn minvar_with<T: Scalar>(ds: &Dataset<T>, k: usize, cfg: &MinVarConfig) -> Result<AnswerSet> {
    let grid = Grid::new(ds, k, cfg)?;
    let t = compute_t(k, ds.dim())?;
    let mut sel = Selection::new(ds.len());
    add_apexes(ds, &mut sel);
    for (id, cell) in grid.representatives(t)? {
        sel.insert(id, Provenance::BucketRep { t, cell });
    }
    sel.fill_lowest(k);
    Ok(sel.finish(k, t))
}

/// RF-MinVar: MinVar with dominated members removed after each pass and `t`
/// raised by one per pass until `k` members survive or `itr_max` passes ran.
/// Shortfall is filled with seeded random points; the first `k` are kept.
pub fn rf_minvar_with<T: Scalar>(ds: &Dataset<T>, k: usize, cfg: &RfConfig) -> Result<AnswerSet> {
    if cfg.itr_max == 0 {
        return Err(Error::ZeroIterations);
    }
    let grid = Grid::new(ds, k, &cfg.base)?;
    let t_base = compute_t(k, ds.dim())?;
    let mut sel = Selection::new(ds.len());
    add_apexes(ds, &mut sel);
    let mut itr = 0;
    while sel.len() < k && itr < cfg.itr_max {
        let t = t_base + itr;
        for (id, cell) in grid.representatives(t)? {
            sel.insert(id, Provenance::BucketRep { t, cell });
        }
        sel.eliminate_redundant(ds);
        itr += 1;
    }
    if sel.len() < k {
        let free: Vec<PointId> = (0..ds.len()).filter(|&id| !sel.contains(id)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for pick in index::sample(&mut rng, free.len(), k - sel.len()) {
            sel.insert(free[pick], Provenance::RandomFill);
        }
    }
    Ok(sel.finish(k, t_base))
}
