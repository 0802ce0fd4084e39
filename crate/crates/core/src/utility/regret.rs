use rayon::prelude::*;

use super::function::{eval, UtilityFunction};
use crate::dataset::{Dataset, PointId};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest utility over the points `ids` of `ds`.
pub fn gain<T: Scalar>(ds: &Dataset<T>, ids: &[PointId], f: &UtilityFunction<T>) -> Result<T> {
    if ids.is_empty() {
        return Err(Error::EmptySubset);
    }
    ds.check_ids(ids)?;
    let mut best = T::neg_infinity();
    for &id in ids {
        best = best.max(eval(f, ds.point(id))?);
    }
    Ok(best)
}

fn full_gain<T: Scalar>(ds: &Dataset<T>, f: &UtilityFunction<T>) -> Result<T> {
    let mut best = T::neg_infinity();
    for p in ds.rows() {
        best = best.max(eval(f, p)?);
    }
    Ok(best)
}

/// `gain(D, f) - gain(S, f)`.
pub fn regret<T: Scalar>(ds: &Dataset<T>, ids: &[PointId], f: &UtilityFunction<T>) -> Result<T> {
    let subset = gain(ds, ids, f)?;
    Ok(full_gain(ds, f)? - subset)
}

/// Regret relative to the full-dataset gain, in [0, 1).
pub fn regret_ratio<T: Scalar>(
    ds: &Dataset<T>,
    ids: &[PointId],
    f: &UtilityFunction<T>,
) -> Result<T> {
    let subset = gain(ds, ids, f)?;
    let full = full_gain(ds, f)?;
    Ok((full - subset) / full)
}

/// Empirical maximum regret ratio over a finite function family.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretReport<T> {
    pub per_function_ratio: Vec<T>,
    pub max_ratio: T,
    /// Lowest index attaining `max_ratio`.
    pub argmax_function: usize,
    /// Subset gain under the worst-case function.
    pub gain_subset: T,
    /// Full-dataset gain under the worst-case function.
    pub gain_full: T,
}

/// Precomputed full-dataset gains for one family, reusable across subsets.
///
/// Utilities are compared in log space: `ratio = 1 - exp(ln gain_S - ln gain_D)`.
#[derive(Debug, Clone)]
pub struct FamilyEvaluator<'a, T> {
    ds: &'a Dataset<T>,
    family: &'a [UtilityFunction<T>],
    ln_coords: Vec<T>,
    /// `(rho, c^rho)` for the CES exponent shared by the whole family, so
    /// each evaluation is a dot product instead of `d` exponentials.
    powers: Option<(T, Vec<T>)>,
    full_log_gain: Vec<T>,
}

impl<'a, T: Scalar> FamilyEvaluator<'a, T> {
    pub fn new(ds: &'a Dataset<T>, family: &'a [UtilityFunction<T>]) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if let Some(f) = family.iter().find(|f| f.dim() != ds.dim()) {
            return Err(Error::DimensionMismatch {
                expected: ds.dim(),
                got: f.dim(),
            });
        }
        let ln_coords: Vec<T> = ds.as_flat().iter().map(|c| c.ln()).collect();
        let powers = shared_positive_rho(family)
            .map(|rho| (rho, ds.as_flat().iter().map(|c| c.powf(rho)).collect()));
        let mut ev = Self {
            ds,
            family,
            ln_coords,
            powers,
            full_log_gain: Vec::new(),
        };
        let all: Vec<PointId> = (0..ds.len()).collect();
        ev.full_log_gain = family
            .par_iter()
            .map(|f| ev.subset_log_gain(f, &all))
            .collect();
        Ok(ev)
    }

    pub fn family(&self) -> &[UtilityFunction<T>] {
        self.family
    }

    fn subset_log_gain(&self, f: &UtilityFunction<T>, ids: &[PointId]) -> T {
        let d = self.ds.dim();
        if let (
            UtilityFunction::Ces {
                scale,
                alpha,
                rho,
                gamma,
            },
            Some((cached, pow)),
        ) = (f, &self.powers)
        {
            if rho == cached {
                // rho > 0, so the utility is increasing in the inner sum.
                let inner = ids
                    .iter()
                    .map(|&id| {
                        alpha
                            .iter()
                            .zip(&pow[id * d..(id + 1) * d])
                            .fold(T::zero(), |acc, (&a, &p)| acc + a * p)
                    })
                    .fold(T::neg_infinity(), T::max);
                return scale.ln() + *gamma / *rho * inner.ln();
            }
        }
        ids.iter()
            .map(|&id| f.log_utility_from_logs(&self.ln_coords[id * d..(id + 1) * d]))
            .fold(T::neg_infinity(), T::max)
    }

    pub fn report(&self, ids: &[PointId]) -> Result<RegretReport<T>> {
        if ids.is_empty() {
            return Err(Error::EmptySubset);
        }
        self.ds.check_ids(ids)?;
        let logs: Vec<T> = self
            .family
            .par_iter()
            .map(|f| self.subset_log_gain(f, ids))
            .collect();
        let per_function_ratio: Vec<T> = logs
            .iter()
            .zip(&self.full_log_gain)
            .map(|(&s, &full)| {
                let r = -(s - full).exp_m1();
                r.max(T::zero())
            })
            .collect();
        let mut argmax = 0;
        for (i, r) in per_function_ratio.iter().enumerate() {
            if *r > per_function_ratio[argmax] {
                argmax = i;
            }
        }
        Ok(RegretReport {
            max_ratio: per_function_ratio[argmax],
            argmax_function: argmax,
            gain_subset: logs[argmax].exp(),
            gain_full: self.full_log_gain[argmax].exp(),
            per_function_ratio,
        })
    }
}

/// The CES exponent shared by every function of `family`, if it is positive.
fn shared_positive_rho<T: Scalar>(family: &[UtilityFunction<T>]) -> Option<T> {
    let first = family.first()?.exponent()?;
    let shared = family.iter().all(|f| f.exponent() == Some(first));
    (shared && first > T::zero()).then_some(first)
}

/// Maximum regret ratio of `ids` over `family`; the argmax is the lowest
/// index attaining the maximum.
pub fn max_regret_ratio<T: Scalar>(
    ds: &Dataset<T>,
    ids: &[PointId],
    family: &[UtilityFunction<T>],
) -> Result<RegretReport<T>> {
    FamilyEvaluator::new(ds, family)?.report(ids)
}
