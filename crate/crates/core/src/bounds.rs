//! Closed-form regret-ratio bounds for MinVar answer sets.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::selector::compute_t;

/// `ln(1 + 1/t)`: upper bound on the maximum regret ratio of a MinVar answer
/// over MUFs with `sum alpha <= 1`, on data normalized into (1, 2].
pub fn muf_upper_bound<T: Scalar>(k: usize, d: usize) -> Result<T> {
    let t = T::from_count(compute_t(k, d)?);
    Ok((T::one() / t).ln_1p())
}

/// `(d-1)^(1/b) / (t + (d-1)^(1/b))`: upper bound for simplified CES
/// functions sharing exponent `b`.
pub fn ces_upper_bound<T: Scalar>(k: usize, d: usize, b: T) -> Result<T> {
    if !(b > T::zero() && b < T::one()) {
        return Err(Error::InvalidExponent(b.to_f64().unwrap_or(f64::NAN)));
    }
    let t = T::from_count(compute_t(k, d)?);
    let spread = T::from_count(d - 1).powf(T::one() / b);
    Ok(spread / (t + spread))
}

/// `pi^2 / (32 (k+1)^2)`, the leading term of the circle-construction lower
/// bound. Asymptotic only; finite-k checks should apply a safety factor.
pub fn muf_lower_bound_scale<T: Scalar>(k: usize) -> T {
    let k1 = T::from_count(k + 1);
    T::PI() * T::PI() / (T::lit(32.0) * k1 * k1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub k: usize,
    pub d: usize,
    pub t: usize,
    pub muf_upper: T,
    /// `(b, bound)` pairs in the order requested.
    pub ces_upper: Vec<(T, T)>,
    pub muf_lower_scale: T,
}

pub fn bound_report<T: Scalar>(k: usize, d: usize, bs: &[T]) -> Result<BoundReport<T>> {
    Ok(BoundReport {
        k,
        d,
        t: compute_t(k, d)?,
        muf_upper: muf_upper_bound(k, d)?,
        ces_upper: bs
            .iter()
            .map(|&b| ces_upper_bound(k, d, b).map(|v| (b, v)))
            .collect::<Result<_>>()?,
        muf_lower_scale: muf_lower_bound_scale(k),
    })
}
