//! Random utility functions for empirical regret evaluation.
//!
//! Weights are drawn as `d` uniforms on [0, 1] divided by their sum, so every
//! sampled function has `sum alpha = 1` and `A = 1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::function::{FamilyKind, UtilityFunction};
use crate::scalar::Scalar;

/// Lower and upper end of the CES exponent range.
pub const CES_B_RANGE: (f64, f64) = (0.1, 0.9);

pub fn sample_simplex<T: Scalar, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<T> {
    loop {
        let draws: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
        let sum: f64 = draws.iter().sum();
        if sum > 0.0 {
            return draws.into_iter().map(|x| T::lit(x / sum)).collect();
        }
    }
}

pub fn sample_muf<T: Scalar, R: Rng + ?Sized>(d: usize, rng: &mut R) -> UtilityFunction<T> {
    UtilityFunction::Muf {
        alpha: sample_simplex(d, rng),
    }
}

pub fn sample_cobb_douglas<T: Scalar, R: Rng + ?Sized>(
    d: usize,
    rng: &mut R,
) -> UtilityFunction<T> {
    UtilityFunction::CobbDouglas {
        scale: T::one(),
        alpha: sample_simplex(d, rng),
    }
}

/// CES with `b ~ U[0.1, 0.9]`.
pub fn sample_ces<T: Scalar, R: Rng + ?Sized>(d: usize, rng: &mut R) -> UtilityFunction<T> {
    let alpha = sample_simplex(d, rng);
    let b = rng.random_range(CES_B_RANGE.0..=CES_B_RANGE.1);
    UtilityFunction::ces(T::one(), alpha, T::lit(b)).expect("b inside (0, 1)")
}

/// CES with a fixed exponent `b`.
pub fn sample_ces_with_b<T: Scalar, R: Rng + ?Sized>(
    d: usize,
    b: T,
    rng: &mut R,
) -> crate::Result<UtilityFunction<T>> {
    UtilityFunction::ces(T::one(), sample_simplex(d, rng), b)
}

/// Describes a sampled family: kind, size, and an optional fixed CES exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub count: usize,
    pub ces_b: Option<f64>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, count: usize) -> Self {
        Self {
            kind,
            count,
            ces_b: None,
        }
    }

    pub fn with_b(mut self, b: f64) -> Self {
        self.ces_b = Some(b);
        self
    }

    /// Draws the family from a ChaCha8 stream seeded with `seed`.
    pub fn sample<T: Scalar>(&self, d: usize, seed: u64) -> crate::Result<Vec<UtilityFunction<T>>> {
        if self.count == 0 {
            return Err(crate::Error::EmptyFamily);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..self.count)
            .map(|_| match (self.kind, self.ces_b) {
                (FamilyKind::Muf, _) => Ok(sample_muf(d, &mut rng)),
                (FamilyKind::CobbDouglas, _) => Ok(sample_cobb_douglas(d, &mut rng)),
                (FamilyKind::Ces, None) => Ok(sample_ces(d, &mut rng)),
                (FamilyKind::Ces, Some(b)) => sample_ces_with_b(d, T::lit(b), &mut rng),
            })
            .collect()
    }
}
