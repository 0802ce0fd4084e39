use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Utility function families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Muf,
    CobbDouglas,
    Ces,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Muf => "muf",
            FamilyKind::CobbDouglas => "cobb-douglas",
            FamilyKind::Ces => "ces",
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "muf" => Ok(FamilyKind::Muf),
            "cobb-douglas" | "cd" => Ok(FamilyKind::CobbDouglas),
            "ces" => Ok(FamilyKind::Ces),
            other => Err(Error::InvalidFunction(format!("unknown family `{other}`"))),
        }
    }
}

impl std::fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A monotone utility function over strictly positive points.
///
/// * MUF: `prod c_j^alpha_j`, with `sum alpha <= 1`.
/// * Cobb-Douglas: `A * prod c_j^alpha_j`.
/// * CES: `A * (sum alpha_j c_j^rho)^(gamma / rho)`. The simplified form has
///   `gamma = 1` and `rho = b` in (0, 1).
#[derive(Debug, Clone, PartialEq)]
pub enum UtilityFunction<T> {
    Muf {
        alpha: Vec<T>,
    },
    CobbDouglas {
        scale: T,
        alpha: Vec<T>,
    },
    Ces {
        scale: T,
        alpha: Vec<T>,
        rho: T,
        gamma: T,
    },
}

fn check_weights<T: Scalar>(alpha: &[T]) -> Result<()> {
    if alpha.is_empty() {
        return Err(Error::InvalidFunction("no weights".into()));
    }
    if alpha.iter().any(|a| !(a.is_finite() && *a >= T::zero())) {
        return Err(Error::InvalidFunction(
            "weights must be finite and non-negative".into(),
        ));
    }
    Ok(())
}

fn check_scale<T: Scalar>(scale: T) -> Result<()> {
    if scale.is_finite() && scale > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidFunction("scale A must be positive".into()))
    }
}

impl<T: Scalar> UtilityFunction<T> {
    pub fn muf(alpha: Vec<T>) -> Result<Self> {
        check_weights(&alpha)?;
        let sum: T = alpha.iter().copied().sum();
        let slack = T::epsilon() * T::from_count(4 * alpha.len());
        if sum > T::one() + slack {
            return Err(Error::InvalidFunction(format!(
                "MUF weights sum to {sum} > 1"
            )));
        }
        Ok(Self::Muf { alpha })
    }

    pub fn cobb_douglas(scale: T, alpha: Vec<T>) -> Result<Self> {
        check_weights(&alpha)?;
        check_scale(scale)?;
        Ok(Self::CobbDouglas { scale, alpha })
    }

    /// Simplified CES with exponent `b` in (0, 1).
    pub fn ces(scale: T, alpha: Vec<T>, b: T) -> Result<Self> {
        if !(b > T::zero() && b < T::one()) {
            return Err(Error::InvalidExponent(b.to_f64().unwrap_or(f64::NAN)));
        }
        Self::ces_general(scale, alpha, b, T::one())
    }

    /// General CES: `rho < 1`, `rho != 0`, `gamma > 0`.
    pub fn ces_general(scale: T, alpha: Vec<T>, rho: T, gamma: T) -> Result<Self> {
        check_weights(&alpha)?;
        check_scale(scale)?;
        if !(rho.is_finite() && rho < T::one() && rho != T::zero()) {
            return Err(Error::InvalidExponent(rho.to_f64().unwrap_or(f64::NAN)));
        }
        if !(gamma.is_finite() && gamma > T::zero()) {
            return Err(Error::InvalidFunction("gamma must be positive".into()));
        }
        if alpha.iter().all(|a| a.is_zero()) {
            return Err(Error::InvalidFunction("CES needs a positive weight".into()));
        }
        Ok(Self::Ces {
            scale,
            alpha,
            rho,
            gamma,
        })
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            Self::Muf { .. } => FamilyKind::Muf,
            Self::CobbDouglas { .. } => FamilyKind::CobbDouglas,
            Self::Ces { .. } => FamilyKind::Ces,
        }
    }

    pub fn alpha(&self) -> &[T] {
        match self {
            Self::Muf { alpha } | Self::CobbDouglas { alpha, .. } | Self::Ces { alpha, .. } => {
                alpha
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.alpha().len()
    }

    pub fn scale(&self) -> T {
        match self {
            Self::Muf { .. } => T::one(),
            Self::CobbDouglas { scale, .. } | Self::Ces { scale, .. } => *scale,
        }
    }

    /// CES exponent, `None` for the product forms.
    pub fn exponent(&self) -> Option<T> {
        match self {
            Self::Ces { rho, .. } => Some(*rho),
            _ => None,
        }
    }

    /// Copy of the function with `A = 1`; regret ratios are unaffected.
    pub fn unscaled(&self) -> Self {
        match self.clone() {
            Self::CobbDouglas { alpha, .. } => Self::CobbDouglas {
                scale: T::one(),
                alpha,
            },
            Self::Ces {
                alpha, rho, gamma, ..
            } => Self::Ces {
                scale: T::one(),
                alpha,
                rho,
                gamma,
            },
            f => f,
        }
    }

    fn check_point(&self, p: &[T]) -> Result<()> {
        if p.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: p.len(),
            });
        }
        if let Some(dim) = p.iter().position(|c| !(c.is_finite() && *c > T::zero())) {
            return Err(Error::NonPositiveCoordinate { point: 0, dim });
        }
        Ok(())
    }

    /// Natural log of the utility, from precomputed `ln c_j` values.
    #[inline]
    pub(crate) fn log_utility_from_logs(&self, ln_coords: &[T]) -> T {
        match self {
            Self::Muf { alpha } => dot(alpha, ln_coords),
            Self::CobbDouglas { scale, alpha } => scale.ln() + dot(alpha, ln_coords),
            Self::Ces {
                scale,
                alpha,
                rho,
                gamma,
            } => {
                let inner: T = alpha
                    .iter()
                    .zip(ln_coords)
                    .map(|(&a, &l)| a * (*rho * l).exp())
                    .sum();
                scale.ln() + *gamma / *rho * inner.ln()
            }
        }
    }

    pub fn log_utility(&self, p: &[T]) -> Result<T> {
        self.check_point(p)?;
        let logs: Vec<T> = p.iter().map(|c| c.ln()).collect();
        Ok(self.log_utility_from_logs(&logs))
    }
}

#[inline]
fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Utility of point `p`. Product forms are evaluated in log space.
pub fn eval<T: Scalar>(f: &UtilityFunction<T>, p: &[T]) -> Result<T> {
    f.check_point(p)?;
    match f {
        UtilityFunction::Ces {
            scale,
            alpha,
            rho,
            gamma,
        } => {
            let inner: T = alpha.iter().zip(p).map(|(&a, &c)| a * c.powf(*rho)).sum();
            Ok(*scale * inner.powf(*gamma / *rho))
        }
        _ => f.log_utility(p).map(T::exp),
    }
}

/// Direct product evaluation `A * prod c_j^alpha_j`, bypassing logs.
pub fn eval_direct<T: Scalar>(f: &UtilityFunction<T>, p: &[T]) -> Result<T> {
    f.check_point(p)?;
    match f {
        UtilityFunction::Ces { .. } => eval(f, p),
        _ => Ok(f
            .alpha()
            .iter()
            .zip(p)
            .fold(f.scale(), |acc, (&a, &c)| acc * c.powf(a))),
    }
}
