//! Utility functions and the gain / regret measures built on them.

mod function;
mod regret;
mod sample;

pub use function::{eval, eval_direct, FamilyKind, UtilityFunction};
pub use regret::{gain, max_regret_ratio, regret, regret_ratio, FamilyEvaluator, RegretReport};
pub use sample::{
    sample_ces, sample_ces_with_b, sample_cobb_douglas, sample_muf, sample_simplex, FamilySpec,
    CES_B_RANGE,
};
