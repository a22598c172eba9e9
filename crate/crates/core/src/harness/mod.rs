//! Bound formulas, log-log exponent fits over curve families and CSV
//! experiment reports, plus the frozen regression baselines.

pub mod baselines;
mod bound;
mod experiment;
mod family;
mod fit;

pub use bound::{bound_value, BoundSpec, Theorem};
pub use experiment::{
    parse_config, run_experiment, BoundsConfig, Count, ExperimentConfig, ExperimentReport, FamilyConfig, FamilyParams,
    FieldEntry, FitRecord, ReportRow, RunInfo,
};
pub use family::{EnumeratorHint, FamilySpec, ParamMap};
pub use fit::{fit_loglog, FitResult};

use crate::error::Result;
use crate::globalfield::GlobalField;

/// Counts the family member of degree `d` at each height and fits the
/// log-log slope.
pub fn exponent_fit<K: GlobalField>(
    k: &K,
    family: &FamilySpec,
    d: u32,
    heights: &[u64],
    budget: Option<u64>,
) -> Result<(FitResult, Vec<u64>)> {
    let counts = heights.iter().map(|&h| family.count(k, d, h, budget)).collect::<Result<Vec<_>>>()?;
    let hs: Vec<f64> = heights.iter().map(|&h| h as f64).collect();
    Ok((fit_loglog(&hs, &counts)?, counts))
}
