use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// `log count - (slope log H + intercept)` per height.
    pub residuals: Vec<f64>,
    /// Every count equal: the slope is reported as 0.
    pub degenerate: bool,
}

impl FitResult {
    pub fn slack(&self, target: f64) -> f64 {
        self.slope - target
    }
}

/// Ordinary least squares of `log count` against `log H`.
pub fn fit_loglog(heights: &[f64], counts: &[u64]) -> Result<FitResult> {
    if heights.len() != counts.len() {
        return Err(Error::DimensionMismatch(format!("{} heights, {} counts", heights.len(), counts.len())));
    }
    if heights.len() < 4 {
        return Err(Error::Precondition("a fit needs at least 4 heights".into()));
    }
    if counts.contains(&0) || heights.iter().any(|h| !(*h > 1.0)) {
        return Err(Error::Precondition("counts must be positive and heights above 1".into()));
    }
    let xs: Vec<f64> = heights.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|c| (*c as f64).ln()).collect();
    if counts.iter().all(|c| *c == counts[0]) {
        return Ok(FitResult { slope: 0.0, intercept: ys[0], residuals: vec![0.0; ys.len()], degenerate: true });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Precondition("heights must not all coincide".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = xs.iter().zip(&ys).map(|(x, y)| y - (slope * x + intercept)).collect();
    Ok(FitResult { slope, intercept, residuals, degenerate: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let hs = [10.0, 100.0, 1000.0, 10000.0];
        let cs: Vec<u64> = hs.iter().map(|h: &f64| (3.0 * h * h).round() as u64).collect();
        let f = fit_loglog(&hs, &cs).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-9);
        assert!((f.intercept.exp() - 3.0).abs() < 1e-6);
        assert!(f.residuals.iter().all(|r| r.abs() < 1e-9));
    }

    #[test]
    fn constant_counts_are_flagged() {
        let f = fit_loglog(&[4.0, 8.0, 16.0, 32.0], &[5, 5, 5, 5]).unwrap();
        assert!(f.degenerate);
        assert_eq!(f.slope, 0.0);
    }

    #[test]
    fn needs_four_positive_points() {
        assert!(fit_loglog(&[4.0, 8.0, 16.0], &[1, 2, 3]).is_err());
        assert!(fit_loglog(&[4.0, 8.0, 16.0, 32.0], &[1, 0, 3, 4]).is_err());
    }
}
