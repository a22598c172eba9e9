//! Constants recorded once from the reference corpora and frozen.

/// `achieved_degree <= N k` over the plane-curve high-multiplicity corpus.
pub const HIGH_MULT_N: f64 = 1.0;
/// `achieved_degree <= c k^2` over the surface corpus in `P^3`.
pub const HIGH_MULT_C3: f64 = 0.6;
/// The constant `a` in `e >= s^2/(2 mu) - a s`.
pub const DET_A: f64 = 0.5;
/// Number of auxiliary polynomials per cover fixture.
pub const COVER_AUX_COUNTS: &[(&str, usize)] = &[("cusp26_Q_H20", 4), ("cusp30_Q_H20", 4), ("fermat26_Q_H20", 4), ("cusp26_F2t_H16", 3)];

pub fn cover_aux_baseline(name: &str) -> Option<usize> {
    COVER_AUX_COUNTS.iter().find(|(n, _)| *n == name).map(|(_, c)| *c)
}
