use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// Projective plane curves, `c d^2 H^(2 d_K / d) (log H)^kappa`.
    Curve,
    /// Affine curves, `c d^2 H^(1/d) (log H)^kappa`.
    AffineCurve,
    /// Affine hypersurfaces in `A^n` over `Q`, `c d^2 H^(n-2+1/d) (log H)^kappa`.
    AffineHypersurface,
    DimGrowthProj,
    DimGrowthAff,
    PilaK,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundSpec {
    pub theorem: Theorem,
    pub c: f64,
    pub kappa: u32,
    pub d_k: u32,
}

impl BoundSpec {
    pub fn new(theorem: Theorem) -> Self {
        let kappa = if theorem == Theorem::Curve { 12 } else { 1 };
        BoundSpec { theorem, c: 1.0, kappa, d_k: 1 }
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    pub fn with_kappa(mut self, kappa: u32) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn with_d_k(mut self, d_k: u32) -> Self {
        self.d_k = d_k;
        self
    }
}

/// The bound of `spec` for degree `d` and height `h`. `n` is the ambient
/// dimension: `P^n` for `DimGrowthProj`, `A^n` for the affine statements; it
/// is ignored for curves.
pub fn bound_value(spec: &BoundSpec, d: u32, h: f64, n: u32) -> Result<f64> {
    if !(h > 2.0) {
        return Err(Error::Precondition(format!("H = {h} must exceed 2")));
    }
    if d < 1 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    let unsupported = |why: &str| Err(Error::Unsupported(format!("{:?} with d = {d}, n = {n}: {why}", spec.theorem)));
    let df = d as f64;
    let dk = spec.d_k as f64;
    let dim_x = n as f64 - 1.0;
    let cube = 2.0 / 3f64.sqrt();
    let (d2, exponent) = match spec.theorem {
        Theorem::Curve => (true, 2.0 * dk / df),
        Theorem::AffineCurve => {
            if d < 2 {
                return unsupported("affine curves need d > 1");
            }
            (true, 1.0 / df)
        }
        Theorem::AffineHypersurface => {
            if n < 2 {
                return unsupported("needs n > 1");
            }
            (true, n as f64 - 2.0 + 1.0 / df)
        }
        Theorem::DimGrowthProj => {
            if n < 2 {
                return unsupported("needs n > 1");
            }
            match d {
                3 => (false, dk * (dim_x - 1.0 + cube)),
                4.. => (true, dk * dim_x),
                _ => return unsupported("dimension growth needs d >= 3"),
            }
        }
        Theorem::DimGrowthAff => {
            if n < 3 {
                return unsupported("needs n > 2");
            }
            match d {
                3 => (false, dim_x - 2.0 + cube),
                4.. => (true, dim_x - 1.0),
                _ => return unsupported("dimension growth needs d >= 3"),
            }
        }
        Theorem::PilaK => {
            if n < 2 {
                return unsupported("needs n > 1");
            }
            (true, dim_x - 1.0 + 1.0 / df)
        }
    };
    let lead = if d2 { df * df } else { 1.0 };
    Ok(spec.c * lead * h.powf(exponent) * h.ln().powi(spec.kappa as i32))
}
