//! Special functions used by the boundary formulas.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod eta;
mod gamma;
mod laguerre;
mod series;

pub use bessel::{bessel_i0, bessel_i0_scaled, ln_bessel_i0};
pub use eta::{eta, eta_factor, xi_aux, zeta};
pub use gamma::{gamma_complex, ln_gamma_complex};
pub use laguerre::{chi, chi_minus_one, laguerre, laguerre_minus_one};
pub use series::{alternating_sum, SeriesSum};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// The complex parameter `s = sigma + i t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParameter {
    pub sigma: f64,
    pub t: f64,
}

impl SpectralParameter {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !sigma.is_finite() || !t.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "s = {sigma} + {t}i is not finite"
            )));
        }
        Ok(Self { sigma, t })
    }

    /// A point `1/2 + i t` on the critical line.
    pub fn critical(t: f64) -> Self {
        Self { sigma: 0.5, t }
    }

    pub fn as_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }

    pub fn is_critical(self) -> bool {
        self.sigma == 0.5
    }

    /// Operations built on the eta integral need `sigma > 0`.
    pub(crate) fn require_right_half(self) -> Result<()> {
        if self.sigma > 0.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "Re(s) = {} must be positive for the eta integral representation",
                self.sigma
            )))
        }
    }
}

impl From<SpectralParameter> for Complex64 {
    fn from(s: SpectralParameter) -> Self {
        s.as_complex()
    }
}

impl From<Complex64> for SpectralParameter {
    fn from(z: Complex64) -> Self {
        Self {
            sigma: z.re,
            t: z.im,
        }
    }
}

/// Cutoffs and tolerances for every truncated infinite sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub max_terms: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl TruncationPolicy {
    pub fn new(max_terms: usize, abs_tol: f64, rel_tol: f64) -> Result<Self> {
        let policy = Self {
            max_terms,
            abs_tol,
            rel_tol,
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_terms == 0 {
            return Err(Error::InvalidParameter("max_terms must be at least 1".into()));
        }
        let ok = |x: f64| x.is_finite() && x >= 0.0;
        if !ok(self.abs_tol) || !ok(self.rel_tol) {
            return Err(Error::InvalidParameter(
                "tolerances must be finite and nonnegative".into(),
            ));
        }
        if self.abs_tol == 0.0 && self.rel_tol == 0.0 {
            return Err(Error::InvalidParameter(
                "at least one of abs_tol, rel_tol must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Threshold a correction must fall under, given the running value.
    pub fn threshold(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude)
    }
}

impl Default for TruncationPolicy {
    /// Alternating-series default: 64 terms, absolute tolerance `1e-12`.
    fn default() -> Self {
        Self {
            max_terms: 64,
            abs_tol: 1e-12,
            rel_tol: 0.0,
        }
    }
}
