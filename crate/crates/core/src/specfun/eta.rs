//! Dirichlet eta, Riemann zeta and the first-order boundary coefficient.
//!
//! Eta is summed with Hasse's globally convergent double series
//!
//! ```text
//! eta(s) = sum_{n>=0} 2^-(n+1) sum_{k=0}^{n} (-1)^k C(n,k) (k+1)^-s
//! ```
//!
//! which holds on the whole plane, so `eta(s - 1)` at `Re s = 1/2` needs no
//! functional equation.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_OUTER_TERMS: usize = 1200;

/// Dirichlet eta `sum (-1)^m (m+1)^-s`, continued to the whole plane.
pub fn eta(s: Complex64) -> Complex64 {
    if s == Complex64::new(0.0, 0.0) {
        return Complex64::new(0.5, 0.0);
    }
    // The outer terms stay O(1) until n ~ pi |t| / (2 ln 2), then decay
    // geometrically.
    let n_min = ((PI * s.im.abs() / 2.0 + 10.0) / LN_2).ceil() as usize;
    let mut powers: Vec<Complex64> = Vec::with_capacity(n_min + 64);
    // scaled[k] = C(n, k) / 2^(n+1)
    let mut scaled: Vec<f64> = Vec::with_capacity(n_min + 64);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    for n in 0..MAX_OUTER_TERMS {
        powers.push((-s * ((n + 1) as f64).ln()).exp());
        if n == 0 {
            scaled.push(0.5);
        } else {
            scaled.push(0.0);
            for k in (1..=n).rev() {
                scaled[k] = 0.5 * (scaled[k] + scaled[k - 1]);
            }
            scaled[0] *= 0.5;
        }
        let mut inner = Complex64::new(0.0, 0.0);
        for k in 0..=n {
            if k % 2 == 0 {
                inner += scaled[k] * powers[k];
            } else {
                inner -= scaled[k] * powers[k];
            }
        }
        sum += inner;
        if n >= n_min && inner.norm() <= 1e-17 * sum.norm().max(1.0) {
            quiet += 1;
            if quiet == 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    sum
}

/// The factor `1 - 2^(1-s)` relating eta to zeta.
pub fn eta_factor(s: Complex64) -> Complex64 {
    1.0 - ((1.0 - s) * LN_2).exp()
}

fn guarded_factor(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::ZetaPole);
    }
    let factor = eta_factor(s);
    if factor.norm() < 1e-13 {
        if (s - 1.0).norm() < 1e-12 {
            return Err(Error::ZetaPole);
        }
        return Err(Error::EtaFactorZero { re: s.re, im: s.im });
    }
    Ok(factor)
}

/// Riemann zeta as `eta(s) / (1 - 2^(1-s))`.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    let factor = guarded_factor(s)?;
    Ok(eta(s) / factor)
}

/// `zeta(s) - 2 (1 - 2^(2-s)) zeta(s-1) / (1 - 2^(1-s))`.
///
/// Since `(1 - 2^(2-s)) zeta(s-1) = eta(s-1)` this is
/// `(eta(s) - 2 eta(s-1)) / (1 - 2^(1-s))`, which is regular at `s = 2`
/// where the `zeta(s-1)` pole meets the vanishing prefactor.
pub fn xi_aux(s: Complex64) -> Result<Complex64> {
    let factor = guarded_factor(s)?;
    Ok((eta(s) - 2.0 * eta(s - 1.0)) / factor)
}
