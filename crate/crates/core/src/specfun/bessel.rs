//! Modified Bessel function `I0` on the nonnegative real axis.
//!
//! The ascending series has only positive terms, so it is summed directly
//! up to `z = 30`; beyond that the Hankel asymptotic expansion of the
//! scaled function `exp(-z) I0(z)` converges to machine precision.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const SERIES_LIMIT: f64 = 30.0;
const LN_MAX: f64 = 709.782_712_893_384;

/// `I0(z) - 1` by the ascending series.
fn series_minus_one(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 0.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * k);
        sum += term;
        if term <= 1e-17 * sum {
            return sum;
        }
        k += 1.0;
    }
}

fn scaled_asymptotic(z: f64) -> f64 {
    // exp(-z) I0(z) ~ (2 pi z)^(-1/2) sum_k ((2k-1)!!)^2 / (k! (8z)^k)
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        let next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (k * 8.0 * z);
        if next >= term || next < 1e-17 * sum {
            break;
        }
        sum += next;
        term = next;
        k += 1.0;
    }
    sum / (2.0 * PI * z).sqrt()
}

fn check_argument(z: f64) -> Result<()> {
    if z.is_finite() && z >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("I0 argument {z} must be finite and nonnegative")))
    }
}

/// `exp(-z) I0(z)`, never overflows.
pub fn bessel_i0_scaled(z: f64) -> Result<f64> {
    check_argument(z)?;
    Ok(if z <= SERIES_LIMIT {
        (1.0 + series_minus_one(z)) * (-z).exp()
    } else {
        scaled_asymptotic(z)
    })
}

/// `ln I0(z)`, accurate for small `z` where `I0(z) - 1` is tiny.
pub fn ln_bessel_i0(z: f64) -> Result<f64> {
    check_argument(z)?;
    Ok(if z < 1.0 {
        series_minus_one(z).ln_1p()
    } else {
        z + bessel_i0_scaled(z)?.ln()
    })
}

/// `I0(z)`, with an overflow error once the value leaves double range.
pub fn bessel_i0(z: f64) -> Result<f64> {
    let ln = ln_bessel_i0(z)?;
    if ln > LN_MAX {
        return Err(Error::BesselOverflow(z));
    }
    Ok(if z <= SERIES_LIMIT {
        1.0 + series_minus_one(z)
    } else {
        ln.exp()
    })
}
