//! Mehler kernel of the Laguerre functions.

use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::specfun::{ln_bessel_i0, TruncationPolicy};

/// A truncated series with its tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncated {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

fn check_t(t: f64) -> Result<()> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::Domain(format!("Mehler kernel needs 0 <= t < 1, got {t}")));
    }
    Ok(())
}

/// `sum_m chi_m(y) chi_m(yp) t^m` in closed form,
/// `exp(-(y + yp)(1 + t) / (2(1 - t))) I0(2 sqrt(y yp t) / (1 - t)) / (1 - t)`,
/// assembled in log space.
pub fn mehler_closed(y: f64, yp: f64, t: f64) -> Result<f64> {
    check_t(t)?;
    if !(y >= 0.0 && yp >= 0.0) {
        return Err(Error::Domain(format!("Mehler kernel needs y, y' >= 0, got {y}, {yp}")));
    }
    let one_minus = 1.0 - t;
    let z = 2.0 * (y * yp * t).sqrt() / one_minus;
    let log = -0.5 * (y + yp) * (1.0 + t) / one_minus - one_minus.ln() + ln_bessel_i0(z)?;
    Ok(log.exp())
}

/// Partial sums of the Mehler series, stopped once the envelope bound
/// `t^(M+1) / (1 - t)` on the tail (from `|chi_m| <= 1`) meets the policy.
///
/// The sum can be many orders of magnitude below its largest terms, so
/// the Laguerre recurrences and the sum run in double-double arithmetic.
pub fn mehler_series(y: f64, yp: f64, t: f64, policy: &TruncationPolicy) -> Result<Truncated> {
    check_t(t)?;
    policy.validate()?;
    let damping = (-0.5 * (y + yp)).exp();
    let one = TwoFloat::from(1.0);
    // Laguerre recurrences for both arguments in lockstep
    let (mut a0, mut a1) = (one, one - y);
    let (mut b0, mut b1) = (one, one - yp);
    let mut sum = TwoFloat::from(0.0);
    let mut power = one;
    for m in 0..policy.max_terms {
        sum += a0 * b0 * power;
        power *= t;
        let value = f64::from(sum) * damping;
        let tail = f64::from(power) / (1.0 - t);
        if tail <= policy.threshold(value.abs()) {
            return Ok(Truncated {
                value,
                tail_bound: tail,
                terms: m + 1,
            });
        }
        let k = m as f64;
        let a2 = (a1 * (2.0 * k + 3.0 - y) - a0 * (k + 1.0)) / (k + 2.0);
        let b2 = (b1 * (2.0 * k + 3.0 - yp) - b0 * (k + 1.0)) / (k + 2.0);
        (a0, a1) = (a1, a2);
        (b0, b1) = (b1, b2);
    }
    Err(Error::TruncationNotConverged {
        estimate: f64::from(power) / (1.0 - t),
        terms: policy.max_terms,
    })
}
