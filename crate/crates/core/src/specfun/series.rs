//! Euler (repeated-averaging) acceleration of alternating series.

use num_complex::Complex64;

use super::TruncationPolicy;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: Complex64,
    /// Change of the accelerated estimate when the last term is dropped.
    pub error_estimate: f64,
    pub terms: usize,
}

/// Sum `sum_m (-1)^m a(m)` from `policy.max_terms` terms.
///
/// Partial sums from index `max_terms / 4` onwards are averaged pairwise
/// until one value is left; the leading terms are summed directly.
pub fn alternating_sum<F>(a: F, policy: &TruncationPolicy) -> Result<SeriesSum>
where
    F: Fn(usize) -> Complex64,
{
    policy.validate()?;
    let n = policy.max_terms;
    let mut partial = Vec::with_capacity(n);
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..n {
        let term = a(m);
        if m % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        partial.push(acc);
    }
    let (value, error_estimate) = average_down(&partial[n / 4..]);
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::TruncationNotConverged {
            estimate: f64::INFINITY,
            terms: n,
        });
    }
    if error_estimate > policy.threshold(value.norm()) {
        return Err(Error::TruncationNotConverged {
            estimate: error_estimate,
            terms: n,
        });
    }
    Ok(SeriesSum {
        value,
        error_estimate,
        terms: n,
    })
}

/// Repeated averaging of a sequence of partial sums; returns the final
/// value and its distance to the estimate built from one fewer sum.
fn average_down(sums: &[Complex64]) -> (Complex64, f64) {
    let mut level = sums.to_vec();
    let mut previous_head = level[0];
    while level.len() > 1 {
        previous_head = level[0];
        for i in 0..level.len() - 1 {
            level[i] = 0.5 * (level[i] + level[i + 1]);
        }
        level.pop();
    }
    // `previous_head` is the leading entry one level up, which only uses
    // the first `len - 1` partial sums.
    (level[0], (level[0] - previous_head).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_two() {
        let policy = TruncationPolicy::default();
        let sum = alternating_sum(|m| Complex64::new(1.0 / (m as f64 + 1.0), 0.0), &policy).unwrap();
        assert!((sum.value.re - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn single_term() {
        let policy = TruncationPolicy::new(1, 1e-12, 0.0).unwrap();
        let sum = alternating_sum(|_| Complex64::new(3.0, -1.0), &policy).unwrap();
        assert_eq!(sum.value, Complex64::new(3.0, -1.0));
    }

    #[test]
    fn divergent_series_is_reported() {
        let policy = TruncationPolicy::new(16, 1e-12, 0.0).unwrap();
        let r = alternating_sum(|m| Complex64::new(4f64.powi(m as i32), 0.0), &policy);
        assert!(matches!(r, Err(Error::TruncationNotConverged { .. })));
    }
}
