//! Matrix elements of the squeeze operator between Laguerre functions.

use super::{QuantumNumber, SqueezeParameter};
use crate::error::Result;
use crate::quad::{integrate_interval, Estimate, QuadratureSpec};
use crate::specfun::chi;

fn overlap_spec(m: QuantumNumber, n: QuantumNumber) -> (QuadratureSpec, f64) {
    let cutoff = 80.0 + 4.0 * (m + n) as f64;
    let spec = QuadratureSpec::smooth_decaying()
        .with_tail_cutoff(cutoff)
        .with_tolerance(1e-14)
        .with_rel_tol(1e-13);
    (spec, cutoff)
}

/// `int_0^inf chi_m(y') chi_n(e^(-lambda) y') dy'`.
pub fn overlap_bare(
    m: QuantumNumber,
    n: QuantumNumber,
    lambda: SqueezeParameter,
) -> Result<Estimate<f64>> {
    let eps = lambda.contraction();
    let (spec, cutoff) = overlap_spec(m, n);
    integrate_interval(|y: f64| chi(m, y) * chi(n, eps * y), 0.0, cutoff, &spec)
}

/// `<m| S_1 |n> = e^(-lambda/2) int_0^inf chi_m(y') chi_n(e^(-lambda) y') dy'`.
pub fn overlap_s1(m: QuantumNumber, n: QuantumNumber, lambda: SqueezeParameter) -> Result<f64> {
    Ok((-0.5 * lambda.lambda).exp() * overlap_bare(m, n, lambda)?.value)
}

/// The bare overlap from the monomial expansions of both Laguerre
/// polynomials and `int_0^inf y^k e^(-p y) dy = k! / p^(k+1)`.
/// Cancellation limits it to small `m + n`.
pub fn overlap_bare_closed(m: QuantumNumber, n: QuantumNumber, lambda: SqueezeParameter) -> f64 {
    let eps = lambda.contraction();
    let p = 0.5 * (1.0 + eps);
    let binom = |a: usize, b: usize| -> f64 {
        (0..b).fold(1.0, |acc, i| acc * (a - i) as f64 / (i + 1) as f64)
    };
    let mut sum = 0.0;
    for j in 0..=m {
        for k in 0..=n {
            let sign = if (j + k) % 2 == 0 { 1.0 } else { -1.0 };
            // (k + j)! / (j! k!) = binom(k + j, j)
            sum += sign * binom(m, j) * binom(n, k) * binom(k + j, j) * eps.powi(k as i32)
                / p.powi((k + j + 1) as i32);
        }
    }
    sum
}
