//! Slow reference computations for the test suite.
//!
//! Each oracle uses a different algorithm from the module it checks: the
//! raw alternating series instead of the Hasse series, Simpson instead of
//! Gauss–Legendre, finite differences instead of closed forms.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::Scalar;
use crate::specfun::{chi, SpectralParameter};
use crate::waveform::phi_s;

/// A partial sum with the size of its last correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaiveSum {
    pub value: Complex64,
    pub error_estimate: f64,
}

/// `sum_{m < terms} (-1)^m (m+1)^(-s)` with the last two partial sums
/// averaged once.
pub fn eta_naive(s: SpectralParameter, terms: usize) -> Result<NaiveSum> {
    if !(s.sigma > 0.0) {
        return Err(Error::Domain(format!(
            "the alternating series diverges for Re(s) = {}",
            s.sigma
        )));
    }
    if terms < 4 || !terms.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "terms = {terms} must be even and at least 4"
        )));
    }
    let z = s.as_complex();
    let term = |m: usize| {
        let v = (-z * ((m + 1) as f64).ln()).exp();
        if m.is_multiple_of(2) {
            v
        } else {
            -v
        }
    };
    // Neumaier-compensated partial sums; keep the last three.
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    let mut last = [Complex64::new(0.0, 0.0); 3];
    for m in 0..terms {
        let a = term(m);
        let next = sum + a;
        comp.re += neumaier(sum.re, a.re, next.re);
        comp.im += neumaier(sum.im, a.im, next.im);
        sum = next;
        last = [last[1], last[2], sum + comp];
    }
    let avg = 0.5 * (last[1] + last[2]);
    let prev = 0.5 * (last[0] + last[1]);
    Ok(NaiveSum {
        value: avg,
        error_estimate: 2.0 * (avg - prev).norm(),
    })
}

fn neumaier(sum: f64, a: f64, next: f64) -> f64 {
    if sum.abs() >= a.abs() {
        (sum - next) + a
    } else {
        (a - next) + sum
    }
}

/// Default finite-difference step for [`apply_number_operator`].
pub const NUMBER_OPERATOR_STEP: f64 = 1e-4;

/// `(N chi_n)(y) / chi_n(y)` with `N = -(y p^2 + p^2 y)/2 + y/4 - 1/2`,
/// `p = -i d/dy`, from central differences and one Richardson step.
pub fn apply_number_operator(n: usize, y: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) || !(y > 2.0 * h) {
        return Err(Error::Domain(format!("need y > 2h > 0, got y = {y}, h = {h}")));
    }
    let value = chi(n, y);
    if value.abs() < 1e-6 {
        return Err(Error::NearNode { n, y, value });
    }
    let apply = |h: f64| -> Result<f64> {
        let (lo, hi) = (chi(n, y - h), chi(n, y + h));
        let d1 = (hi - lo) / (2.0 * h);
        let d2 = (hi - 2.0 * value + lo) / (h * h);
        // (y chi)'' = y chi'' + 2 chi'
        Ok(-0.5 * (2.0 * y * d2 + 2.0 * d1) + (0.25 * y - 0.5) * value)
    };
    let coarse = apply(h)?;
    let fine = apply(0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0 / value)
}

/// Default finite-difference step for [`apply_bk_operator`].
pub fn default_bk_step(s: SpectralParameter, x: f64) -> f64 {
    1e-4 * x / (1.0 + s.as_complex().norm())
}

/// `(H phi_s)(x) / phi_s(x)` with `H = (x p + p x)/2 = -i (x d/dx + 1/2)`,
/// the derivative taken by central differences and one Richardson step.
pub fn apply_bk_operator(s: SpectralParameter, x: f64, h: f64) -> Result<Complex64> {
    if !(h > 0.0) || !(x > 2.0 * h) {
        return Err(Error::Domain(format!("need x > 2h > 0, got x = {x}, h = {h}")));
    }
    let value = phi_s(x, s)?;
    let slope = |h: f64| -> Result<Complex64> {
        Ok((phi_s(x + h, s)? - phi_s(x - h, s)?) / (2.0 * h))
    };
    let ratio = |d: Complex64| -Complex64::i() * (x * d / value + 0.5);
    let coarse = ratio(slope(h)?);
    let fine = ratio(slope(0.5 * h)?);
    if (fine - coarse).norm() > 1e-5 {
        return Err(Error::StepTooLarge((fine - coarse).norm()));
    }
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Composite Simpson rule on `[a, b]`; each panel has its own midpoint.
pub fn quad_naive<T, F>(f: F, a: f64, b: f64, panels: usize) -> T
where
    T: Scalar,
    F: Fn(f64) -> T,
{
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut sum = T::zero();
    let mut left = f(a);
    for p in 0..panels {
        let x0 = a + p as f64 * h;
        let x1 = if p + 1 == panels { b } else { x0 + h };
        let right = f(x1);
        sum = sum + (left + f(0.5 * (x0 + x1)) * 4.0 + right) * ((x1 - x0) / 6.0);
        left = right;
    }
    sum
}
