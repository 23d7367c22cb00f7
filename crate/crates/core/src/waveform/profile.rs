//! The full wave function and the confined one-dimensional profile.
//!
//! Both need the rotated eigenfunction `phi~_s`, of which only the value
//! at the origin is known in closed form. It enters through the
//! [`RotatedProfile`] trait.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{phi_s, varphi_zero, QuantumNumber, SqueezeParameter, Variant, WaveSample};
use super::overlap::overlap_bare;
use crate::error::{Error, Result};
use crate::quad::{integrate_singular_log, QuadratureSpec};
use crate::specfun::{alternating_sum, chi, gamma_complex, SeriesSum, SpectralParameter, TruncationPolicy};

/// Largest `lambda` for which `e^lambda y` is formed.
const LAMBDA_MAX: f64 = 25.0;

/// A model of the rotated eigenfunction `phi~_s`.
pub trait RotatedProfile {
    fn s(&self) -> SpectralParameter;
    /// Value at `x > 0`.
    fn eval(&self, x: f64) -> Result<Complex64>;
    /// Value at `x = 0`.
    fn at_zero(&self) -> Result<Complex64>;
}

/// `phi_s` itself for `x > 0`, with the closed-form origin value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiStandIn {
    pub s: SpectralParameter,
}

impl RotatedProfile for PhiStandIn {
    fn s(&self) -> SpectralParameter {
        self.s
    }

    fn eval(&self, x: f64) -> Result<Complex64> {
        phi_s(x, self.s)
    }

    fn at_zero(&self) -> Result<Complex64> {
        varphi_zero(self.s)
    }
}

/// `sum_m (i r)^m c_m(s) chi_m(x)` with
/// `c_m(s) = int_0^inf chi_m(x) x^(-s) dx / sqrt(2 pi)`, an Abel-damped
/// Laguerre expansion of the rotated eigenfunction.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelLaguerre {
    pub s: SpectralParameter,
    pub r: f64,
    /// `(i r)^m c_m(s)`.
    pub weighted: Vec<Complex64>,
}

impl AbelLaguerre {
    pub fn new(s: SpectralParameter, r: f64, terms: usize) -> Result<Self> {
        if !(0.0..1.0).contains(&r) || terms == 0 {
            return Err(Error::InvalidParameter(format!(
                "need 0 <= r < 1 and at least one term, got r = {r}, {terms} terms"
            )));
        }
        if !(s.sigma < 1.0) {
            return Err(Error::Domain(format!(
                "x^(-s) is not integrable at 0 for Re(s) = {}",
                s.sigma
            )));
        }
        let exponent = 1.0 - s.as_complex();
        let norm = (2.0 * PI).sqrt();
        let mut weighted = Vec::with_capacity(terms);
        let mut power = Complex64::new(1.0, 0.0);
        for m in 0..terms {
            let spec = QuadratureSpec::endpoint_singular()
                .with_tail_cutoff(80.0 + 4.0 * m as f64)
                .with_tolerance(1e-13);
            let c = integrate_singular_log(|x| Complex64::new(chi(m, x) / norm, 0.0), exponent, &spec)?;
            weighted.push(power * c.value);
            power *= Complex64::new(0.0, r);
        }
        Ok(Self { s, r, weighted })
    }

    /// Generating-function value of the full Abel-damped sum at the origin,
    /// `Gamma(1-s) ((1+w) / (2(1-w)))^(s-1) / ((1-w) sqrt(2 pi))`, `w = i r`.
    pub fn generating_at_zero(&self) -> Result<Complex64> {
        let z = self.s.as_complex();
        let w = Complex64::new(0.0, self.r);
        let base = (1.0 + w) / (2.0 * (1.0 - w));
        Ok(gamma_complex(1.0 - z)? * ((z - 1.0) * base.ln()).exp()
            / ((1.0 - w) * (2.0 * PI).sqrt()))
    }
}

impl RotatedProfile for AbelLaguerre {
    fn s(&self) -> SpectralParameter {
        self.s
    }

    fn eval(&self, x: f64) -> Result<Complex64> {
        if !(x >= 0.0) {
            return Err(Error::Domain(format!("profile needs x >= 0, got {x}")));
        }
        Ok(self
            .weighted
            .iter()
            .enumerate()
            .map(|(m, c)| c * chi(m, x))
            .sum())
    }

    fn at_zero(&self) -> Result<Complex64> {
        Ok(self.weighted.iter().sum())
    }
}

fn profile_at<P: RotatedProfile + ?Sized>(profile: &P, x: f64) -> Result<Complex64> {
    if x == 0.0 {
        profile.at_zero()
    } else {
        profile.eval(x)
    }
}

fn sign(m: usize) -> f64 {
    if m.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `Psi(x, y)` with the `phi_s` stand-in for the rotated eigenfunction.
pub fn psi_full(
    x: f64,
    y: f64,
    s: SpectralParameter,
    n: QuantumNumber,
    lambda: SqueezeParameter,
    policy: &TruncationPolicy,
) -> Result<WaveSample> {
    psi_full_with(&PhiStandIn { s }, x, y, n, lambda, policy)
}

/// `Psi(x, y) = sum_m B_m chi_m(e^lambda y) (m+1)^(-s) phi~_s(x / (m+1))`
/// with `B_m = int chi_n(e^-lambda y') chi_m(y') dy'`, summed with Euler
/// acceleration (`B_m` alternates in sign for large `lambda`). At `x = 0`
/// the profile's origin value is used.
pub fn psi_full_with<P: RotatedProfile + ?Sized>(
    profile: &P,
    x: f64,
    y: f64,
    n: QuantumNumber,
    lambda: SqueezeParameter,
    policy: &TruncationPolicy,
) -> Result<WaveSample> {
    if !(x >= 0.0 && y >= 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain(format!("need finite x, y >= 0, got {x}, {y}")));
    }
    if lambda.lambda > LAMBDA_MAX && y > 0.0 {
        return Err(Error::OverflowGuard(format!(
            "e^lambda y with lambda = {} exceeds the supported range",
            lambda.lambda
        )));
    }
    policy.validate()?;
    let s = profile.s();
    let z = s.as_complex();
    let big_y = lambda.lambda.exp() * y;
    let mut terms = Vec::with_capacity(policy.max_terms);
    for m in 0..policy.max_terms {
        let c = chi(m, big_y);
        let term = if c == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            let k = (m + 1) as f64;
            let b = overlap_bare(m, n, lambda)?.value;
            b * c * (-z * k.ln()).exp() * profile_at(profile, x / k)?
        };
        terms.push(sign(m) * term);
    }
    let sum = alternating_sum(|m| terms[m], policy)?;
    Ok(WaveSample {
        x,
        y,
        s,
        n,
        lambda,
        value: sum.value,
        variant: Variant::Original,
        error: sum.error_estimate,
    })
}

/// `Phi_s(x) = 2 sum_m (-1)^m (m+1)^(-s) phi~_s(x / (m+1))`.
pub fn phi_confined<P: RotatedProfile + ?Sized>(
    profile: &P,
    x: f64,
    policy: &TruncationPolicy,
) -> Result<SeriesSum> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("phi_confined needs x > 0, got {x}")));
    }
    let z = profile.s().as_complex();
    let values: Vec<Complex64> = (0..policy.max_terms)
        .map(|m| {
            let k = (m + 1) as f64;
            Ok(2.0 * (-z * k.ln()).exp() * profile.eval(x / k)?)
        })
        .collect::<Result<_>>()?;
    alternating_sum(|m| values[m], policy)
}

/// `Phi_s(0+) = 2 phi~_s(0) sum_m (-1)^m (m+1)^(-s)`, the series summed
/// with Euler acceleration.
pub fn phi_confined_boundary<P: RotatedProfile + ?Sized>(
    profile: &P,
    policy: &TruncationPolicy,
) -> Result<SeriesSum> {
    let z = profile.s().as_complex();
    let origin = profile.at_zero()?;
    let mut sum = alternating_sum(|m| (-z * ((m + 1) as f64).ln()).exp(), policy)?;
    sum.value *= 2.0 * origin;
    sum.error_estimate *= 2.0 * origin.norm();
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveform::psi_boundary_limit;

    fn lam(l: f64) -> SqueezeParameter {
        SqueezeParameter::new(l).unwrap()
    }

    #[test]
    fn unsqueezed_ground_state() {
        let s = SpectralParameter::critical(3.0);
        let policy = TruncationPolicy::default();
        for &(x, y) in &[(1.0, 0.0), (0.4, 1.5), (2.5, 3.0)] {
            let v = psi_full(x, y, s, 0, lam(0.0), &policy).unwrap();
            let want = (-0.5 * y).exp() * phi_s(x, s).unwrap();
            assert!((v.value - want).norm() < 1e-9, "x {x} y {y}: {}", v.value);
        }
    }

    #[test]
    fn suppressed_at_large_y() {
        let s = SpectralParameter::critical(5.0);
        let v = psi_full(1.0, 5.0, s, 0, lam(10.0), &TruncationPolicy::default()).unwrap();
        assert!(v.value.norm() <= 1e-8);
    }

    #[test]
    fn generating_function_route() {
        // the Mehler generating function summed in Abel's sense gives
        // chi_n(0) = 1 for the stand-in profile at y = 0
        let s = SpectralParameter::critical(5.0);
        let v = psi_full(1.0, 0.0, s, 0, lam(8.0), &TruncationPolicy::default()).unwrap();
        let want = phi_s(1.0, s).unwrap();
        assert!((v.value - want).norm() < 1e-6, "{}", v.value);
    }

    #[test]
    fn origin_value_tracks_the_boundary_formula() {
        let s = SpectralParameter::critical(5.0);
        let policy = TruncationPolicy::default();
        let direct = psi_full(0.0, 0.0, s, 0, lam(8.0), &policy).unwrap().value;
        let boundary = crate::waveform::psi_boundary(0.0, s, 0, lam(8.0), Variant::Original)
            .unwrap()
            .value;
        assert!((direct - boundary).norm() <= 1e-6 * boundary.norm(), "{direct} vs {boundary}");
    }

    #[test]
    fn confined_boundary_matches_limit() {
        let policy = TruncationPolicy::default();
        for t in [0.0, 3.0, 10.0, 21.0] {
            let s = SpectralParameter::critical(t);
            let b = phi_confined_boundary(&PhiStandIn { s }, &policy).unwrap();
            let l = psi_boundary_limit(s).unwrap();
            assert!((b.value - l).norm() <= 1e-10 * l.norm(), "t {t}");
        }
        let first = SpectralParameter::critical(14.134725141734694);
        let b = phi_confined_boundary(&PhiStandIn { s: first }, &policy).unwrap();
        assert!(b.value.norm() <= 1e-8);
    }

    #[test]
    fn single_term_confined() {
        let s = SpectralParameter::critical(2.0);
        let policy = TruncationPolicy::new(1, 1e-12, 0.0).unwrap();
        let v = phi_confined(&PhiStandIn { s }, 0.7, &policy).unwrap();
        assert!((v.value - 2.0 * phi_s(0.7, s).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn abel_laguerre_origin_matches_generating_function() {
        let s = SpectralParameter::critical(2.0);
        let profile = AbelLaguerre::new(s, 0.6, 80).unwrap();
        let sum = profile.at_zero().unwrap();
        let closed = profile.generating_at_zero().unwrap();
        assert!((sum - closed).norm() <= 1e-9 * closed.norm(), "{sum} vs {closed}");
        assert!((profile.eval(0.0).unwrap() - sum).norm() < 1e-14);
    }

    #[test]
    fn abel_limit_is_the_closed_origin_value() {
        let s = SpectralParameter::critical(2.0);
        let profile = AbelLaguerre { s, r: 0.999_999, weighted: vec![] };
        let near = profile.generating_at_zero().unwrap();
        let exact = varphi_zero(s).unwrap();
        assert!((near - exact).norm() <= 1e-5 * exact.norm());
    }
}
