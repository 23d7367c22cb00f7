//! Wave functions of the squeezed two-dimensional construction.
//!
//! Coordinates `x` (dilation direction) and `y` (number-operator
//! direction) both live on the half-line. The building blocks are the
//! dilation eigenfunctions `phi_s`, the Laguerre functions `chi_n`, the
//! squeeze action and the Mehler kernel; on top of them sit the full
//! wave function, its boundary value at `x = 0` and the large-squeezing
//! limits.

mod boundary;
mod mehler;
mod overlap;
mod profile;

pub use boundary::{
    boundary_inner, boundary_inner_at_origin, deficit_at_origin, psi_boundary, psi_boundary_limit,
    psi_boundary_limit_at, psi_boundary_with, tilde_expansion_check, tilde_weight,
    BoundaryMethod, BoundaryOptions, TildeExpansion,
};
pub use mehler::{mehler_closed, mehler_series, Truncated};
pub use overlap::{overlap_bare, overlap_bare_closed, overlap_s1};
pub use profile::{
    phi_confined, phi_confined_boundary, psi_full, psi_full_with, AbelLaguerre, PhiStandIn,
    RotatedProfile,
};

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{gamma_complex, SpectralParameter};

/// Level `n_y` of the number operator.
pub type QuantumNumber = usize;

/// Squeezing amount `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParameter {
    pub lambda: f64,
}

impl SqueezeParameter {
    /// Largest supported `lambda`; `e^40` keeps every rescaled argument
    /// comfortably inside double range.
    pub const MAX: f64 = 40.0;

    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || !(0.0..=Self::MAX).contains(&lambda) {
            return Err(Error::InvalidParameter(format!(
                "lambda = {lambda} must lie in [0, {}]",
                Self::MAX
            )));
        }
        Ok(Self { lambda })
    }

    /// `e^(-lambda)`.
    pub fn contraction(self) -> f64 {
        (-self.lambda).exp()
    }
}

/// Which boundary object a sample belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Squeezed argument `e^lambda y`.
    Original,
    /// Contracted argument `e^-lambda y`.
    Tilde,
    /// The `lambda -> infinity` closed form.
    Limit,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::Original => "original",
            Variant::Tilde => "tilde",
            Variant::Limit => "limit",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "original" => Ok(Variant::Original),
            "tilde" => Ok(Variant::Tilde),
            "limit" => Ok(Variant::Limit),
            _ => Err(Error::InvalidParameter(format!("unknown variant {s:?}"))),
        }
    }
}

/// One evaluated wave-function value with its coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSample {
    pub x: f64,
    pub y: f64,
    pub s: SpectralParameter,
    pub n: QuantumNumber,
    pub lambda: SqueezeParameter,
    pub value: Complex64,
    pub variant: Variant,
    /// Combined quadrature and truncation error estimate.
    pub error: f64,
}

/// `E = i (s - 1/2) + n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenvalueRecord {
    pub s: SpectralParameter,
    pub n: QuantumNumber,
    pub energy: Complex64,
    pub real_energy: bool,
}

pub fn eigenvalue_of(s: SpectralParameter, n: QuantumNumber) -> EigenvalueRecord {
    let energy = Complex64::i() * (s.as_complex() - 0.5) + n as f64;
    EigenvalueRecord {
        s,
        n,
        energy,
        real_energy: s.is_critical(),
    }
}

/// Dilation eigenfunction `x^(-s) / sqrt(2 pi)`.
pub fn phi_s(x: f64, s: SpectralParameter) -> Result<Complex64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("phi_s needs x > 0, got {x}")));
    }
    Ok((-s.as_complex() * x.ln()).exp() / (2.0 * PI).sqrt())
}

/// Squeeze action `x -> e^(-lambda/2) psi(e^(-lambda) x)`.
pub fn squeeze_apply<T, F>(psi: F, lambda: SqueezeParameter) -> impl Fn(f64) -> T
where
    T: std::ops::Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    let scale = lambda.contraction();
    let amplitude = (-0.5 * lambda.lambda).exp();
    move |x| psi(scale * x) * amplitude
}

/// `Gamma(1 - s) (-2i)^(1/2 - s) / sqrt(2 pi)`, principal branch.
pub fn varphi_zero(s: SpectralParameter) -> Result<Complex64> {
    let z = s.as_complex();
    let gamma = gamma_complex(1.0 - z)?;
    let ln_minus_2i = Complex64::new(LN_2, -0.5 * PI);
    Ok(gamma * ((0.5 - z) * ln_minus_2i).exp() / (2.0 * PI).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate_interval, QuadratureSpec};
    use crate::specfun::chi;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn phi_s_examples() {
        let inv = 1.0 / (2.0 * PI).sqrt();
        let v = phi_s(1.0, SpectralParameter::critical(7.3)).unwrap();
        assert!(close(v, Complex64::new(inv, 0.0), 1e-15));
        let v = phi_s(std::f64::consts::E, SpectralParameter::critical(0.0)).unwrap();
        assert!(close(v, Complex64::new((-0.5f64).exp() * inv, 0.0), 1e-15));
        let v = phi_s(2.0, SpectralParameter::critical(1.0)).unwrap();
        assert!((v.norm() - inv / 2f64.sqrt()).abs() < 1e-15);
        assert!((v.arg() + LN_2).abs() < 1e-14);
        assert!(phi_s(0.0, SpectralParameter::critical(1.0)).is_err());
    }

    #[test]
    fn squeeze_examples() {
        let id = squeeze_apply(|x: f64| chi(2, x), SqueezeParameter::new(0.0).unwrap());
        assert_eq!(id(1.7), chi(2, 1.7));
        let half = squeeze_apply(|x: f64| chi(0, x), SqueezeParameter::new(LN_2).unwrap());
        for x in [0.0, 0.3, 2.0, 11.0] {
            assert!((half(x) - (-x / 4.0).exp() / 2f64.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn squeeze_preserves_norm() {
        let family: Vec<Box<dyn Fn(f64) -> f64>> = vec![
            Box::new(|x: f64| (-x).exp()),
            Box::new(|x: f64| chi(3, x)),
            Box::new(|x: f64| x * (-x * x).exp()),
            Box::new(|x: f64| (1.0 + x * x) * (-x).exp() / (1.0 + x)),
            Box::new(|x: f64| (x.sin() + 0.5) * (-0.5 * x).exp()),
        ];
        for psi in &family {
            let norm = |f: &dyn Fn(f64) -> f64, cutoff: f64| {
                let spec = QuadratureSpec::smooth_decaying().with_tolerance(1e-13);
                integrate_interval(|x: f64| f(x) * f(x), 0.0, cutoff, &spec).unwrap().value
            };
            let exact = norm(psi.as_ref(), 80.0);
            for lambda in [0.0, 1.0, 5.0] {
                let sq = squeeze_apply(psi.as_ref(), SqueezeParameter::new(lambda).unwrap());
                let got = norm(&sq, 80.0 * lambda.exp());
                assert!((got - exact).abs() <= 1e-8 * exact, "lambda {lambda}: {got} vs {exact}");
            }
        }
        let spec = QuadratureSpec::smooth_decaying();
        let e = integrate_interval(|x: f64| (-2.0 * x).exp(), 0.0, 40.0, &spec).unwrap();
        assert!((e.value - 0.5).abs() < 1e-10);
    }

    #[test]
    fn varphi_zero_examples() {
        let v = varphi_zero(SpectralParameter::critical(0.0)).unwrap();
        assert!(close(v, Complex64::new(0.5f64.sqrt(), 0.0), 1e-14));
        let v = varphi_zero(SpectralParameter::critical(1.0)).unwrap();
        let want = Complex64::new(0.041701835890218522, 0.01117670671576875);
        assert!(close(v, want, 1e-13));
        let v = varphi_zero(SpectralParameter::critical(10.0)).unwrap();
        let want = Complex64::new(1.0059312663553665e-14, -2.0361734577170799e-14);
        assert!(close(v, want, 1e-12 * want.norm()));
    }

    #[test]
    fn varphi_zero_is_continuous_on_the_critical_line() {
        let step = 0.01;
        let values: Vec<Complex64> = (0..=3000)
            .map(|k| varphi_zero(SpectralParameter::critical(k as f64 * step)).unwrap())
            .collect();
        // compare log-derivative jumps; the modulus decays like e^(-pi t / 2)
        let logs: Vec<Complex64> = values.iter().map(|v| v.ln()).collect();
        for w in logs.windows(3) {
            let mut d1 = w[1] - w[0];
            let mut d2 = w[2] - w[1];
            for d in [&mut d1, &mut d2] {
                d.im = (d.im + PI).rem_euclid(2.0 * PI) - PI;
            }
            assert!((d2 - d1).norm() <= 10.0 * d1.norm().max(1e-12));
        }
        assert!(values.iter().all(|v| v.norm() > 0.0));
    }

    #[test]
    fn eigenvalues() {
        let r = eigenvalue_of(SpectralParameter::critical(14.134725), 0);
        assert!(close(r.energy, Complex64::new(-14.134725, 0.0), 1e-15));
        assert!(r.real_energy);
        let r = eigenvalue_of(SpectralParameter::critical(3.5), 3);
        assert!(close(r.energy, Complex64::new(-0.5, 0.0), 1e-15));
        let r = eigenvalue_of(SpectralParameter::new(0.6, 2.0).unwrap(), 0);
        assert!(!r.real_energy);
        assert!((r.energy.im - (0.6 - 0.5)).abs() < 1e-15);
    }
}
