//! Boundary value `Psi(0, y)` through the Gamma-integral representation.
//!
//! With `t = e^(-u)` and `a = (1 + t) / (1 - t)`,
//!
//! ```text
//! Psi(0, y) = phi_s(0) / Gamma(s) int_0^inf u^(s-1) e^(-u) inner(u) du,
//! inner(u)  = int_0^inf chi_n(eps y') M(Y, y', t) dy',
//! ```
//!
//! where `M` is the Mehler kernel, `eps = e^(-lambda)` and `Y` is `e^lambda y`
//! (original) or `e^(-lambda) y` (tilde). The substitution `y' = w^2`
//! turns the kernel into a Gaussian in `w` centred at
//! `w* = 2 sqrt(Y t) / (1 + t)` of width `a^(-1/2)`, times the slowly
//! varying `exp(-z) I0(z)`.
//!
//! As `lambda -> infinity`, `inner(u) -> 2 / (1 + t)`, whose transform is
//! exactly `2 Gamma(s) eta(s)`. The limit-subtracted method integrates only
//! the deficit `inner(u) - 2 / (1 + t)` and adds `2 eta(s)` back, so the
//! small `|Gamma(s)|` on the critical line does not eat the digits.

use std::cell::RefCell;

use num_complex::Complex64;

use super::{varphi_zero, QuantumNumber, SqueezeParameter, Variant, WaveSample};
use crate::error::{Error, Result};
use crate::quad::{
    integrate_interval_with, integrate_singular_log_with, GaussLegendre, QuadratureSpec,
};
use crate::specfun::{
    bessel_i0_scaled, chi, chi_minus_one, eta, eta_factor, gamma_complex, ln_bessel_i0,
    xi_aux, SpectralParameter,
};

/// How the `u`-integral is organised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryMethod {
    /// Integrate `e^(-u) inner(u)` as it stands.
    Direct,
    /// Integrate `e^(-u) (inner(u) - 2 / (1 + t))` and add `2 eta(s)`.
    LimitSubtracted,
    /// Limit-subtracted for `y = 0` or the tilde variant, direct otherwise.
    Auto,
}

/// Settings for [`psi_boundary_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryOptions {
    pub method: BoundaryMethod,
    /// Use the `w`-quadrature for `inner(u)` even where the closed form
    /// at `Y = 0` applies.
    pub inner_quadrature: bool,
    /// Outer quadrature settings; `None` picks a tolerance scaled by
    /// `|Gamma(s)|`.
    pub spec: Option<QuadratureSpec>,
}

impl Default for BoundaryOptions {
    fn default() -> Self {
        Self {
            method: BoundaryMethod::Auto,
            inner_quadrature: false,
            spec: None,
        }
    }
}

impl BoundaryOptions {
    pub fn with_method(method: BoundaryMethod) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }
}

/// Half-width of the `w` windows in units of `a^(-1/2)`.
const WINDOW: f64 = 9.0;

/// Largest `lambda` for the original variant at `y > 0`.
const ORIGINAL_LAMBDA_MAX: f64 = 25.0;

/// Geometry of the `w`-integrand at one `u`.
struct Kernel {
    one_minus_t: f64,
    a: f64,
    b: f64,
    w_star: f64,
    e_star: f64,
    y_eff: f64,
}

impl Kernel {
    fn new(y_eff: f64, u: f64) -> Self {
        let t = (-u).exp();
        let one_minus_t = -(-u).exp_m1();
        let a = (1.0 + t) / one_minus_t;
        let root = (y_eff * t).sqrt();
        Self {
            one_minus_t,
            a,
            b: 2.0 * root / one_minus_t,
            w_star: 2.0 * root / (1.0 + t),
            e_star: -0.5 * y_eff * one_minus_t / (1.0 + t),
            y_eff,
        }
    }

    /// `exp(-(Y + w^2) a / 2) I0(b w)` at `w = centre + d`, with the
    /// Gaussian deviation formed from `d` so that a narrow peak far from
    /// the origin keeps its digits.
    fn kernel(&self, centre: f64, d: f64) -> f64 {
        let w = centre + d;
        let dev = (centre - self.w_star) + d;
        (-0.5 * self.a * dev * dev + self.e_star).exp()
            * bessel_i0_scaled(self.b * w).unwrap_or(f64::NAN)
    }

    /// `kernel - exp(-a w^2 / 2)` without cancellation.
    fn kernel_excess(&self, centre: f64, d: f64) -> f64 {
        let w = centre + d;
        let exponent =
            -0.5 * self.y_eff * self.a + ln_bessel_i0(self.b * w).unwrap_or(f64::NAN);
        let base = (-0.5 * self.a * w * w).exp();
        if exponent.abs() < 1.0 {
            base * exponent.exp_m1()
        } else {
            self.kernel(centre, d) - base
        }
    }

    /// Integration windows as `(centre, lo, hi)` offsets: the reference
    /// Gaussian at the origin and the kernel peak at `w*`, merged when
    /// they overlap.
    fn windows(&self, with_origin: bool) -> Vec<(f64, f64, f64)> {
        let half = WINDOW / self.a.sqrt();
        let peak = (self.w_star, (-half).max(-self.w_star), half);
        if self.w_star - half <= half {
            if with_origin || self.w_star <= half {
                vec![(0.0, 0.0, (self.w_star + half).max(half))]
            } else {
                vec![peak]
            }
        } else if with_origin {
            vec![(0.0, 0.0, half), peak]
        } else {
            vec![peak]
        }
    }
}

fn inner_spec(len: f64, a: f64) -> QuadratureSpec {
    let panels = ((len * a.sqrt() / 2.0).ceil() as usize).clamp(4, 256);
    QuadratureSpec::smooth_decaying()
        .with_panels(panels)
        .with_tolerance(1e-18)
        .with_rel_tol(1e-14)
}

fn integrate_windows<F: Fn(f64, f64) -> f64>(
    rule: &GaussLegendre,
    f: &F,
    windows: &[(f64, f64, f64)],
    a: f64,
) -> Result<(f64, f64)> {
    let mut value = 0.0;
    let mut error = 0.0;
    for &(centre, lo, hi) in windows {
        let g = |d: f64| f(centre, d);
        let est = integrate_interval_with(rule, &g, lo, hi, &inner_spec(hi - lo, a))?;
        value += est.value;
        error += est.error;
    }
    Ok((value, error))
}

/// `inner(u) = int_0^inf chi_n(eps y') M(y_eff, y', e^(-u)) dy'` by
/// quadrature in `w = sqrt(y')`.
pub fn boundary_inner(y_eff: f64, n: QuantumNumber, eps: f64, u: f64) -> Result<f64> {
    let rule = GaussLegendre::new(16);
    inner_direct(&rule, y_eff, n, eps, u).map(|(v, _)| v)
}

/// Closed form of `inner(u)` at `y_eff = 0`:
/// `2 (a - eps)^n / ((1 - t) (a + eps)^(n+1))`.
pub fn boundary_inner_at_origin(n: QuantumNumber, eps: f64, u: f64) -> f64 {
    let k = Kernel::new(0.0, u);
    let ratio = (k.a - eps) / (k.a + eps);
    2.0 * ratio.powi(n as i32) / (k.one_minus_t * (k.a + eps))
}

/// Closed form of `inner(u) - 2 / (1 + t)` at `y_eff = 0`, arranged so
/// the two O(1) pieces never cancel.
pub fn deficit_at_origin(n: QuantumNumber, eps: f64, u: f64) -> f64 {
    let t = (-u).exp();
    let one_minus_t = -(-u).exp_m1();
    let a = (1.0 + t) / one_minus_t;
    let power_minus_one = (n as f64 * (-2.0 * eps / (a + eps)).ln_1p()).exp_m1();
    let ground = -2.0 * eps * one_minus_t / ((1.0 + t) * (1.0 + t + eps * one_minus_t));
    2.0 * power_minus_one / (one_minus_t * (a + eps)) + ground
}

fn inner_direct(
    rule: &GaussLegendre,
    y_eff: f64,
    n: QuantumNumber,
    eps: f64,
    u: f64,
) -> Result<(f64, f64)> {
    let k = Kernel::new(y_eff, u);
    let f = |centre: f64, d: f64| {
        let w = centre + d;
        w * chi(n, eps * w * w) * k.kernel(centre, d)
    };
    let (v, e) = integrate_windows(rule, &f, &k.windows(false), k.a)?;
    let scale = 2.0 / k.one_minus_t;
    Ok((scale * v, scale * e))
}

/// `inner(u) - 2 / (1 + t)`.
fn inner_deficit(
    rule: &GaussLegendre,
    y_eff: f64,
    n: QuantumNumber,
    eps: f64,
    u: f64,
) -> Result<(f64, f64)> {
    let k = Kernel::new(y_eff, u);
    let f = |centre: f64, d: f64| {
        let w = centre + d;
        w * (chi_minus_one(n, eps * w * w) * k.kernel(centre, d) + k.kernel_excess(centre, d))
    };
    let (v, e) = integrate_windows(rule, &f, &k.windows(true), k.a)?;
    let scale = 2.0 / k.one_minus_t;
    Ok((scale * v, scale * e))
}

/// `Psi(0, y)` with the default method and quadrature settings.
pub fn psi_boundary(
    y: f64,
    s: SpectralParameter,
    n: QuantumNumber,
    lambda: SqueezeParameter,
    variant: Variant,
) -> Result<WaveSample> {
    psi_boundary_with(y, s, n, lambda, variant, &BoundaryOptions::default())
}

/// Outer quadrature settings; the absolute tolerance is scaled by
/// `|Gamma(s)|` because the result is divided by it.
fn outer_spec(gamma_norm: f64) -> QuadratureSpec {
    QuadratureSpec::endpoint_singular()
        .with_tolerance(1e-12 * gamma_norm)
        .with_rel_tol(1e-10)
}

/// `Psi(0, y)` with explicit settings.
pub fn psi_boundary_with(
    y: f64,
    s: SpectralParameter,
    n: QuantumNumber,
    lambda: SqueezeParameter,
    variant: Variant,
    options: &BoundaryOptions,
) -> Result<WaveSample> {
    s.require_right_half()?;
    if !(y >= 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("y = {y} must be finite and nonnegative")));
    }
    let sample = |value: Complex64, error: f64, variant: Variant| WaveSample {
        x: 0.0,
        y,
        s,
        n,
        lambda,
        value,
        variant,
        error,
    };
    let y_eff = match variant {
        Variant::Limit => return Ok(sample(psi_boundary_limit_at(y, s)?, 0.0, variant)),
        Variant::Original => {
            if y > 0.0 && lambda.lambda > ORIGINAL_LAMBDA_MAX {
                return Err(Error::OverflowGuard(format!(
                    "e^lambda y with lambda = {} exceeds the supported range",
                    lambda.lambda
                )));
            }
            lambda.lambda.exp() * y
        }
        Variant::Tilde => lambda.contraction() * y,
    };
    let method = match options.method {
        BoundaryMethod::Auto if y == 0.0 || variant == Variant::Tilde => {
            BoundaryMethod::LimitSubtracted
        }
        BoundaryMethod::Auto => BoundaryMethod::Direct,
        m => m,
    };
    let z = s.as_complex();
    let gamma = gamma_complex(z)?;
    let phi0 = varphi_zero(s)?;
    let spec = options.spec.unwrap_or_else(|| outer_spec(gamma.norm()));
    let closed = y_eff == 0.0 && !options.inner_quadrature;
    let eps = lambda.contraction();
    let rule = GaussLegendre::new(16);
    let failure = RefCell::new(None);
    let inner_error = RefCell::new(0.0f64);
    let g = |u: f64| {
        let r = match (method, closed) {
            (BoundaryMethod::LimitSubtracted, true) => Ok((deficit_at_origin(n, eps, u), 0.0)),
            (_, true) => Ok((boundary_inner_at_origin(n, eps, u), 0.0)),
            (BoundaryMethod::LimitSubtracted, false) => inner_deficit(&rule, y_eff, n, eps, u),
            (_, false) => inner_direct(&rule, y_eff, n, eps, u),
        };
        match r {
            Ok((v, e)) => {
                let damp = (-u).exp();
                let mut acc = inner_error.borrow_mut();
                *acc = acc.max(damp * e);
                Complex64::new(damp * v, 0.0)
            }
            Err(err) => {
                failure.borrow_mut().get_or_insert(err);
                Complex64::new(f64::NAN, 0.0)
            }
        }
    };
    let outer_rule = GaussLegendre::new(spec.nodes_per_panel);
    let est = integrate_singular_log_with(&outer_rule, &g, z, &spec);
    if let Some(err) = failure.into_inner() {
        return Err(err);
    }
    let est = est?;
    let reduced = est.value / gamma;
    // inner errors enter through int |u^(s-1)| e^(-u) du = Gamma(sigma)
    let inner_bound = inner_error.into_inner() * gamma_complex(Complex64::new(s.sigma, 0.0))?.re;
    let error = (est.error + est.tail_bound + inner_bound) / gamma.norm();
    let reduced = match method {
        BoundaryMethod::LimitSubtracted => reduced + 2.0 * eta(z),
        _ => reduced,
    };
    Ok(sample(phi0 * reduced, phi0.norm() * error, variant))
}

/// `lambda -> infinity` boundary value at `y = 0`: `2 phi_s(0) eta(s)`.
pub fn psi_boundary_limit(s: SpectralParameter) -> Result<Complex64> {
    Ok(2.0 * varphi_zero(s)? * eta(s.as_complex()))
}

/// The limit at any `y`: the `y = 0` value, and exactly zero for `y > 0`.
pub fn psi_boundary_limit_at(y: f64, s: SpectralParameter) -> Result<Complex64> {
    if y > 0.0 {
        Ok(Complex64::new(0.0, 0.0))
    } else {
        psi_boundary_limit(s)
    }
}

/// First-order weight of `e^(-lambda)` in the tilde boundary value.
pub fn tilde_weight(n: QuantumNumber, y: f64) -> f64 {
    2.0 * n as f64 + 1.0 + 0.5 * y
}

/// Tilde boundary value against its expansion in `e^(-lambda)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TildeExpansion {
    pub exact: Complex64,
    /// `2 phi_s(0) eta(s)`.
    pub zero_order: Complex64,
    /// `2 phi_s(0) [eta(s) + e^(-lambda) w (1 - 2^(1-s)) xi(s)]` with
    /// `w = tilde_weight(n, y)`.
    pub first_order: Complex64,
    pub residual: f64,
}

pub fn tilde_expansion_check(
    y: f64,
    s: SpectralParameter,
    n: QuantumNumber,
    lambda: SqueezeParameter,
) -> Result<TildeExpansion> {
    if lambda.lambda < 5.0 {
        return Err(Error::InvalidParameter(format!(
            "the expansion needs lambda >= 5, got {}",
            lambda.lambda
        )));
    }
    let exact = psi_boundary(y, s, n, lambda, Variant::Tilde)?.value;
    let z = s.as_complex();
    let phi0 = varphi_zero(s)?;
    let zero_order = 2.0 * phi0 * eta(z);
    let slope = 2.0 * phi0 * eta_factor(z) * xi_aux(z)?;
    let first_order = zero_order + lambda.contraction() * tilde_weight(n, y) * slope;
    Ok(TildeExpansion {
        exact,
        zero_order,
        first_order,
        residual: (exact - first_order).norm(),
    })
}
