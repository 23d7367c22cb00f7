//! Half-line quadrature.
//!
//! Two schemes cover every integral in the crate:
//!
//! * `SmoothDecaying`: composite Gauss–Legendre on `[0, tail_cutoff]`, for
//!   integrands that are smooth at the origin and decay exponentially.
//! * `EndpointSingular`: the substitution `u = e^v` on
//!   `[log_floor, ln tail_cutoff]`. An integrand `u^(s-1) g(u)` becomes
//!   `e^(s v) g(e^v)`, so the oscillation `u^(i t)` turns into a Fourier
//!   mode in `v` and the part below `log_floor` is added from the power
//!   law.
//!
//! Accuracy is certified a posteriori: the panel count doubles until two
//! successive estimates agree to the requested tolerance, or to the
//! round-off floor of the sum, whichever is larger.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalar values a rule can accumulate.
pub trait Scalar: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn modulus(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    EndpointSingular,
    SmoothDecaying,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub scheme: Scheme,
    /// Starting panel count; doubled until the estimate settles.
    pub panels: usize,
    pub nodes_per_panel: usize,
    pub tail_cutoff: f64,
    pub target_tol: f64,
    /// Optional relative tolerance; the effective tolerance is the larger
    /// of `target_tol` and `rel_tol * |value|`.
    pub rel_tol: f64,
    /// Panel budget.
    pub max_panels: usize,
    /// Lower end of the `v = ln u` range for the endpoint-singular scheme.
    pub log_floor: f64,
}

impl QuadratureSpec {
    pub fn endpoint_singular() -> Self {
        Self {
            scheme: Scheme::EndpointSingular,
            panels: 64,
            nodes_per_panel: 16,
            tail_cutoff: 40.0,
            target_tol: 1e-10,
            rel_tol: 0.0,
            max_panels: 4096,
            log_floor: -36.0,
        }
    }

    pub fn smooth_decaying() -> Self {
        Self {
            scheme: Scheme::SmoothDecaying,
            panels: 16,
            nodes_per_panel: 16,
            tail_cutoff: 40.0,
            target_tol: 1e-10,
            rel_tol: 0.0,
            max_panels: 4096,
            log_floor: -36.0,
        }
    }

    pub fn with_panels(mut self, panels: usize) -> Self {
        self.panels = panels;
        self
    }

    pub fn with_tail_cutoff(mut self, cutoff: f64) -> Self {
        self.tail_cutoff = cutoff;
        self
    }

    pub fn with_tolerance(mut self, target_tol: f64) -> Self {
        self.target_tol = target_tol;
        self
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParameter(format!("quadrature spec: {msg}")));
        if self.panels == 0 || self.nodes_per_panel == 0 {
            return bad("panels and nodes_per_panel must be positive");
        }
        if self.panels > self.max_panels {
            return bad("starting panel count exceeds the budget");
        }
        if !(self.tail_cutoff.is_finite() && self.tail_cutoff > 0.0) {
            return bad("tail_cutoff must be positive");
        }
        if !(self.target_tol > 0.0) || !(self.rel_tol >= 0.0) {
            return bad("tolerances must be positive");
        }
        if self.scheme == Scheme::EndpointSingular && self.log_floor >= self.tail_cutoff.ln() {
            return bad("log_floor must lie below ln(tail_cutoff)");
        }
        Ok(())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::endpoint_singular()
    }
}

/// Quadrature result with its a posteriori error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T = Complex64> {
    pub value: T,
    /// Difference between the last two panel-doubling estimates, plus the
    /// uncertainty of any analytic tail correction.
    pub error: f64,
    /// Bound on the discarded upper tail beyond `tail_cutoff`.
    pub tail_bound: f64,
    pub panels: usize,
    pub evaluations: usize,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_and_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Composite rule on `[a, b]` with `panels` equal panels. Returns the
    /// sum and the sum of moduli (the round-off scale).
    pub fn composite<T, F>(&self, f: &F, a: f64, b: f64, panels: usize) -> (T, f64)
    where
        T: Scalar,
        F: Fn(f64) -> T,
    {
        self.composite_split(&|base: f64, offset: f64| f(base + offset), a, b, panels)
    }

    /// Composite rule where the integrand receives each node as a panel
    /// edge plus an offset, so callers can keep the edge exact in phase
    /// computations. Panels share their edges exactly.
    pub fn composite_split<T, F>(&self, f: &F, a: f64, b: f64, panels: usize) -> (T, f64)
    where
        T: Scalar,
        F: Fn(f64, f64) -> T,
    {
        let width = (b - a) / panels as f64;
        let mut sum = T::zero();
        let mut mass = 0.0;
        let mut lo = a;
        for p in 0..panels {
            let hi = if p + 1 == panels { b } else { a + (p + 1) as f64 * width };
            let half = 0.5 * (hi - lo);
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                let value = if *x < 0.0 {
                    f(lo, half * (1.0 + x))
                } else {
                    f(hi, -half * (1.0 - x))
                };
                let v = value * (w * half);
                mass += v.modulus();
                sum = sum + v;
            }
            lo = hi;
        }
        (sum, mass)
    }
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

const ROUNDOFF_FACTOR: f64 = 8.0 * f64::EPSILON;

/// Composite Gauss–Legendre on `[a, b]` with panel doubling.
pub fn integrate_interval<T, F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate<T>>
where
    T: Scalar,
    F: Fn(f64) -> T,
{
    let rule = GaussLegendre::new(spec.nodes_per_panel);
    integrate_interval_with(&rule, &f, a, b, spec)
}

/// As [`integrate_interval`], reusing a prebuilt rule.
pub fn integrate_interval_with<T, F>(
    rule: &GaussLegendre,
    f: &F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate<T>>
where
    T: Scalar,
    F: Fn(f64) -> T,
{
    integrate_split(rule, &|mid: f64, offset: f64| f(mid + offset), a, b, spec)
}

fn integrate_split<T, F>(
    rule: &GaussLegendre,
    f: &F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate<T>>
where
    T: Scalar,
    F: Fn(f64, f64) -> T,
{
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameter("interval ends must be finite".into()));
    }
    if a == b {
        return Ok(Estimate {
            value: T::zero(),
            error: 0.0,
            tail_bound: 0.0,
            panels: 0,
            evaluations: 0,
        });
    }
    let n = rule.len();
    let mut panels = spec.panels;
    let (mut coarse, _) = rule.composite_split(f, a, b, panels);
    let mut evaluations = panels * n;
    loop {
        let fine_panels = 2 * panels;
        if fine_panels > spec.max_panels {
            return Err(Error::QuadratureNotConverged {
                estimate: f64::NAN,
                tolerance: spec.target_tol,
                panels,
            });
        }
        let (fine, mass) = rule.composite_split(f, a, b, fine_panels);
        evaluations += fine_panels * n;
        let err = (fine - coarse).modulus();
        let tol = spec
            .target_tol
            .max(spec.rel_tol * fine.modulus())
            .max(ROUNDOFF_FACTOR * mass);
        if err <= tol {
            return Ok(Estimate {
                value: fine,
                error: err,
                tail_bound: 0.0,
                panels: fine_panels,
                evaluations,
            });
        }
        if !err.is_finite() || 2 * fine_panels > spec.max_panels {
            return Err(Error::QuadratureNotConverged {
                estimate: err,
                tolerance: tol,
                panels: fine_panels,
            });
        }
        coarse = fine;
        panels = fine_panels;
    }
}

/// `e^(s (base + offset))` with the phase `t * base` carried in two parts,
/// so large `|t base|` does not cost digits.
pub fn exp_split(s: Complex64, base: f64, offset: f64) -> Complex64 {
    let hi = s.im * base;
    let lo = s.im.mul_add(base, -hi);
    let phase_rest = lo + s.im * offset;
    let big = Complex64::new(hi.cos(), hi.sin());
    let small = Complex64::new(phase_rest.cos(), phase_rest.sin());
    big * small * (s.re * (base + offset)).exp()
}

/// Bound on `int_c^inf |f|` from the local exponential decay rate at `c`.
fn upper_tail_bound<F: Fn(f64) -> f64>(modulus: F, c: f64) -> f64 {
    let at = modulus(c);
    if at == 0.0 {
        return 0.0;
    }
    let delta = 0.05 * c;
    let before = modulus(c - delta);
    let rate = (before / at).ln() / delta;
    if rate.is_finite() && rate > 0.0 {
        2.0 * at / rate
    } else {
        at * c
    }
}

/// `int_0^inf f(u) du` under the scheme selected by `spec`.
pub fn integrate_halfline<F>(f: F, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    let c = spec.tail_cutoff;
    let tail_bound = upper_tail_bound(|u| f(u).norm(), c);
    match spec.scheme {
        Scheme::SmoothDecaying => {
            let mut est = integrate_interval(&f, 0.0, c, spec)?;
            est.tail_bound = tail_bound;
            Ok(est)
        }
        Scheme::EndpointSingular => {
            let h = |v: f64| {
                let u = v.exp();
                f(u) * u
            };
            let v0 = spec.log_floor;
            let mut est = integrate_interval(h, v0, c.ln(), spec)?;
            // local power law h(v) ~ C e^(p v) below the floor
            // small step keeps ln(h0/h1) on the principal branch
            let step = 1e-3;
            let h0 = h(v0);
            let h1 = h(v0 - step);
            let (tail, tail_err) = if h0.norm() == 0.0 {
                (Complex64::new(0.0, 0.0), 0.0)
            } else {
                let p = (h0 / h1).ln() / step;
                if !(p.re > 0.0) {
                    return Err(Error::Domain(
                        "integrand is not integrable at the origin".into(),
                    ));
                }
                let tail = h0 / p;
                // next-order correction is relatively O(e^v0)
                (tail, tail.norm() * v0.exp().max(f64::EPSILON) * 10.0)
            };
            est.value += tail;
            est.error += tail_err;
            est.tail_bound = tail_bound;
            est.evaluations += 2;
            Ok(est)
        }
    }
}

/// `int_0^inf u^(s-1) g(u) du` for `g` bounded near the origin, through
/// `u = e^v`. The part below `log_floor` is `g(e^v0) e^(s v0) / s`.
pub fn integrate_singular_log<G>(g: G, s: Complex64, spec: &QuadratureSpec) -> Result<Estimate>
where
    G: Fn(f64) -> Complex64,
{
    let rule = GaussLegendre::new(spec.nodes_per_panel);
    integrate_singular_log_with(&rule, &g, s, spec)
}

/// As [`integrate_singular_log`], reusing a prebuilt rule.
pub fn integrate_singular_log_with<G>(
    rule: &GaussLegendre,
    g: &G,
    s: Complex64,
    spec: &QuadratureSpec,
) -> Result<Estimate>
where
    G: Fn(f64) -> Complex64,
{
    spec.validate()?;
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!(
            "u^(s-1) is not integrable at 0 for Re s = {}",
            s.re
        )));
    }
    let c = spec.tail_cutoff;
    let h = |base: f64, offset: f64| g(base.exp() * offset.exp()) * exp_split(s, base, offset);
    let v0 = spec.log_floor;
    let mut est = integrate_split(rule, &h, v0, c.ln(), spec)?;
    let edge = g(v0.exp()) * (s * v0).exp() / s;
    est.value += edge;
    est.error += edge.norm() * v0.exp().max(f64::EPSILON) * 10.0;
    est.tail_bound = upper_tail_bound(|u| g(u).norm() * u.powf(s.re - 1.0), c);
    est.evaluations += 1;
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{eta, gamma_complex};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let rule = GaussLegendre::new(8);
        let (v, _) = rule.composite(&|x: f64| x.powi(15) + 3.0 * x.powi(2), -1.0, 1.0, 1);
        assert!((v - 2.0).abs() < 1e-14);
        let w: f64 = GaussLegendre::new(20).weights.iter().sum();
        assert!((w - 2.0).abs() < 1e-14);
    }

    #[test]
    fn exponential() {
        for spec in [QuadratureSpec::smooth_decaying(), QuadratureSpec::endpoint_singular()] {
            let est = integrate_halfline(|u| c((-u).exp(), 0.0), &spec).unwrap();
            assert!((est.value.re - 1.0).abs() < 1e-12, "{spec:?}: {}", est.value);
            assert!(est.error <= spec.target_tol);
        }
    }

    #[test]
    fn inverse_square_root_singularity() {
        let spec = QuadratureSpec::endpoint_singular();
        let est = integrate_halfline(|u| c((-u).exp() / u.sqrt(), 0.0), &spec).unwrap();
        assert!((est.value.re - PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn eta_integral_identity() {
        let s = c(0.5, 5.0);
        let spec = QuadratureSpec::endpoint_singular().with_rel_tol(1e-11);
        let est = integrate_halfline(
            |u| ((s - 1.0) * u.ln()).exp() * ((-u).exp() / (1.0 + (-u).exp())),
            &spec,
        )
        .unwrap();
        let want = gamma_complex(s).unwrap() * eta(s);
        assert!((est.value - want).norm() <= 1e-8 * want.norm(), "{} vs {}", est.value, want);
    }

    #[test]
    fn singular_log_gamma() {
        let s = c(0.5, 10.0);
        let spec = QuadratureSpec::endpoint_singular().with_rel_tol(1e-11);
        let est = integrate_singular_log(|u| c((-u).exp(), 0.0), s, &spec).unwrap();
        let want = gamma_complex(s).unwrap();
        assert!((est.value - want).norm() <= 1e-9 * want.norm());
    }

    #[test]
    fn singular_log_step_function() {
        let s = c(0.5, 0.0);
        let spec = QuadratureSpec::endpoint_singular().with_panels(80);
        // split at u = 1 so the jump falls on a panel edge: ln(1) = 0
        let spec = QuadratureSpec { tail_cutoff: 1.0, log_floor: -40.0, ..spec };
        let est = integrate_singular_log(|_| c(1.0, 0.0), s, &spec).unwrap();
        assert!((est.value.re - 2.0).abs() < 1e-10, "{}", est.value);
    }

    #[test]
    fn singular_log_vanishes_at_first_zero() {
        let s = c(0.5, 14.134725);
        let spec = QuadratureSpec::endpoint_singular().with_panels(128).with_tolerance(1e-18);
        let est = integrate_singular_log(|u| c((-u).exp() / (1.0 + (-u).exp()), 0.0), s, &spec).unwrap();
        let scale = gamma_complex(s).unwrap().norm();
        assert!(est.value.norm() <= 1e-6 * scale);
    }

    #[test]
    fn linearity() {
        let spec = QuadratureSpec::smooth_decaying();
        let f = |u: f64| c((-u).exp() * u.cos(), 0.0);
        let g = |u: f64| c(0.0, (-0.5 * u).exp() * u * u);
        let (alpha, beta) = (c(2.0, -1.0), c(-0.5, 3.0));
        let lhs = integrate_halfline(|u| alpha * f(u) + beta * g(u), &spec).unwrap().value;
        let rhs = alpha * integrate_halfline(f, &spec).unwrap().value
            + beta * integrate_halfline(g, &spec).unwrap().value;
        assert!((lhs - rhs).norm() <= 2.0 * spec.target_tol);
    }

    #[test]
    fn doubling_panels_does_not_raise_the_error_estimate() {
        let tests: Vec<Box<dyn Fn(f64) -> f64>> = vec![
            Box::new(|u: f64| (-u).exp()),
            Box::new(|u: f64| (-u).exp() * (3.0 * u).sin()),
            Box::new(|u: f64| (-0.5 * u).exp() * u.powi(4)),
            Box::new(|u: f64| 1.0 / (1.0 + u * u) * (-0.2 * u).exp()),
        ];
        for f in &tests {
            let mut last = f64::INFINITY;
            for panels in [1usize, 2, 4, 8] {
                let spec = QuadratureSpec::smooth_decaying()
                    .with_panels(panels)
                    .with_tolerance(1e300);
                let est = integrate_interval(f, 0.0, 40.0, &spec).unwrap();
                let floor = 1e-14 * est.value.abs().max(1.0);
                assert!(est.error <= last.max(floor), "panels {panels}: {} > {}", est.error, last);
                last = est.error;
            }
        }
    }

    #[test]
    fn tail_bound_is_honest() {
        for (rate, cutoff) in [(1.0, 40.0), (0.5, 40.0), (2.0, 10.0)] {
            let spec = QuadratureSpec::smooth_decaying().with_tail_cutoff(cutoff);
            let est = integrate_halfline(|u| c((-rate * u).exp(), 0.0), &spec).unwrap();
            let discarded = (-rate * cutoff).exp() / rate;
            assert!(discarded <= est.tail_bound, "{discarded} > {}", est.tail_bound);
        }
    }

    #[test]
    fn non_convergence_is_reported() {
        let spec = QuadratureSpec {
            max_panels: 8,
            target_tol: 1e-15,
            ..QuadratureSpec::smooth_decaying().with_panels(1)
        };
        let r = integrate_interval(|u: f64| (40.0 * u).sin(), 0.0, 40.0, &spec);
        assert!(matches!(r, Err(Error::QuadratureNotConverged { .. })));
    }

    #[test]
    fn invalid_specs() {
        assert!(QuadratureSpec::smooth_decaying().with_panels(0).validate().is_err());
        assert!(QuadratureSpec::smooth_decaying().with_tail_cutoff(-1.0).validate().is_err());
        let r = integrate_singular_log(|_| c(1.0, 0.0), c(-0.5, 0.0), &QuadratureSpec::default());
        assert!(r.is_err());
    }
}
