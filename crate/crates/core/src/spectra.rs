//! Critical-line zero scans through the boundary condition, and
//! squeezing-parameter convergence studies.
//!
//! The boundary value is `2 phi_s(0)` times a reduced objective that is
//! `eta(s)` in the limit and `eta(s) + O(e^-lambda)` at finite squeezing.
//! `|phi_s(0)|` never vanishes but decays like `e^(-pi t)` on the critical
//! line, so scans work with the reduced objective.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{eta, SpectralParameter};
use crate::waveform::{
    eigenvalue_of, psi_boundary, psi_boundary_limit, tilde_expansion_check, varphi_zero,
    QuantumNumber, SqueezeParameter, Variant,
};

/// Which boundary value the scan drives to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScanMode {
    /// `2 phi_s(0) eta(s)`.
    Limit,
    /// `Psi(0, 0)` at finite squeezing.
    Finite {
        lambda: SqueezeParameter,
        n: QuantumNumber,
    },
}

impl ScanMode {
    pub fn label(&self) -> &'static str {
        match self {
            ScanMode::Limit => "limit",
            ScanMode::Finite { .. } => "finite",
        }
    }
}

/// Boundary value at `s`, not restricted to the critical line.
fn objective_at(s: SpectralParameter, mode: &ScanMode) -> Result<Complex64> {
    match *mode {
        ScanMode::Limit => psi_boundary_limit(s),
        ScanMode::Finite { lambda, n } => Ok(psi_boundary(0.0, s, n, lambda, Variant::Original)?.value),
    }
}

/// Boundary value divided by `2 phi_s(0)`, with its quadrature error
/// estimate on the same scale.
fn reduced_with_error(s: SpectralParameter, mode: &ScanMode) -> Result<(Complex64, f64)> {
    match *mode {
        ScanMode::Limit => Ok((eta(s.as_complex()), 0.0)),
        ScanMode::Finite { lambda, n } => {
            let sample = psi_boundary(0.0, s, n, lambda, Variant::Original)?;
            let scale = 2.0 * varphi_zero(s)?;
            Ok((sample.value / scale, sample.error / scale.norm()))
        }
    }
}

fn reduced_at(s: SpectralParameter, mode: &ScanMode) -> Result<Complex64> {
    reduced_with_error(s, mode).map(|r| r.0)
}

/// Boundary value at `s = 1/2 + i t`.
pub fn boundary_objective(t: f64, mode: &ScanMode) -> Result<Complex64> {
    objective_at(SpectralParameter::critical(t), mode)
}

/// [`boundary_objective`] divided by `2 phi_s(0)`.
pub fn reduced_objective(t: f64, mode: &ScanMode) -> Result<Complex64> {
    reduced_at(SpectralParameter::critical(t), mode)
}

/// Outcome of refining one candidate.
#[derive(Debug, Clone, PartialEq)]
pub enum RefineStatus {
    Converged,
    Failed(String),
}

/// A refined boundary-condition zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroRecord {
    pub t: f64,
    /// Real part of the refined root. Exactly 1/2 in limit mode, where the
    /// root is projected onto the critical line.
    pub sigma: f64,
    /// `|reduced objective|` at the refined point.
    pub residual: f64,
    /// Quadrature error estimate of the reduced objective at the refined
    /// point. Zero in limit mode. Refinement stops once `residual` falls
    /// below the larger of this and the requested tolerance.
    pub noise_floor: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
    /// `-t`, the real energy of the `n = 0` level.
    pub energy: f64,
    pub status: RefineStatus,
}

impl ZeroRecord {
    pub fn converged(&self) -> bool {
        self.status == RefineStatus::Converged
    }
}

/// Scan settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    pub t_lo: f64,
    pub t_hi: f64,
    pub step: f64,
    pub refine_tol: f64,
    /// A grid minimum is a candidate when it lies below this fraction of
    /// the median `|objective|` over the window.
    pub isolation: f64,
    pub max_iterations: usize,
}

impl ScanConfig {
    pub fn new(t_lo: f64, t_hi: f64, step: f64, refine_tol: f64) -> Result<Self> {
        let cfg = Self {
            t_lo,
            t_hi,
            step,
            refine_tol,
            isolation: 0.1,
            max_iterations: 50,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.t_lo, self.t_hi, self.step, self.refine_tol]
            .iter()
            .all(|v| v.is_finite());
        if !finite || !(0.0 < self.t_lo && self.t_lo < self.t_hi) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < t_lo < t_hi, got {}:{}",
                self.t_lo, self.t_hi
            )));
        }
        if !(self.step > 0.0) || self.step > self.t_hi - self.t_lo {
            return Err(Error::InvalidParameter(format!("bad scan step {}", self.step)));
        }
        if !(self.refine_tol > 0.0) {
            return Err(Error::InvalidParameter("refine_tol must be positive".into()));
        }
        Ok(())
    }
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let k = v.len() / 2;
    if v.len() % 2 == 1 {
        v[k]
    } else {
        0.5 * (v[k - 1] + v[k])
    }
}

/// Complex Newton iteration on the reduced objective from `s = 1/2 + i t0`,
/// with the derivative from a central difference along `t`.
fn refine(t0: f64, bracket: (f64, f64), mode: &ScanMode, cfg: &ScanConfig) -> ZeroRecord {
    let mut s = Complex64::new(0.5, t0);
    let mut iterations = 0;
    let mut status = RefineStatus::Failed("iteration limit reached".into());
    let f = |z: Complex64| reduced_at(z.into(), mode);
    let (mut value, mut floor) = match reduced_with_error(s.into(), mode) {
        Ok(v) => v,
        Err(e) => return failed(t0, bracket, e.to_string()),
    };
    while iterations < cfg.max_iterations {
        if converged_here(value, cfg.refine_tol.max(floor)) {
            status = RefineStatus::Converged;
            break;
        }
        iterations += 1;
        let h = 1e-6 * s.im.abs().max(1.0);
        let dh = Complex64::new(0.0, h);
        let slope = match (f(s + dh), f(s - dh)) {
            (Ok(a), Ok(b)) => (a - b) / (2.0 * dh),
            (Err(e), _) | (_, Err(e)) => {
                status = RefineStatus::Failed(e.to_string());
                break;
            }
        };
        if slope.norm() == 0.0 || !slope.norm().is_finite() {
            status = RefineStatus::Failed("vanishing derivative".into());
            break;
        }
        let mut next = s - value / slope;
        if matches!(mode, ScanMode::Limit) {
            next.re = 0.5;
        }
        match reduced_with_error(next.into(), mode) {
            Ok((v, err)) => {
                floor = err;
                let stalled = (next - s).norm() <= 4.0 * f64::EPSILON * s.norm();
                s = next;
                value = v;
                if stalled {
                    status = if converged_here(value, cfg.refine_tol.max(floor)) {
                        RefineStatus::Converged
                    } else {
                        RefineStatus::Failed(format!("stalled at |f| = {:e}", value.norm()))
                    };
                    break;
                }
            }
            Err(e) => {
                status = RefineStatus::Failed(e.to_string());
                break;
            }
        }
    }
    if status == RefineStatus::Converged && !(bracket.0 < s.im && s.im < bracket.1) {
        status = RefineStatus::Failed(format!("refined t = {} left its bracket", s.im));
    }
    ZeroRecord {
        t: s.im,
        sigma: s.re,
        residual: value.norm(),
        noise_floor: floor,
        bracket,
        iterations,
        energy: eigenvalue_of(SpectralParameter::critical(s.im), 0).energy.re,
        status,
    }
}

fn converged_here(value: Complex64, tol: f64) -> bool {
    value.norm() <= tol
}

fn failed(t: f64, bracket: (f64, f64), why: String) -> ZeroRecord {
    ZeroRecord {
        t,
        sigma: 0.5,
        residual: f64::NAN,
        noise_floor: f64::NAN,
        bracket,
        iterations: 0,
        energy: -t,
        status: RefineStatus::Failed(why),
    }
}

/// Locate and refine every isolated minimum of the reduced objective on
/// the grid `t_lo, t_lo + step, ..., t_hi`. Records come back sorted by
/// `t`; candidates whose refinement fails are kept with their status.
pub fn scan_zeros(cfg: &ScanConfig, mode: &ScanMode) -> Result<Vec<ZeroRecord>> {
    cfg.validate()?;
    let count = ((cfg.t_hi - cfg.t_lo) / cfg.step + 1e-9).floor() as usize + 1;
    let grid: Vec<f64> = (0..count).map(|k| cfg.t_lo + k as f64 * cfg.step).collect();
    let moduli = grid
        .iter()
        .map(|&t| reduced_objective(t, mode).map(|v| v.norm()))
        .collect::<Result<Vec<f64>>>()?;
    let threshold = cfg.isolation * median(&moduli);
    let mut records: Vec<ZeroRecord> = Vec::new();
    for k in 1..count.saturating_sub(1) {
        let (before, here, after) = (moduli[k - 1], moduli[k], moduli[k + 1]);
        if !(here < before && here <= after && here < threshold) {
            continue;
        }
        let record = refine(grid[k], (grid[k - 1], grid[k + 1]), mode, cfg);
        let duplicate = records
            .iter()
            .any(|r| r.converged() && record.converged() && (r.t - record.t).abs() < 1e-9);
        if !duplicate {
            records.push(record);
        }
    }
    records.sort_by(|a, b| a.t.total_cmp(&b.t));
    Ok(records)
}

/// Observables tracked in a convergence study.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    /// Original variant at `y = 0` against the limit.
    Original,
    /// Tilde variant at `y = 0` against the limit.
    Tilde,
    /// Tilde variant against its first-order expansion.
    TildeCorrected,
}

impl Observable {
    pub fn label(self) -> &'static str {
        match self {
            Observable::Original => "original",
            Observable::Tilde => "tilde",
            Observable::TildeCorrected => "tilde-corrected",
        }
    }

    /// Observables reported for a boundary variant.
    pub fn for_variant(variant: Variant) -> Result<Vec<Observable>> {
        match variant {
            Variant::Original => Ok(vec![Observable::Original]),
            Variant::Tilde => Ok(vec![Observable::Tilde, Observable::TildeCorrected]),
            Variant::Limit => Err(Error::InvalidParameter(
                "the limit variant has nothing to converge".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRecord {
    pub lambda: f64,
    pub observable: Observable,
    pub value: Complex64,
    pub reference: Complex64,
    pub abs_error: f64,
}

/// Least-squares fit of `ln(abs_error)` against `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub observable: Observable,
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in `ln` units.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub records: Vec<ConvergenceRecord>,
    pub fits: Vec<RateFit>,
}

/// Least-squares line through `(x, y)` pairs: `(slope, intercept, rms)`.
pub fn fit_line(points: &[(f64, f64)]) -> Result<(f64, f64, f64)> {
    if points.len() < 2 {
        return Err(Error::InvalidParameter("a fit needs at least two points".into()));
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter("fit abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rms = (points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / k)
        .sqrt();
    Ok((slope, intercept, rms))
}

/// Boundary values at `y = 0` over ascending `lambdas`, their distance to
/// the reference, and the fitted exponential rate per observable.
pub fn convergence_study(
    s: SpectralParameter,
    n: QuantumNumber,
    lambdas: &[f64],
    variant: Variant,
) -> Result<ConvergenceStudy> {
    if lambdas.is_empty() || lambdas.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParameter("lambdas must be ascending".into()));
    }
    if lambdas[0] < 5.0 {
        return Err(Error::InvalidParameter(format!(
            "lambdas must be at least 5, got {}",
            lambdas[0]
        )));
    }
    let observables = Observable::for_variant(variant)?;
    let limit = psi_boundary_limit(s)?;
    let mut records = Vec::new();
    for &l in lambdas {
        let lambda = SqueezeParameter::new(l)?;
        for &obs in &observables {
            let (value, reference) = match obs {
                Observable::Original => {
                    (psi_boundary(0.0, s, n, lambda, Variant::Original)?.value, limit)
                }
                Observable::Tilde => (psi_boundary(0.0, s, n, lambda, Variant::Tilde)?.value, limit),
                Observable::TildeCorrected => {
                    let e = tilde_expansion_check(0.0, s, n, lambda)?;
                    (e.exact, e.first_order)
                }
            };
            records.push(ConvergenceRecord {
                lambda: l,
                observable: obs,
                value,
                reference,
                abs_error: (value - reference).norm(),
            });
        }
    }
    let mut fits = Vec::new();
    if lambdas.len() >= 2 {
        for &obs in &observables {
            let pts: Vec<(f64, f64)> = records
                .iter()
                .filter(|r| r.observable == obs && r.abs_error > 0.0)
                .map(|r| (r.lambda, r.abs_error.ln()))
                .collect();
            if pts.len() >= 2 {
                let (slope, intercept, residual) = fit_line(&pts)?;
                fits.push(RateFit {
                    observable: obs,
                    slope,
                    intercept,
                    residual,
                });
            }
        }
    }
    Ok(ConvergenceStudy { records, fits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::zeta;

    const ZEROS: [f64; 3] = [14.134725141734694, 21.022039638771555, 25.010857580145689];

    fn limit_scan(lo: f64, hi: f64, step: f64) -> Vec<ZeroRecord> {
        scan_zeros(&ScanConfig::new(lo, hi, step, 1e-10).unwrap(), &ScanMode::Limit).unwrap()
    }

    fn finite(lambda: f64) -> ScanMode {
        ScanMode::Finite {
            lambda: SqueezeParameter::new(lambda).unwrap(),
            n: 0,
        }
    }

    #[test]
    fn limit_objective_vanishes_at_first_zero() {
        assert!(boundary_objective(14.134725, &ScanMode::Limit).unwrap().norm() <= 1e-8);
    }

    #[test]
    fn reduced_objective_is_order_one_off_zero() {
        let r = reduced_objective(10.0, &ScanMode::Limit).unwrap().norm();
        assert!(r > 0.01, "{r}");
        let full = boundary_objective(10.0, &ScanMode::Limit).unwrap().norm();
        assert!(full > 0.0);
    }

    #[test]
    fn finite_objective_suppressed_at_zero() {
        let mode = finite(12.0);
        let at_zero = boundary_objective(14.134725, &mode).unwrap().norm();
        let off = boundary_objective(10.0, &mode).unwrap().norm();
        assert!(at_zero <= 1e-3 * off, "{at_zero} vs {off}");
    }

    #[test]
    fn single_zero_window() {
        let zs = limit_scan(13.0, 16.0, 0.05);
        assert_eq!(zs.len(), 1);
        assert!((zs[0].t - ZEROS[0]).abs() <= 1e-6);
        assert!(zs[0].converged());
        assert_eq!(zs[0].energy, -zs[0].t);
        assert_eq!(zs[0].sigma, 0.5);
    }

    #[test]
    fn three_zeros_below_thirty() {
        let zs = limit_scan(0.1, 30.0, 0.05);
        assert_eq!(zs.len(), 3);
        for (z, want) in zs.iter().zip(ZEROS) {
            assert!((z.t - want).abs() <= 1e-6, "{} vs {want}", z.t);
        }
    }

    #[test]
    fn empty_window_has_no_zeros() {
        assert!(limit_scan(2.0, 5.0, 0.05).is_empty());
    }

    #[test]
    fn step_halving_leaves_zero_set_unchanged() {
        let coarse = limit_scan(10.0, 33.0, 0.05);
        let fine = limit_scan(10.0, 33.0, 0.025);
        assert_eq!(coarse.len(), fine.len());
        for (a, b) in coarse.iter().zip(&fine) {
            assert!((a.t - b.t).abs() <= 1e-6);
        }
    }

    #[test]
    fn refined_zeros_satisfy_eta_and_zeta_bounds() {
        let tol = 1e-10;
        for z in limit_scan(0.1, 40.0, 0.05) {
            assert!(z.converged());
            let s = SpectralParameter::critical(z.t);
            assert!(eta(s.as_complex()).norm() <= tol);
            let factor = crate::specfun::eta_factor(s.as_complex()).norm();
            assert!(zeta(s.as_complex()).unwrap().norm() <= 10.0 * tol / factor);
            assert!(z.bracket.0 < z.t && z.t < z.bracket.1);
        }
    }

    #[test]
    fn brackets_are_isolated() {
        let zs = limit_scan(0.1, 50.0, 0.05);
        for (i, a) in zs.iter().enumerate() {
            for (j, b) in zs.iter().enumerate() {
                if i != j {
                    assert!(!(a.bracket.0 < b.t && b.t < a.bracket.1));
                }
            }
        }
    }

    #[test]
    fn finite_scan_matches_limit_count() {
        let cfg = ScanConfig::new(0.1, 30.0, 0.05, 1e-10).unwrap();
        let zs = scan_zeros(&cfg, &finite(12.0)).unwrap();
        assert_eq!(zs.len(), 3, "{zs:?}");
        for (z, want) in zs.iter().zip(ZEROS) {
            assert!(z.converged(), "{z:?}");
            assert!((z.t - want).abs() < 1e-3, "{} vs {want}", z.t);
        }
    }

    #[test]
    fn config_rejects_bad_ranges() {
        assert!(ScanConfig::new(0.0, 1.0, 0.1, 1e-10).is_err());
        assert!(ScanConfig::new(3.0, 2.0, 0.1, 1e-10).is_err());
        assert!(ScanConfig::new(1.0, 2.0, 0.0, 1e-10).is_err());
        assert!(ScanConfig::new(1.0, 2.0, 0.1, 0.0).is_err());
    }

    #[test]
    fn tilde_rates() {
        let s = SpectralParameter::critical(10.0);
        let study = convergence_study(s, 0, &[8.0, 10.0, 12.0], Variant::Tilde).unwrap();
        let slope = |o| study.fits.iter().find(|f| f.observable == o).unwrap().slope;
        assert!((slope(Observable::Tilde) + 1.0).abs() <= 0.05);
        assert!((slope(Observable::TildeCorrected) + 2.0).abs() <= 0.2);
    }

    #[test]
    fn original_errors_decrease() {
        let s = SpectralParameter::critical(10.0);
        let study = convergence_study(s, 0, &[8.0, 10.0, 12.0, 14.0], Variant::Original).unwrap();
        let errs: Vec<f64> = study.records.iter().map(|r| r.abs_error).collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
        for r in &study.records {
            assert_eq!(r.abs_error, (r.value - r.reference).norm());
        }
    }

    #[test]
    fn study_rejects_bad_lambdas() {
        let s = SpectralParameter::critical(10.0);
        assert!(convergence_study(s, 0, &[10.0, 8.0], Variant::Tilde).is_err());
        assert!(convergence_study(s, 0, &[4.0, 8.0], Variant::Tilde).is_err());
        assert!(convergence_study(s, 0, &[8.0], Variant::Limit).is_err());
    }

    #[test]
    fn line_fit_recovers_exact_line() {
        let (m, c, r) = fit_line(&[(1.0, 3.0), (2.0, 1.0), (4.0, -3.0)]).unwrap();
        assert!((m + 2.0).abs() < 1e-14 && (c - 5.0).abs() < 1e-14 && r < 1e-14);
    }
}
