//! Invariant suites run by `verify`.

use bkzeta::oracles::{
    apply_bk_operator, apply_number_operator, default_bk_step, eta_naive, NUMBER_OPERATOR_STEP,
};
use bkzeta::quad::{integrate_singular_log, QuadratureSpec};
use bkzeta::spectra::{
    boundary_objective, convergence_study, scan_zeros, Observable, ScanConfig, ScanMode,
};
use bkzeta::specfun::{chi, eta, gamma_complex, zeta};
use bkzeta::waveform::{
    eigenvalue_of, mehler_closed, mehler_series, overlap_bare, psi_boundary, psi_boundary_limit,
    tilde_expansion_check, varphi_zero, SqueezeParameter, Variant,
};
use bkzeta::{Complex64, Error, SpectralParameter, TruncationPolicy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::output::{Cell, Summary, Table};

pub const SUITES: &[&str] = &[
    "specfun", "quad", "mehler", "overlap", "eigen", "boundary", "tilde", "spectra",
];

pub const VERIFY_COLUMNS: &[&str] = &["suite", "name", "measured", "tolerance", "status"];

/// Reference zeros of the eta function on the critical line.
pub const REFERENCE_ZEROS: [f64; 10] = [
    14.134725141734693790,
    21.022039638771554993,
    25.010857580145688763,
    30.424876125859513210,
    32.935061587739189691,
    37.586178158825671257,
    40.918719012147495187,
    43.327073280914999519,
    48.005150881167159728,
    49.773832477672302182,
];

/// First zero rounded to the precision used throughout the examples.
pub const FIRST_ZERO: f64 = 14.134725;

/// Critical-line points for the eta integral identity.
pub const ETA_INTEGRAL_POINTS: [f64; 5] = [0.5, 2.0, 5.0, 7.5, 10.0];

/// Critical-line points for the boundary limit identity.
pub const BOUNDARY_POINTS: [f64; 5] = [5.0, 10.0, FIRST_ZERO, 18.0, 21.022040];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub error: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.measured <= self.tolerance
    }

    fn status(&self) -> String {
        match &self.error {
            Some(e) => format!("error: {e}"),
            None if self.passed() => "pass".into(),
            None => "fail".into(),
        }
    }
}

type Measured = bkzeta::Result<f64>;

fn check(suite: &'static str, name: impl Into<String>, tol: f64, m: Measured) -> Check {
    let (measured, error) = match m {
        Ok(v) => (if v.is_nan() { f64::INFINITY } else { v }, None),
        Err(e) => (f64::NAN, Some(e.to_string())),
    };
    Check {
        suite,
        name: name.into(),
        measured,
        tolerance: tol,
        error,
    }
}

pub fn lam(l: f64) -> SqueezeParameter {
    SqueezeParameter::new(l).expect("built-in lambda is valid")
}

/// Max relative error of the Mehler series over
/// `t in {0.1, ..., 0.9}`, `y, y' in {0.5, 1, 2, 5}`.
pub fn mehler_grid_error() -> Measured {
    let pts = [0.5, 1.0, 2.0, 5.0];
    let policy = TruncationPolicy::new(2000, 1e-16, 1e-12)?;
    let mut worst = 0.0f64;
    for k in 1..=9 {
        let t = k as f64 / 10.0;
        for &y in &pts {
            for &yp in &pts {
                let s = mehler_series(y, yp, t, &policy)?.value;
                let c = mehler_closed(y, yp, t)?;
                worst = worst.max((s - c).abs() / c.abs());
            }
        }
    }
    Ok(worst)
}

/// `|int u^(s-1) e^-u / (1 + e^-u) du - Gamma(s) eta(s)| / |Gamma(s) eta(s)|`.
pub fn eta_integral_error(t: f64) -> Measured {
    let s = Complex64::new(0.5, t);
    let spec = QuadratureSpec::endpoint_singular().with_tolerance(1e-18);
    let est = integrate_singular_log(|u| Complex64::new(1.0 / (1.0 + u.exp()), 0.0), s, &spec)?;
    let want = gamma_complex(s)? * eta(s);
    Ok((est.value - want).norm() / want.norm())
}

/// `|overlap_bare(m, 0, 20) - 2 (-1)^m|`.
pub fn overlap_limit_error(m: usize) -> Measured {
    let v = overlap_bare(m, 0, lam(20.0))?.value;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((v - 2.0 * sign).abs())
}

/// Worst `|N chi_n - n chi_n|` over sample points away from the nodes.
pub fn number_operator_error(n: usize) -> Measured {
    let mut worst = 0.0f64;
    let mut hits = 0;
    for &y in &[0.45, 1.3, 2.9, 4.1, 6.7] {
        match apply_number_operator(n, y, NUMBER_OPERATOR_STEP) {
            Ok(v) => {
                worst = worst.max((v - n as f64).abs());
                hits += 1;
            }
            Err(Error::NearNode { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if hits == 0 {
        return Err(Error::InvalidParameter(format!("every sample point is a node of L_{n}")));
    }
    Ok(worst)
}

/// Worst `|H phi_s / phi_s - i (s - 1/2)|` over `count` seeded random
/// critical-line points.
pub fn bk_operator_error(count: usize, seed: u64) -> Measured {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..count {
        let s = SpectralParameter::critical(rng.gen_range(0.0..40.0));
        let x = rng.gen_range(0.3..5.0);
        let v = apply_bk_operator(s, x, default_bk_step(s, x))?;
        worst = worst.max((v - eigenvalue_of(s, 0).energy).norm());
    }
    Ok(worst)
}

/// `|psi_boundary(0; lambda, n = 0) - 2 phi_s(0) eta(s)|` relative to
/// `max(|2 phi_s(0) eta(s)|, 0.01)`.
pub fn boundary_limit_error(t: f64, lambda: f64) -> Measured {
    let s = SpectralParameter::critical(t);
    let limit = psi_boundary_limit(s)?;
    let finite = psi_boundary(0.0, s, 0, lam(lambda), Variant::Original)?.value;
    Ok((finite - limit).norm() / limit.norm().max(0.01))
}

/// Same deviation relative to `|2 phi_s(0)|`, the natural scale of the
/// boundary value.
pub fn boundary_reduced_error(t: f64, lambda: f64) -> Measured {
    let s = SpectralParameter::critical(t);
    let limit = psi_boundary_limit(s)?;
    let finite = psi_boundary(0.0, s, 0, lam(lambda), Variant::Original)?.value;
    Ok((finite - limit).norm() / (2.0 * varphi_zero(s)?.norm()))
}

/// `|Psi(0, y)| / |Psi(0, 0)|` for the original variant at `n = 0`.
pub fn confinement_ratio(t: f64, lambda: f64, y: f64) -> Measured {
    let s = SpectralParameter::critical(t);
    let at = |y| psi_boundary(y, s, 0, lam(lambda), Variant::Original).map(|w| w.value.norm());
    Ok(at(y)? / at(0.0)?)
}

/// Fitted rates of the tilde study at `t = 10`, `n = 0`, `lambda in {8, 10, 12}`.
pub fn tilde_slopes() -> bkzeta::Result<(f64, f64)> {
    let study = convergence_study(
        SpectralParameter::critical(10.0),
        0,
        &[8.0, 10.0, 12.0],
        Variant::Tilde,
    )?;
    let slope = |o| {
        study
            .fits
            .iter()
            .find(|f| f.observable == o)
            .map(|f| f.slope)
            .ok_or_else(|| Error::InvalidParameter("missing fit".into()))
    };
    Ok((slope(Observable::Tilde)?, slope(Observable::TildeCorrected)?))
}

/// Relative mismatch between the measured first-order coefficient
/// `(exact - zero_order) e^lambda` and its predicted value at `y = 0`.
pub fn tilde_coefficient_error(t: f64, n: usize, lambda: f64) -> Measured {
    let l = lam(lambda);
    let e = tilde_expansion_check(0.0, SpectralParameter::critical(t), n, l)?;
    let measured = (e.exact - e.zero_order) / l.contraction();
    let predicted = (e.first_order - e.zero_order) / l.contraction();
    Ok((measured - predicted).norm() / predicted.norm())
}

/// Worst distance of scanned zeros from the reference values, or infinity
/// when the count differs.
pub fn scan_error(lo: f64, hi: f64, step: f64, mode: &ScanMode) -> Measured {
    let cfg = ScanConfig::new(lo, hi, step, 1e-10)?;
    let found = scan_zeros(&cfg, mode)?;
    let want: Vec<f64> = REFERENCE_ZEROS
        .iter()
        .copied()
        .filter(|&z| lo < z && z < hi)
        .collect();
    if found.len() != want.len() || found.iter().any(|z| !z.converged()) {
        return Ok(f64::INFINITY);
    }
    Ok(found
        .iter()
        .zip(&want)
        .map(|(z, w)| (z.t - w).abs())
        .fold(0.0, f64::max))
}

fn gamma_recurrence_error(count: usize, seed: u64) -> Measured {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..count {
        let z = Complex64::new(rng.gen_range(0.1..3.0), rng.gen_range(-30.0..30.0));
        let lhs = gamma_complex(z + 1.0)?;
        let rhs = z * gamma_complex(z)?;
        worst = worst.max((lhs - rhs).norm() / rhs.norm());
    }
    Ok(worst)
}

fn suite_checks(suite: &'static str) -> Vec<Check> {
    let c = |name: String, tol: f64, m: Measured| check(suite, name, tol, m);
    match suite {
        "specfun" => {
            let first = SpectralParameter::critical(FIRST_ZERO);
            vec![
                c("eta at first zero".into(), 1e-6, Ok(eta(first.as_complex()).norm())),
                c(
                    "zeta at second zero".into(),
                    1e-6,
                    zeta(Complex64::new(0.5, 21.022040)).map(|z| z.norm()),
                ),
                c("gamma recurrence".into(), 1e-10, gamma_recurrence_error(100, 7)),
                c(
                    "chi_0(2) against exp(-1)".into(),
                    1e-15,
                    Ok((chi(0, 2.0) - (-1.0f64).exp()).abs()),
                ),
                c(
                    "direct eta sum at first zero".into(),
                    1e-4,
                    eta_naive(first, 1_000_000).map(|r| r.value.norm()),
                ),
            ]
        }
        "quad" => ETA_INTEGRAL_POINTS
            .iter()
            .map(|&t| c(format!("eta integral t={t}"), 1e-8, eta_integral_error(t)))
            .collect(),
        "mehler" => vec![c("series against closed form".into(), 1e-8, mehler_grid_error())],
        "overlap" => (0..=10)
            .map(|m| c(format!("bare overlap m={m} lambda=20"), 1e-6, overlap_limit_error(m)))
            .collect(),
        "eigen" => {
            let mut v: Vec<Check> = (0..=8)
                .map(|n| c(format!("number operator n={n}"), 1e-5, number_operator_error(n)))
                .collect();
            v.push(c("dilation operator, 20 points".into(), 1e-4, bk_operator_error(20, 11)));
            v
        }
        "boundary" => {
            let mut v = vec![c(
                "limit objective at first zero".into(),
                1e-8,
                boundary_objective(FIRST_ZERO, &ScanMode::Limit).map(|z| z.norm()),
            )];
            for &t in &BOUNDARY_POINTS {
                v.push(c(
                    format!("lambda=14 against limit t={t}"),
                    1e-3,
                    boundary_limit_error(t, 14.0),
                ));
                v.push(c(
                    format!("lambda=14 against limit on phi scale t={t}"),
                    1e-3,
                    boundary_reduced_error(t, 14.0),
                ));
            }
            let decay = [8.0, 10.0, 12.0, 14.0]
                .iter()
                .map(|&l| confinement_ratio(10.0, l, 0.5))
                .collect::<bkzeta::Result<Vec<f64>>>()
                .map(|r| r.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max));
            v.push(c("confinement ratio shrinks with lambda".into(), 1.0, decay));
            v
        }
        "tilde" => {
            let slopes = tilde_slopes();
            vec![
                c(
                    "leading rate slope +1".into(),
                    0.05,
                    slopes.clone().map(|s| (s.0 + 1.0).abs()),
                ),
                c(
                    "corrected remainder slope +2".into(),
                    0.2,
                    slopes.map(|s| (s.1 + 2.0).abs()),
                ),
                c(
                    "first-order coefficient".into(),
                    0.03,
                    tilde_coefficient_error(10.0, 0, 12.0),
                ),
            ]
        }
        "spectra" => vec![
            c("limit zeros on (0.1, 30)".into(), 1e-6, scan_error(0.1, 30.0, 0.05, &ScanMode::Limit)),
            c(
                "no zeros on (2, 5)".into(),
                0.0,
                ScanConfig::new(2.0, 5.0, 0.05, 1e-10)
                    .and_then(|cfg| scan_zeros(&cfg, &ScanMode::Limit))
                    .map(|z| z.len() as f64),
            ),
            c(
                "finite lambda=12 zeros on (0.1, 30)".into(),
                1e-4,
                scan_error(
                    0.1,
                    30.0,
                    0.05,
                    &ScanMode::Finite {
                        lambda: lam(12.0),
                        n: 0,
                    },
                ),
            ),
        ],
        _ => Vec::new(),
    }
}

/// Run the selected suites. A tolerance override replaces every
/// built-in tolerance.
pub fn run_suites(only: Option<&str>, tol: Option<f64>) -> Vec<Check> {
    SUITES
        .iter()
        .filter(|s| only.is_none_or(|o| o == **s))
        .flat_map(|s| suite_checks(s))
        .map(|mut c| {
            if let Some(t) = tol {
                c.tolerance = t;
            }
            c
        })
        .collect()
}

pub fn report(checks: &[Check]) -> Table {
    let mut table = Table::new(VERIFY_COLUMNS);
    for c in checks {
        table.push(vec![
            c.suite.into(),
            c.name.clone().into(),
            c.measured.into(),
            c.tolerance.into(),
            c.status().into(),
        ]);
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    table.summaries.push(Summary {
        kind: "summary",
        fields: vec![
            ("passed", Cell::from(passed)),
            ("failed", Cell::from(checks.len() - passed)),
        ],
    });
    table
}

/// Aligned plain-text table for a terminal.
pub fn human_table(checks: &[Check]) -> String {
    let mut out = format!(
        "{:<9} {:<44} {:>22} {:>22}  {}\n",
        "suite", "check", "measured", "tolerance", "status"
    );
    for c in checks {
        out.push_str(&format!(
            "{:<9} {:<44} {:>22} {:>22}  {}\n",
            c.suite,
            c.name,
            crate::output::fmt_num(c.measured),
            crate::output::fmt_num(c.tolerance),
            c.status()
        ));
    }
    out
}
