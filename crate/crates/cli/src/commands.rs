//! Scan, boundary and convergence commands.

use bkzeta::spectra::{convergence_study, scan_zeros, RefineStatus};
use bkzeta::waveform::{psi_boundary, Variant};
use bkzeta::SpectralParameter;

use crate::config::RunConfig;
use crate::error::{CliError, EXIT_NUMERICAL, EXIT_OK};
use crate::output::{Cell, Summary, Table};

pub const SCAN_COLUMNS: &[&str] = &[
    "t",
    "residual",
    "bracket_lo",
    "bracket_hi",
    "iterations",
    "energy",
    "sigma",
    "noise_floor",
    "status",
];

pub const BOUNDARY_COLUMNS: &[&str] = &[
    "x", "y", "t", "lambda", "n", "variant", "re", "im", "abs", "error",
];

pub const CONVERGE_COLUMNS: &[&str] = &[
    "lambda",
    "observable",
    "re",
    "im",
    "ref_re",
    "ref_im",
    "abs_error",
];

/// Zero table; the exit code flags any candidate whose refinement failed.
pub fn scan(cfg: &RunConfig) -> Result<(Table, i32), CliError> {
    let (scan, mode) = cfg.scan_settings()?;
    let records = scan_zeros(&scan, &mode)?;
    let mut table = Table::new(SCAN_COLUMNS);
    let mut code = EXIT_OK;
    for r in &records {
        let status = match &r.status {
            RefineStatus::Converged => "converged".to_string(),
            RefineStatus::Failed(why) => {
                code = EXIT_NUMERICAL;
                format!("failed: {why}")
            }
        };
        table.push(vec![
            r.t.into(),
            r.residual.into(),
            r.bracket.0.into(),
            r.bracket.1.into(),
            r.iterations.into(),
            r.energy.into(),
            r.sigma.into(),
            r.noise_floor.into(),
            status.into(),
        ]);
    }
    Ok((table, code))
}

/// Boundary samples over the `t x lambda x y` grid at `x = 0`.
pub fn boundary(cfg: &RunConfig) -> Result<(Table, i32), CliError> {
    let ts = cfg.list("t")?;
    let ys = cfg.list("y")?;
    if let Some(y) = ys.iter().find(|&&y| y < 0.0) {
        return Err(CliError::Config(format!("'y' must be nonnegative, got {y}")));
    }
    let lambdas = cfg.lambdas()?;
    let n = cfg.quantum_number()?;
    let variant = cfg.variant()?;
    let mut table = Table::new(BOUNDARY_COLUMNS);
    for &t in &ts {
        let s = SpectralParameter::critical(t);
        for &lambda in &lambdas {
            for &y in &ys {
                let w = psi_boundary(y, s, n, lambda, variant)?;
                table.push(vec![
                    w.x.into(),
                    w.y.into(),
                    t.into(),
                    lambda.lambda.into(),
                    n.into(),
                    variant.label().into(),
                    w.value.re.into(),
                    w.value.im.into(),
                    w.value.norm().into(),
                    w.error.into(),
                ]);
            }
        }
    }
    Ok((table, EXIT_OK))
}

/// Convergence records plus one fitted-rate summary per observable.
pub fn converge(cfg: &RunConfig) -> Result<(Table, i32), CliError> {
    let ts = cfg.list("t")?;
    if ts.len() != 1 {
        return Err(CliError::Config("converge takes a single t".into()));
    }
    let lambdas = cfg.list("lambda")?;
    if lambdas.windows(2).any(|w| !(w[0] < w[1])) || lambdas.iter().any(|&l| l < 5.0) {
        return Err(CliError::Config(
            "'lambda' must be ascending with every value at least 5".into(),
        ));
    }
    let variant = cfg.variant()?;
    if variant == Variant::Limit {
        return Err(CliError::Config("converge needs variant original or tilde".into()));
    }
    cfg.lambdas()?;
    let study = convergence_study(
        SpectralParameter::critical(ts[0]),
        cfg.quantum_number()?,
        &lambdas,
        variant,
    )?;
    let mut table = Table::new(CONVERGE_COLUMNS);
    for r in &study.records {
        table.push(vec![
            r.lambda.into(),
            r.observable.label().into(),
            r.value.re.into(),
            r.value.im.into(),
            r.reference.re.into(),
            r.reference.im.into(),
            r.abs_error.into(),
        ]);
    }
    for f in &study.fits {
        table.summaries.push(Summary {
            kind: "fit",
            fields: vec![
                ("observable", Cell::from(f.observable.label())),
                ("slope", f.slope.into()),
                ("intercept", f.intercept.into()),
                ("residual", f.residual.into()),
            ],
        });
    }
    Ok((table, EXIT_OK))
}
