use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Gamma has a pole at the nonpositive integer {0}")]
    GammaPole(f64),
    #[error("|Gamma({re} + {im}i)| exceeds the representable range")]
    GammaOverflow { re: f64, im: f64 },
    #[error("zeta has a pole at s = 1")]
    ZetaPole,
    #[error("1 - 2^(1-s) vanishes at s = {re} + {im}i; the removable point is not evaluated")]
    EtaFactorZero { re: f64, im: f64 },
    #[error("I0({0}) overflows")]
    BesselOverflow(f64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("quadrature did not converge: error estimate {estimate:e} above tolerance {tolerance:e} at {panels} panels")]
    QuadratureNotConverged {
        estimate: f64,
        tolerance: f64,
        panels: usize,
    },
    #[error("series truncation did not converge: last correction {estimate:e} after {terms} terms")]
    TruncationNotConverged { estimate: f64, terms: usize },
    #[error("chi_{n}({y}) = {value:e} is too close to a node for the eigen-ratio")]
    NearNode { n: usize, y: f64, value: f64 },
    #[error("finite-difference step too large: Richardson disagreement {0:e}")]
    StepTooLarge(f64),
    #[error("overflow guard: {0}")]
    OverflowGuard(String),
}

impl Error {
    /// True for failures of a convergence loop, as opposed to bad inputs.
    pub fn is_non_convergence(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNotConverged { .. } | Error::TruncationNotConverged { .. }
        )
    }
}
