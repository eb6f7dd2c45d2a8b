use thiserror::Error;

/// Errors raised across the crate.
///
/// The variants are grouped by how a caller is expected to react: parameter
/// errors are the caller's fault, domain errors mean a numeric evaluation was
/// requested outside the region where it is trusted.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero input")]
    ZeroInput,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate covering: {0}")]
    DegenerateCovering(String),
    #[error("exact mode required: {0}")]
    ExactModeRequired(String),
    #[error("pole at {0}")]
    Pole(String),
    #[error("outside convergence region: |x| = {abs_x:.6e}, limit = {limit:.6e}")]
    OutsideConvergence { abs_x: f64, limit: f64 },
    #[error("series did not converge within {0} terms")]
    NoConvergence(usize),
    #[error("branch cut violation: {0}")]
    BranchCut(String),
    #[error("irregular singularity: {0}")]
    IrregularSingularity(String),
    #[error("exponents are not rational: {0}")]
    IrrationalExponents(String),
    #[error("unknown identity: {0}")]
    UnknownIdentity(String),
    #[error("binding outside domain: {0}")]
    BindingOutsideDomain(String),
}

impl Error {
    /// True for errors caused by evaluating outside a trusted numeric domain
    /// (convergence disc, branch cuts, poles).
    pub fn is_numeric_domain(&self) -> bool {
        matches!(
            self,
            Error::OutsideConvergence { .. }
                | Error::NoConvergence(_)
                | Error::BranchCut(_)
                | Error::Pole(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
