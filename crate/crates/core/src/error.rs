use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// m in {-1, 0, 1}: the antiderivatives pick up logarithms.
    #[error("ExcludedExponent: m = {m} is excluded (m must not be -1, 0 or 1)")]
    ExcludedExponent { m: f64 },

    #[error("BranchDomain: {0}")]
    BranchDomain(String),

    #[error("SingularPoint: {0}")]
    SingularPoint(String),

    #[error("DegenerateNormal: |<v,v>| = {norm:e} is below tolerance {tol:e}")]
    DegenerateNormal { norm: f64, tol: f64 },

    #[error("DomainEdge: stencil around ({s}, {t}) leaves the patch domain")]
    DomainEdge { s: f64, t: f64 },

    #[error("PathThroughSingularity: integration path passes within {tol:e} of zeta = 0")]
    PathThroughSingularity { tol: f64 },

    #[error("EmptyRealizableDomain: {0}")]
    EmptyRealizableDomain(String),

    #[error("NonFinite: {0}")]
    NonFinite(String),

    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),

    #[error("IoFailure: {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Short variant name, used as the leading token of CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ExcludedExponent { .. } => "ExcludedExponent",
            Error::BranchDomain(_) => "BranchDomain",
            Error::SingularPoint(_) => "SingularPoint",
            Error::DegenerateNormal { .. } => "DegenerateNormal",
            Error::DomainEdge { .. } => "DomainEdge",
            Error::PathThroughSingularity { .. } => "PathThroughSingularity",
            Error::EmptyRealizableDomain(_) => "EmptyRealizableDomain",
            Error::NonFinite(_) => "NonFinite",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Io { .. } => "IoFailure",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
