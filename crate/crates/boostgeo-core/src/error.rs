use thiserror::Error;

/// Errors produced by curve construction, evaluation and fitting.
#[derive(Debug, Clone, Error)]
pub enum GeomError {
    #[error("s = {s} outside declared domain [{min}, {max}]")]
    OutOfDomain { s: f64, min: f64, max: f64 },

    #[error("rotation radius must stay positive: alpha1({s}) = {value}")]
    Singularity { s: f64, value: f64 },

    #[error(
        "quadrature failed on worst interval [{lo}, {hi}]: \
         estimated error {achieved:e} exceeds budget {requested:e}"
    )]
    Integration {
        lo: f64,
        hi: f64,
        achieved: f64,
        requested: f64,
    },

    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    #[error("coefficients carry no s-derivatives (a', b', c', d' required)")]
    MissingDerivatives,

    #[error("not marginally trapped for this sign: |(b+c) + eps*d| = {defect:e}")]
    NotMarginallyTrapped { defect: f64 },

    #[error("degenerate sample set: {0}")]
    DegenerateSamples(String),

    #[error("stencil of half-width {h} at s = {s} leaves domain [{min}, {max}]")]
    StencilOutsideDomain { s: f64, h: f64, min: f64, max: f64 },

    #[error("curve table: {0}")]
    Table(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
