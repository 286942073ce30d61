use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the numerical pipeline.
///
/// Variant names are stable: the CLI reports them verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not Hermitian (defect {defect:.3e}, allowed {allowed:.3e})")]
    NotHermitian { defect: f64, allowed: f64 },
    #[error("matrix is not normal (defect {defect:.3e}, allowed {allowed:.3e})")]
    NotNormal { defect: f64, allowed: f64 },
    #[error("eigensolver did not converge (residual {residual:.3e} after {sweeps} sweeps)")]
    NoConvergence { residual: f64, sweeps: usize },
    #[error("vectors are rank deficient at index {index}")]
    RankDeficient { index: usize },
    #[error("matrix is singular to working precision (pivot {pivot:.3e} at column {column})")]
    Singular { pivot: f64, column: usize },

    #[error("segments overlap: segment {first} and segment {second}")]
    OverlappingSegments { first: usize, second: usize },
    #[error("invalid segment: {0}")]
    InvalidSegment(String),
    #[error("structure violation at t = {t}: {detail}")]
    StructureViolation { t: f64, detail: String },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("z = {re}{im:+}i is within tolerance of the spectrum")]
    SpectrumHit { re: f64, im: f64 },
    #[error("an eigenvalue lies on the contour at t = {t} (distance {distance:.3e})")]
    EigenvalueOnContour { t: f64, distance: f64 },
    #[error("quadrature did not settle with {nodes} nodes (last change {last_change:.3e})")]
    QuadratureStall { nodes: usize, last_change: f64 },
    #[error("projector rank changed from {rank_before} to {rank_after} in [{t_lo}, {t_hi}]")]
    ContourBreach { t_lo: f64, t_hi: f64, rank_before: usize, rank_after: usize },
    #[error("projector defect {defect:.3e} exceeds tolerance")]
    ProjectorDefect { defect: f64 },
    #[error("invalid contour: {0}")]
    InvalidContour(String),
    #[error("frame does not span an invariant subspace (defect {defect:.3e})")]
    NotInvariant { defect: f64 },

    #[error("tuple lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("tuple length {0} exceeds the supported maximum")]
    TupleTooLong(usize),
    #[error("perturbation bound violated: ratio {ratio}")]
    BoundViolated { ratio: f64 },

    #[error("eigenvector blocks do not align near t = {t} (overlap {overlap:.3e})")]
    ClusterMismatch { t: f64, overlap: f64 },

    #[error("polynomial is not hyperbolic at t = {t}")]
    NotHyperbolic { t: f64 },
    #[error("branching exponent could not be resolved: {0}")]
    ExponentUnresolved(String),
    #[error("operation needs polynomial coefficients")]
    NotPolynomial,

    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable variant name.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonFinite => "NonFinite",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NotNormal { .. } => "NotNormal",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::Singular { .. } => "Singular",
            Error::OverlappingSegments { .. } => "OverlappingSegments",
            Error::InvalidSegment(_) => "InvalidSegment",
            Error::StructureViolation { .. } => "StructureViolation",
            Error::InvalidGrid(_) => "InvalidGrid",
            Error::SpectrumHit { .. } => "SpectrumHit",
            Error::EigenvalueOnContour { .. } => "EigenvalueOnContour",
            Error::QuadratureStall { .. } => "QuadratureStall",
            Error::ContourBreach { .. } => "ContourBreach",
            Error::ProjectorDefect { .. } => "ProjectorDefect",
            Error::InvalidContour(_) => "InvalidContour",
            Error::NotInvariant { .. } => "NotInvariant",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::TupleTooLong(_) => "TupleTooLong",
            Error::BoundViolated { .. } => "BoundViolated",
            Error::ClusterMismatch { .. } => "ClusterMismatch",
            Error::NotHyperbolic { .. } => "NotHyperbolic",
            Error::ExponentUnresolved(_) => "ExponentUnresolved",
            Error::NotPolynomial => "NotPolynomial",
            Error::Config(_) => "Config",
            Error::Io(_) => "Io",
        }
    }

    /// True for configuration and input-format errors (as opposed to numerical failures).
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_) | Error::Io(_) | Error::InvalidGrid(_) | Error::InvalidContour(_) | Error::InvalidSegment(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
