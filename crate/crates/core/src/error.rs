use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("algebra dimension {0} outside the supported range 2..=8")]
    UnsupportedDimension(usize),

    #[error("structure constants not antisymmetric at ({i},{j},{k}): c[i][j][k] + c[j][i][k] = {value:e}")]
    NotAntisymmetric {
        i: usize,
        j: usize,
        k: usize,
        value: f64,
    },

    #[error("Jacobi identity violated: residual {residual:e} at basis triple ({i},{j},{k})")]
    JacobiViolation {
        residual: f64,
        i: usize,
        j: usize,
        k: usize,
    },

    #[error("Gram matrix is not symmetric: |g[{i}][{j}] - g[{j}][{i}]| = {value:e}")]
    GramNotSymmetric { i: usize, j: usize, value: f64 },

    #[error("Gram matrix is not positive definite: smallest eigenvalue {smallest_eigenvalue:e}")]
    NotPositiveDefinite { smallest_eigenvalue: f64 },

    #[error("subspace basis is degenerate: smallest singular value {smallest_singular_value:e}")]
    DegenerateSubspace { smallest_singular_value: f64 },

    #[error("vectors span a degenerate plane: Gram determinant {gram_det:e}")]
    DegeneratePlane { gram_det: f64 },

    #[error("expected a unit vector, got norm {norm}")]
    NonUnitVector { norm: f64 },

    #[error("normal orbit is not a helix of order two (Frenet order {order})")]
    NotHelixOrderTwo { order: usize },

    #[error(
        "orthogonal complement of the osculating space is not an ideal: residual {residual:e}"
    )]
    IdealResidualExceeded { residual: f64 },

    #[error("not recognized as metric sl(2): {reason}")]
    NotRecognized { reason: String },

    #[error("hyperplane is not totally geodesic: residual {residual:e}")]
    NotTotallyGeodesic { residual: f64 },

    #[error("metric is degenerate at the query point: {reason}")]
    MetricDegenerate { reason: String },

    #[error("geodesic step rejected at t = {t}: relative speed drift {drift:e}")]
    StepRejected { t: f64, drift: f64 },

    #[error("level-set gradient is degenerate: norm {norm:e}")]
    GradientDegenerate { norm: f64 },

    #[error("point is not on the hypersurface: |h(x)| = {value:e}")]
    NotOnSurface { value: f64 },

    #[error("curve is irregular: {reason}")]
    IrregularCurve { reason: String },

    #[error("twisting function is non-positive: exp(-phi) = {value:e}")]
    NonPositiveTwist { value: f64 },

    #[error("invalid twisted product data: {0}")]
    InvalidTwistedSpec(String),

    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Variant name, as it appears in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::UnsupportedDimension(_) => "UnsupportedDimension",
            Error::NotAntisymmetric { .. } => "NotAntisymmetric",
            Error::JacobiViolation { .. } => "JacobiViolation",
            Error::GramNotSymmetric { .. } => "GramNotSymmetric",
            Error::NotPositiveDefinite { .. } => "NotPositiveDefinite",
            Error::DegenerateSubspace { .. } => "DegenerateSubspace",
            Error::DegeneratePlane { .. } => "DegeneratePlane",
            Error::NonUnitVector { .. } => "NonUnitVector",
            Error::NotHelixOrderTwo { .. } => "NotHelixOrderTwo",
            Error::IdealResidualExceeded { .. } => "IdealResidualExceeded",
            Error::NotRecognized { .. } => "NotRecognized",
            Error::NotTotallyGeodesic { .. } => "NotTotallyGeodesic",
            Error::MetricDegenerate { .. } => "MetricDegenerate",
            Error::StepRejected { .. } => "StepRejected",
            Error::GradientDegenerate { .. } => "GradientDegenerate",
            Error::NotOnSurface { .. } => "NotOnSurface",
            Error::IrregularCurve { .. } => "IrregularCurve",
            Error::NonPositiveTwist { .. } => "NonPositiveTwist",
            Error::InvalidTwistedSpec(_) => "InvalidTwistedSpec",
            Error::Syntax(_) => "Syntax",
            Error::UnknownName(_) => "UnknownName",
            Error::BadParams(_) => "BadParams",
            Error::Io(_) => "Io",
        }
    }

    /// True when the computation ran and refuted a geometric hypothesis,
    /// as opposed to being unable to run.
    pub fn is_certification_failure(&self) -> bool {
        matches!(
            self,
            Error::NotTotallyGeodesic { .. }
                | Error::NotHelixOrderTwo { .. }
                | Error::IdealResidualExceeded { .. }
                | Error::NotRecognized { .. }
                | Error::StepRejected { .. }
        )
    }
}
