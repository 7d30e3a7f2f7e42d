use thiserror::Error;

/// Errors raised by ring arithmetic, bundle constructions and class computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{len} coefficients do not fit in the ring of P^{ambient_dim} (at most {} allowed)", ambient_dim + 1)]
    TooManyCoefficients { ambient_dim: usize, len: usize },

    #[error("ambient dimension mismatch: P^{left} vs P^{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("class has zero constant term and is not invertible")]
    NotAUnit,

    #[error("class is not concentrated in degree one")]
    NotDegreeOne,

    #[error("component {index} out of range for P^{ambient_dim}")]
    ComponentOutOfRange { index: i64, ambient_dim: usize },

    #[error("invalid coefficient {0:?}")]
    BadCoefficient(String),

    #[error("ambient dimension must be at least {min}, got {got}")]
    AmbientTooSmall { min: usize, got: usize },

    #[error("total Chern class must have constant term 1")]
    TotalNotUnit,

    #[error("rank {rank} bundle has nonzero Chern class in degree {degree}")]
    RankExceeded { rank: usize, degree: usize },

    #[error("cannot intersect {count} hypersurfaces in P^{ambient_dim}")]
    TooManyHypersurfaces { count: usize, ambient_dim: usize },

    #[error("hypersurface degree must be positive, got {0}")]
    NonPositiveDegree(i64),

    #[error("empty input list")]
    Empty,

    #[error("input lists have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("linear subspace of dimension {k} does not fit in P^{ambient_dim}")]
    SubspaceOutOfRange { k: i64, ambient_dim: usize },

    #[error("missing data: {0}")]
    MissingData(String),

    #[error("route {route} produced a non-integral class for {variety}: {class}")]
    NonIntegral {
        route: String,
        variety: String,
        class: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
