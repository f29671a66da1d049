use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {value} outside the supported range (|z| <= {limit})")]
    Domain { value: f64, limit: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index sets differ: {0}")]
    IndexMismatch(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vectors are not orthonormal: <v{i}, v{j}> = {value}")]
    NotOrthonormal { i: usize, j: usize, value: f64 },

    #[error("metric is not invariant: d({x}+{h}, {y}+{h}) != d({x}, {y})")]
    NotInvariant { x: usize, y: usize, h: usize },

    #[error("triangle inequality fails at ({x}, {y}, {z})")]
    TriangleViolation { x: usize, y: usize, z: usize },

    #[error("frequency {frequency} aliases with {samples} samples")]
    Aliasing { frequency: usize, samples: usize },

    #[error("groups differ: {0:?} vs {1:?}")]
    GroupMismatch(Vec<u64>, Vec<u64>),

    #[error("radix towers differ")]
    TowerMismatch,

    #[error("element is not a unit: gcd with modulus is {gcd}")]
    NotUnit { gcd: String },

    #[error("requested level {requested} exceeds precision {precision}")]
    PrecisionExceeded { requested: i64, precision: i64 },

    #[error("norm {norm} is not below 1; the Neumann series does not converge")]
    NormTooLarge { norm: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag, used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::IndexMismatch(_) => "index_mismatch",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::NotOrthonormal { .. } => "not_orthonormal",
            Error::NotInvariant { .. } => "not_invariant",
            Error::TriangleViolation { .. } => "triangle_violation",
            Error::Aliasing { .. } => "aliasing",
            Error::GroupMismatch(..) => "group_mismatch",
            Error::TowerMismatch => "tower_mismatch",
            Error::NotUnit { .. } => "not_unit",
            Error::PrecisionExceeded { .. } => "precision_exceeded",
            Error::NormTooLarge { .. } => "norm_too_large",
            Error::Parse(_) => "parse",
        }
    }
}
