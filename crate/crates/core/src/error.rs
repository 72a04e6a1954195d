use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("geodesic endpoints are antipodal (chordal |A+B| = {0:e})")]
    AntipodalInput(f64),

    #[error("tangent field vanishes at this point; use the fixed meridian")]
    ZeroField,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("vector is not unit length (norm {0})")]
    NotUnit(f64),

    #[error("sphere dimension must be at least 1")]
    ZeroDimension,

    #[error("no division-algebra map on R^{}", .0 + 1)]
    UnsupportedDimension(usize),

    #[error("all map components vanish below the zero threshold")]
    EmptyL,

    #[error("stratum label {given} contradicts the case analysis (expected {computed})")]
    StratumMismatch { given: u8, computed: u8 },

    #[error("elements belong to different rings")]
    RingMismatch,

    #[error("no built-in TC(P^{0}); pass --tc-pn1")]
    MissingTcInput(usize),

    #[error("TC(P^{n1}) = {given} is below the zero-divisor cup-length {zcl}")]
    InvalidTcInput { n1: usize, given: usize, zcl: usize },

    #[error("invalid dimension tuple: {0}")]
    InvalidShape(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
