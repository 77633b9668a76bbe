use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("dimension must satisfy n >= 2, got {0}")]
    DimensionTooSmall(u32),

    #[error("grid needs an odd node count >= 3, got {0}")]
    BadGridCount(usize),

    #[error("grid half-length must be positive and finite, got {0}")]
    BadGridLength (f64),

    #[error("sample length {got} does not match grid count {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("composite Simpson needs an odd number of samples, got {0}")]
    SimpsonParity(usize),

    #[error("quadrature window [{lo}, {hi}] must span an even, positive number of intervals")]
    BadWindow { lo: usize, hi: usize },

    #[error("profile must be strictly positive; u({y}) = {u}")]
    NonPositiveProfile { y: f64, u: f64 },

    #[error("abscissae must be strictly monotone for interpolation")]
    NonMonotoneAbscissae,

    #[error("interpolation query {0} lies outside the data range")]
    OutOfRange(f64),

    #[error("curve needs at least {min} samples, got {got}")]
    CurveTooShort { min: usize, got: usize },

    #[error("curve endpoints must sit on the axis; r[{index}] = {r}")]
    EndpointOffAxis { index: usize, r: f64 },

    #[error("curve radius must be positive away from the tips; r[{index}] = {r}")]
    NegativeRadius { index: usize, r: f64 },

    #[error("degenerate curve segment between samples {0} and {1}")]
    DegenerateSegment(usize, usize),

    #[error("non-finite value encountered in {0}")]
    NotFinite(&'static str),
}
