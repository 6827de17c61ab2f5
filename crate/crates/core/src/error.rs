use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("map matrix is not symplectic: det = {0} (expected 1)")]
    NotSymplectic(i64),

    #[error("elliptic/parabolic map: |trace| = {0} must exceed 2")]
    NonHyperbolic(i64),

    #[error("Cayley undefined: M^{0} + 1 is singular")]
    CayleyUndefined(u32),

    #[error("Hilbert space dimension must be odd, got N = {0}")]
    EvenDimension(usize),

    #[error("unsupported map for the closed-form kernel: {0}")]
    UnsupportedKernel(String),

    #[error("state is not normalized: norm^2 = {0}")]
    Unnormalized(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("point ({p}, {q}) is not a periodic point of the map; nearby periodic points: {nearby}")]
    NotPeriodic { p: f64, q: f64, nearby: String },

    #[error("numerical invariant violated: {0}")]
    Invariant(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("malformed grid file: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) | Error::Unnormalized(_) => 3,
            _ => 2,
        }
    }
}
