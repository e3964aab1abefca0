use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("chart point x1 = {x1} lies outside the half-plane x1 >= 1e-12")]
    OutsideChart { x1: f64 },

    #[error("invalid bump parameters: {0}")]
    InvalidBump(String),

    #[error("bump property ({property}) violated: {detail}")]
    BumpProperty { property: char, detail: String },

    #[error("cannot add vectors with different scale tags ({left} vs {right})")]
    MixedScale { left: &'static str, right: &'static str },

    #[error("exact identity failed: {0}")]
    IdentityFailed(String),

    #[error("index out of range: {0}")]
    BadIndex(String),

    #[error("cone membership is undefined at the origin")]
    OriginInCone,

    #[error("integration region is unbounded")]
    Unbounded,

    #[error("quadrature did not converge: level {level} gave {coarse:e}, level {fine} gave {refined:e}", fine = level + 1)]
    NotConverged { level: u32, coarse: f64, refined: f64 },

    #[error("closed form requires full sheets; half-sheet {0} is unmatched")]
    UnmatchedHalfSheet(String),

    #[error("set {0} is not boundary-free")]
    NotBoundaryFree(String),

    #[error("grassmannian radius {eps} too large: planes {first} and {second} are only {distance} apart")]
    GrassmannRadius { eps: f64, first: String, second: String, distance: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("check `{name}` failed: {detail}")]
    CheckFailed { name: String, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
