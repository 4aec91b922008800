use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series has zero constant term")]
    ZeroConstantTerm,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("constant term is not the square of a coefficient")]
    NonSquareConstant,
    #[error("series is not invertible under composition (needs a[0] = 0 and a[1] != 0)")]
    NotInvertible,
    #[error("truncation orders differ ({left} vs {right})")]
    TruncationMismatch { left: usize, right: usize },
    #[error("coefficient of t^{n} has degree {degree} in u, exceeding {n}")]
    DegreeBound { n: usize, degree: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no root of the {equation} equation in (0, 1]")]
    NoRootInUnitInterval { equation: &'static str },
    #[error("no bracketed minimum found in s in (1e-6, 50)")]
    MinimizationFailed,
    #[error("ball would exceed the vertex cap ({estimate} > {cap})")]
    SizeLimit { estimate: u64, cap: u64 },
    #[error("(d-2)(m-2) = {product} < 4: X_{{{d},{m}}} is not a planar tessellation of the Euclidean or hyperbolic plane")]
    NotATessellation { d: u32, m: u32, product: i64 },
    #[error("walks of length {n_max} can leave a ball of complete radius {radius}")]
    RadiusTooSmall { n_max: usize, radius: usize },
    #[error("count overflowed 128 bits")]
    Overflow,
    #[error("inconsistent tessellation construction: {0}")]
    Construction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
