use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("invalid token {0:?}: expected a signed integer")]
    BadToken(String),
    #[error("invalid token {0:?}: zero is not a generator")]
    ZeroLetter(String),
    #[error("token {token:?}: generator index {} invalid for {strands} strands", token.trim_start_matches('-'))]
    GeneratorOutOfRange { token: String, strands: usize },
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("diagram size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("diagram size must be at least 1")]
    EmptyDiagram,
    #[error("generator U_{index} does not exist in TL_{size}")]
    GeneratorIndex { index: usize, size: usize },
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("{what} = {value} out of range {min}..={max}")]
    OutOfRange { what: &'static str, value: usize, min: usize, max: usize },
    #[error("state-sum oracle capped at {cap} crossings, word has {len}; use the Temperley-Lieb path")]
    OracleCap { len: usize, cap: usize },
    #[error("loop value {0} gives a non-real F entry (need delta^2 >= 1)")]
    NonRealF(f64),
    #[error("braiding eigenvalue must have unit modulus, got |lambda| = {0}")]
    NotUnitModulus(f64),
    #[error("theta = {0} lies outside the region cos^2(2 theta) >= 1/4")]
    InvalidTheta(f64),
}
