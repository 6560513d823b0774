use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("exponent n must be at least 1")]
    ZeroExponent,
    #[error("q = {q} is divisible by p = {p}")]
    BaseNotCoprime { q: u64, p: u64 },
    #[error("p^n = {p}^{n} does not fit below the 2^32 vertex limit")]
    ModulusTooLarge { p: u64, n: u32 },
    #[error("graph has {vertices} vertices, above the guard of {limit} (raise it with --max-vertices)")]
    VertexGuard { vertices: u64, limit: u64 },
    #[error("{value} is not below the trial-division cap 2^40")]
    FactorCap { value: u64 },
    #[error("operation needs n >= 2 (there is no level below n = 1)")]
    NoLowerLevel,
    #[error("vertex {x} is out of range for modulus {modulus}")]
    VertexOutOfRange { x: u64, modulus: u64 },
    #[error("k must be at least 1")]
    ZeroLength,
    #[error("the reduced method only applies to unperturbed graphs (got r = {0})")]
    ReducedNeedsUnperturbed(u64),
    #[error("matrix side {side} is not divisible by block side {block}")]
    IndivisibleBlocks { side: usize, block: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
