use thiserror::Error;

use crate::factors::FactorViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}")]
    InvalidModulus(u64),

    #[error("no inverse: gcd({value}, {modulus}) = {gcd}")]
    NoInverse { value: i64, modulus: u64, gcd: u64 },

    #[error("moduli not coprime: gcd({s}, {t}) = {gcd}")]
    NotCoprime { s: u64, t: u64, gcd: u64 },

    #[error("residues have different moduli: {0} and {1}")]
    ModulusMismatch(u64, u64),

    #[error("order {0} must be odd")]
    EvenOrder(usize),

    #[error("order {0} must be even")]
    OddOrder(usize),

    #[error("order {0} is too small; the smallest supported order is 3")]
    OrderTooSmall(usize),

    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("loop at vertex {0} is not an edge")]
    LoopEdge(usize),

    #[error("factors have different orders: {0} and {1}")]
    OrderMismatch(usize, usize),

    #[error("a factor cannot be paired with itself")]
    SameFactor,

    #[error("walk position {position} outside 1..={max}")]
    PositionOutOfRange { position: usize, max: usize },

    #[error("invalid factor: {0}")]
    InvalidFactor(FactorViolation),

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("order {0} outside the exhaustive search range (odd, 3..=9)")]
    OracleRange(usize),

    #[error("exhaustive search for order {0} is expensive and requires an explicit opt-in")]
    CostGuard(usize),
}
