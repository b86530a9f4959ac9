use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is not congruent to 1 mod 4, so -1 has no square root")]
    NoSquareRootOfMinusOne(u64),

    #[error("modulus {0} is too large (must be below 2^62)")]
    ModulusTooLarge(u64),

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("set of size {size} exceeds the enumeration cap of {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("ground set of size {0} does not fit a 64-bit subset mask")]
    GroundSetTooLarge(usize),

    #[error("element {index} is out of range for a ground set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("edge {edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("set function is not submodular: f({x:#x}) + f({y:#x}) < f(X|Y) + f(X&Y)")]
    NotSubmodular { x: u64, y: u64 },

    #[error("set function is not monotone: f({smaller:#x}) > f({larger:#x})")]
    NotMonotone { smaller: u64, larger: u64 },

    #[error("random section is not transversal to member {element} after {attempts} attempts")]
    TransversalityFailure { element: usize, attempts: usize },

    #[error("{what}: no valid random draw after {attempts} attempts")]
    RetriesExhausted { what: &'static str, attempts: usize },

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
