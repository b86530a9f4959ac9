//! Dilworth truncations of submodular functions, Hadamard products of linear
//! spaces, and amoeba dimensions, computed exactly over a prime field.

pub mod amoeba;
pub mod counterexamples;
pub mod error;
pub mod field;
pub mod geodil;
pub mod hadamard;
pub mod matrix;
pub mod matroids;
pub mod rng;
pub mod setfunc;
pub mod subspace;

pub use error::{Error, Result};
pub use field::{ConjScalar, PrimeField, DEFAULT_MODULUS};
pub use matrix::{ConjMatrix, Matrix, MatrixJson};
pub use setfunc::{SetFunction, Subset};
pub use subspace::Subspace;
