//! Jordan-Wigner Pauli decompositions of Fermi-Hubbard and t-J lattices, and
//! first-order Trotter step-count bounds built from them.
//!
//! Symbolic coefficients are polynomials in `t`, `U` and `J` with weights of
//! any [`Scalar`] type; [`Rational`] keeps every count exact.

pub mod bounds;
pub mod dense;
pub mod error;
pub mod golden;
pub mod jw;
pub mod lattice;
pub mod models;
pub mod pauli;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod spectra;
pub mod verify;

pub use bounds::{BoundResult, Method};
pub use error::{Error, Result};
pub use lattice::{Boundary, Dimension, LatticeSpec, Model, ModelParams, SimParams};
pub use pauli::{commutator_norm, ComplexPoly, HamTerm, Pauli, PauliString, PauliSum, Phase};
pub use poly::{Monomial, Polynomial, Var};
pub use scalar::{Real, Scalar};

/// Exact rational weight.
pub type Rational = num_rational::Ratio<i64>;
/// Symbolic coefficient with exact weights.
pub type Coefficient = Polynomial<Rational>;
/// Hermitian term with an exact coefficient.
pub type Term = HamTerm<Rational>;
/// Approximate coefficient in double precision.
pub type CoefficientF64 = Polynomial<f64>;
/// Approximate coefficient in single precision.
pub type CoefficientF32 = Polynomial<f32>;
