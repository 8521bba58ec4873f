//! Exact computations with finite-rank commutative algebras: Kähler differentials,
//! Hochschild, cyclic and negative cyclic homology, Milnor and Dennis–Stein K-groups of
//! finite rings, and spectral sequences of exact couples.
//!
//! Arithmetic is exact throughout (arbitrary precision integers and rationals, prime fields).
//! Groups are returned as [`FPAbelianGroup`]s in invariant-factor form.

pub mod algebra;
pub mod cyclic;
pub mod error;
pub mod exactalg;
pub mod kahler;
pub mod milnork;
pub mod specseq;

pub use error::{Error, Result};
pub use exactalg::{Coefficients, Domain, FPAbelianGroup, Integers, Invariants, SparseMatrix};

/// Integer matrices.
pub type IntMatrix = exactalg::SparseMatrix<num_bigint::BigInt>;
/// Matrices over the coefficients of an algebra.
pub type ScalarMatrix = exactalg::SparseMatrix<Scalar>;
/// Scalars of an algebra over ℚ or 𝔽_p.
pub type Scalar = num_rational::BigRational;
/// Abelian groups presented over ℤ.
pub type IntGroup = exactalg::FPAbelianGroup<Integers>;
/// Vector spaces over the coefficient field of an algebra.
pub type VectorSpace = exactalg::FPAbelianGroup<Coefficients>;
