//! Quaternion matrix algebra and the inverse eigenproblem for generalized
//! reflexive and antireflexive matrices.
//!
//! Given Hermitian involutions `P`, `Q` (`P* = P ≠ I`, `P² = I`), a matrix `A`
//! is *reflexive* when `A = PAQ` and *antireflexive* when `A = -PAQ`. This crate
//! decomposes such matrices in the eigenbases of `P` and `Q`, solves the
//! constrained inverse right-eigenproblem `AZ = ZΛ` in closed form, and finds
//! the Frobenius-nearest feasible matrix to a target `E`.
//!
//! Module map:
//! - [`quat`]: quaternion scalars and eigenvalue standardization
//! - [`qmatrix`]: dense quaternion matrices and the complex adjoint embedding
//! - [`factor`]: Gram-Schmidt, pseudoinverse, annihilators, `AX = B`
//! - [`structures`]: reflection pairs, classification, block forms
//! - [`inverse_eig`]: partition, solvability and general solution of `AZ = ZΛ`
//! - [`approx`]: nearest feasible matrix
//! - [`io`]: JSON matrix and problem files

pub mod approx;
pub mod error;
pub mod factor;
pub mod inverse_eig;
pub mod io;
pub mod qmatrix;
pub mod quat;
pub mod random;
pub mod structures;

pub use error::{Error, ReflectionDefect, Result};
pub use qmatrix::{ComplexMatrix, QuaternionMatrix};
pub use quat::{Quaternion, StandardEigenvalue};
pub use structures::{Classification, ReflectionPair, StructureClass};
