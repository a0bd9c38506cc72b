//! # qjsd-core
//!
//! Quantum divergences on the cone of positive semidefinite matrices.
//!
//! - [`spectral`]: Hermitian eigendecomposition (cyclic complex Jacobi) and
//!   spectral calculus `tr f(A)`, `f(A)`.
//! - [`divergences`]: Umegaki relative entropy, the quantum Jensen-Shannon
//!   divergence `J`, the S-divergence `d_S²`, and Jensen f-divergences.
//! - [`quadrature`]: composite Gauss-Legendre certification of
//!   `J(A,B) = ∫₀^∞ d_S²(A+tI, B+tI) dt`.
//! - [`qubit`]: Bloch parametrization, closed-form qubit kernels, centered
//!   kernel (Schoenberg) checks and classical MDS embeddings.
//! - [`channel`]: Kraus maps and partial traces.
//!
//! Logarithms are natural throughout, and `η(x) = x ln x` with `η(0) = 0`.
//!
//! The crate is `no_std` and only needs `alloc`. Seeded sampling, the
//! randomized suites, file formats and the command-line tool live in the
//! companion `qjsd` crate.
//!
//! ```
//! use qjsd_core::{divergences::qjsd, spectral::PsdMatrix};
//!
//! let a = PsdMatrix::diag(&[1.0, 0.0]).unwrap();
//! let b = PsdMatrix::diag(&[0.0, 1.0]).unwrap();
//! let j = qjsd(&a, &b).unwrap();
//! assert!((j.value - core::f64::consts::LN_2).abs() < 1e-15);
//! ```
#![no_std]
#![warn(missing_docs)]

extern crate alloc;

pub mod channel;
pub mod divergences;
mod error;
pub mod matrix;
pub mod quadrature;
pub mod qubit;
pub mod spectral;

pub use error::{Error, Result};
pub use matrix::CMatrix;
pub use num_complex::Complex64;
