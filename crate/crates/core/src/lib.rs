//! Indefinite Clifford algebras Cl(p,q), p+q ≤ 6, as explicit matrix algebras over exact
//! rings, the spin groups Spin⁺(p,q) inside them, the double cover onto SO⁺(p,q), and an
//! exponential for so(p,q) that goes through the cover.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod any;
pub mod clifford;
pub mod complex;
pub mod covering;
pub mod embeddings;
pub mod error;
pub mod expm;
pub mod matrix;
pub mod named;
pub mod quat_tensor;
pub mod quaternion;
pub mod sampling;
pub mod scalar;
pub mod spin_catalog;

pub use complex::Complex;
pub use error::Error;
pub use matrix::{block_transpose, kron, kron_all, trace_pairing, Matrix};
pub use quaternion::Quaternion;
pub use scalar::{Field, QSqrt2, RealScalar, Ring, Scalar, ToFloat, Q};
