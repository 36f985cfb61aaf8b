//! Dense complex linear algebra kernels sized for desk-scale problems
//! (matrix dimensions up to a few dozen). Everything is hand-rolled on
//! `Complex64` so the crate stays `no_std` and deterministic: fixed
//! sweep orders, no parallelism, no platform-dependent branching.

pub mod eig;
pub mod expm;
pub mod lu;
pub mod mat;
pub mod quad;
pub mod svd;

pub use eig::eigenvalues;
pub use expm::expm;
pub use lu::LuFactors;
pub use mat::CMatrix;
pub use quad::GaussLegendre;
pub use svd::{jacobi_svd, spectral_norm, Svd};
