//! Dense square matrices, Kronecker products, companion matrices,
//! minimal/characteristic polynomials and spectral projections.

mod matrix;
mod minpoly;
mod spectral;

pub use matrix::{companion, kron, rank, solve_linear, Matrix};
pub use minpoly::{char_poly, krylov_minpoly, minpoly, minpoly_with_tol};
pub(crate) use minpoly::{berkowitz, numeric_split_minpoly, schur_char_poly};
pub use spectral::{spectral_projections, spectral_projections_with_tol, EigenComponent, SpectralData};
