//! Exact and numeric computation of P-canonical forms of matrices, minimal
//! polynomials of Kronecker products, products of linear recurrence
//! sequences, and closed-form matrix exponentials and logarithms.

pub mod error;
pub mod linalg;
pub mod scalar;
pub mod wedge;
pub mod pcf;
pub mod kronmin;
pub mod lrs;
pub mod matfun;

pub use error::{Error, Result};
pub use kronmin::{
    kron_minpoly_direct, kron_minpoly_direct_with_tol, kron_minpoly_symbolic, kron_minpoly_symbolic_with_tol,
    kron_zero_index, lrs_product_poly, lrs_product_poly_with_tol, EigSpec, ProductClassTable,
};
pub use linalg::{
    char_poly, companion, kron, minpoly, minpoly_with_tol, spectral_projections, spectral_projections_with_tol,
    EigenComponent, Matrix, SpectralData,
};
pub use lrs::{lrs_eval, lrs_min_annihilator, lrs_mul, satisfies, LinRecSeq};
pub use matfun::{
    closedform_eval, complex_pcf, expm_closed, expm_closed_with_tol, expm_real, expm_real_with_tol, log_pcf,
    log_pcf_with_tol, logm, logm_from_pcf, logm_real_pcf, logm_real_pcf_with_tol, logm_with_tol, ClosedFormExp,
    ExpTerm, LogBranchSpec, RealClosedForm,
};
pub use pcf::{
    pcf_build, pcf_build_with_tol, pcf_eval, pcf_minpoly, pcf_realify, pcf_realify_with_tol, pcf_to_gamma,
    pcf_to_lambda, Basis, GeometricTerm, PCanonicalForm, RealPCF, RealTerm,
};
pub use scalar::{c64, rat, Field, FieldTag, Fp, Poly, PrimeModulus, DEFAULT_TOL};
pub use wedge::{wedge, wedge_lambda, wedge_oracle_dim, WedgeContext};
