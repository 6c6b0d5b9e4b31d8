//! Dense complex linear algebra kernels shared by every other module.

mod eigen;
mod expm;
mod general_eigen;
mod matrix;
mod pnorm;
mod svd;

pub use eigen::{hermitian_eigen, EigenResult};
pub use expm::matrix_exp;
pub use general_eigen::general_eigenvalues;
pub use matrix::{orthonormality_error, vec_dot, vec_norm, ComplexMatrix};
pub use pnorm::{conjugate_exponent, opnorm_p_estimate, opnorm_p_upper, vec_pnorm};
pub use svd::{svd, Svd};

#[allow(unused_imports)]
pub(crate) use svd::complete_orthonormal;
