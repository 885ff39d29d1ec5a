//! Shared numerical kernels.

pub mod linalg;
pub mod quadrature;
pub mod roots;

pub use linalg::{sym_eigen, sym_eigs, sym_gen_eigs, SymmetricMatrix};
pub use quadrature::{gauss_legendre, QuadratureRule};
pub use roots::{bisect_root, lattice_point, try_bisect_on_lattice, try_bisect_root};

/// Default absolute tolerance for root brackets.
pub const DEFAULT_ROOT_TOL: f64 = 1e-10;
/// Default relative residual budget for eigenpairs, `|Av - lv| <= tol * |A|`.
pub const DEFAULT_EIGEN_RESIDUAL: f64 = 1e-9;
