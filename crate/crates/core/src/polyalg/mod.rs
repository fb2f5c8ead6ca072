//! Exact integer polynomials, rational generating functions, transfer
//! matrices and real root isolation.

mod gf;
mod matrix;
mod poly;
mod roots;

pub use gf::{gf_equal, series_coeffs, RationalGF};
pub use matrix::{bareiss_det, det_poly, exact_rank, gf_from_matrix, TransferMatrix};
pub use poly::IntPoly;
pub use roots::{smallest_positive_root, Root, DEFAULT_TOL};
