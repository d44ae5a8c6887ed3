//! Exact linear algebra over `O`, its residue field, and `F_p[t]`.
//!
//! Public surface:
//! - [`OMatrix`]: dense exact matrices (the lingua franca of the crate);
//! - [`smith_local`] / [`Smith`]: Smith normal form over the local PID with
//!   unimodular factors and their exact inverses;
//! - [`kernel_saturated`], [`solve`], [`solve_matrix`], [`rank_q`],
//!   [`span_basis_columns`]: saturated kernels and exact `O`-solvability,
//!   backed by a sparse row-elimination engine;
//! - [`KMatrix`]: dense mod-`p` matrices (rank, kernels, char polys);
//! - [`FpPoly`] / [`FpPolyMatrix`]: polynomial arithmetic and diagonalization
//!   over `F_p[t]` for pencil classification.

mod dense;
mod engine;
mod modp;
mod poly;
mod smith;

pub use dense::OMatrix;
pub use engine::{
    column_span, kernel_saturated, rank_q, solve, solve_matrix, span_basis_columns, ColumnSpan,
    RowEliminator,
};
pub use modp::KMatrix;
pub use poly::{min_poly_of_matrix, FpPoly, FpPolyMatrix};
pub use smith::{is_unimodular, smith_local, Smith};
