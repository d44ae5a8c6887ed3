//! Exact computation with lattices over the Kronecker order
//! `A = O[X,Y]/(X^2, Y^2)` where `O` is a discrete valuation ring.
//!
//! The base ring is modeled exactly as the localization of the integers at a
//! prime `p`: arbitrary-precision rationals whose denominators are coprime to
//! `p`, with uniformizer `eps = p`, residue field `kappa = F_p`, and fraction
//! field `K = Q`. Everything downstream — Smith normal forms, saturated
//! kernels, Heller lattices, almost split sequences, stable Auslander–Reiten
//! components — is computed with exact arithmetic and certified a posteriori
//! wherever a construction uses finite-precision lifting.
//!
//! Module map:
//! - [`dvr`]: the base ring context (valuation, reduction, unit inverses).
//! - [`linalg`]: dense matrices over `O`, Smith normal form over a local PID,
//!   saturated kernels and exact solves, mod-`p` linear algebra, and Smith
//!   normal form over `F_p[t]` for pencil classification.
//! - [`order`]: the order `A`, lattices as free `O`-modules with two
//!   commuting square-zero actions, hom modules, projectivity tests.
//! - [`modk`]: finite-dimensional `A ⊗ kappa`-modules, the string/band
//!   classification, projective covers and Heller translates over `kappa`.
//! - [`heller`]: Heller lattices of `A ⊗ kappa`-modules, projective covers
//!   and syzygies of lattices.
//! - [`ars`]: endomorphism rings, radicals, almost split sequences,
//!   indecomposable splitting, certified isomorphism tests.
//! - [`quiver`]: stable Auslander–Reiten component windows, their
//!   verification, tree-class infeasibility certificates, DOT/JSON output.
//! - [`config`]: shared run configuration (prime, precision, sampling).

pub mod ars;
pub mod config;
pub mod dvr;
pub mod error;
pub mod heller;
pub mod linalg;
pub mod modk;
pub mod order;
pub mod quiver;

pub use config::Config;
pub use dvr::{Dvr, Scalar, Valuation};
pub use error::Error;

/// Convenience result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
