//! Projective covers, Heller lattices, and the syzygy functor.
//!
//! For a `Lambda`-module `M` with no projective summands, the Heller lattice
//! is the kernel of a projective `A`-cover `A^g -> M`, where `g` is the
//! dimension of the top of `M`. Concretely this kernel is the preimage in
//! `O^{4g}` of the kernel of the reduced cover, i.e. the `O`-span of lifted
//! kernel vectors together with `eps * O^{4g}`; it is free of rank `4g`.
//!
//! For a lattice `L`, [`projective_cover`] produces the minimal surjection
//! `A^g -> L` (one generator per top basis vector, Nakayama certifying
//! minimality) and [`syzygy`] returns its kernel lattice. Over this
//! symmetric order the syzygy computes the Auslander-Reiten translate on
//! the stable category, so `syzygy` doubles as `tau`.

use crate::dvr::{Dvr, Scalar};
use crate::error::Error;
use crate::linalg::{kernel_saturated, rank_q, solve_matrix, span_basis_columns, OMatrix};
use crate::modk::{projective_cover_k, ModK, ModLabel};
use crate::order::{regular, Lattice};

/// A projective cover `A^g -> L`.
#[derive(Debug, Clone)]
pub struct CoverData {
    /// Number of generators (dimension of the top of the reduction).
    pub g: usize,
    /// The cover map as a `rank(L) x 4g` matrix over `O`; generator block
    /// `t` occupies columns `4t..4t+4` with images `(w, Xw, Yw, XYw)`.
    pub cover: OMatrix,
}

/// Heller lattice of a `Lambda`-module without projective summands.
pub fn heller(dvr: &Dvr, m: &ModK) -> Result<Lattice, Error> {
    if m.p() != dvr.p() {
        return Err(Error::Invariant("module characteristic does not match the DVR".into()));
    }
    // A projective summand exists iff XY acts nontrivially.
    if !m.act_xy().is_zero() {
        return Err(Error::ProjectiveInput(format!(
            "{} has a projective direct summand",
            m.name
        )));
    }
    if m.dim() == 0 {
        return Ok(Lattice::zero());
    }
    let cover = projective_cover_k(m);
    let g = cover.g;
    // Kernel of the reduced cover, lifted, plus eps * O^{4g}.
    let ker = cover.matrix.kernel();
    let lifted = OMatrix::lift(&ker, dvr);
    let eps_block = OMatrix::identity(4 * g).scale(&dvr.eps());
    let basis = span_basis_columns(dvr, &lifted.hstack(&eps_block));
    if basis.ncols() != 4 * g {
        return Err(Error::Invariant(format!(
            "Heller lattice of {} has rank {} instead of {}",
            m.name,
            basis.ncols(),
            4 * g
        )));
    }
    let ambient = regular(g);
    let act_x = solve_matrix(dvr, &basis, &ambient.act_x().mul(&basis))?;
    let act_y = solve_matrix(dvr, &basis, &ambient.act_y().mul(&basis))?;
    Lattice::new(format!("heller({})", m.name), dvr, act_x, act_y)
}

/// Heller lattice of a labeled indecomposable.
pub fn heller_label(dvr: &Dvr, label: &ModLabel) -> Result<Lattice, Error> {
    if *label == ModLabel::Proj {
        return Err(Error::ProjectiveInput("P is projective".into()));
    }
    heller(dvr, &ModK::from_label(label, dvr.p())?)
}

/// The lattice `Z_n`: `heller(H:n)` for `n >= 0` and `heller(V:-n)` for
/// `n < 0`, forming a single `Z`-indexed family with `tau Z_n = Z_{n-1}`.
pub fn z_lattice(dvr: &Dvr, n: i64) -> Result<Lattice, Error> {
    let label = if n >= 0 {
        ModLabel::Horizontal { m: n as usize }
    } else {
        ModLabel::Vertical { n: (-n) as usize }
    };
    Ok(heller_label(dvr, &label)?.named(format!("Z({n})")))
}

/// Projective cover of a lattice: `g` = top dimension, generators the
/// lexicographically first standard basis vectors spanning the top.
pub fn projective_cover(dvr: &Dvr, l: &Lattice) -> Result<CoverData, Error> {
    let rank = l.rank();
    if rank == 0 {
        return Ok(CoverData {
            g: 0,
            cover: OMatrix::zeros(0, 0),
        });
    }
    let xbar = l.act_x().reduce(dvr);
    let ybar = l.act_y().reduce(dvr);
    let stacked = xbar.hstack(&ybar);
    let (_, w_pivots) = stacked.rref();
    let w_mat = stacked.select_columns(&w_pivots);
    let w = w_mat.ncols();
    let full = w_mat.hstack(&crate::linalg::KMatrix::identity(rank, dvr.p()));
    let (_, pivots) = full.rref();
    let generator_cols: Vec<usize> = pivots.iter().filter(|&&c| c >= w).map(|&c| c - w).collect();
    let g = generator_cols.len();
    let xy = l.act_xy();
    let mut cover = OMatrix::zeros(rank, 4 * g);
    for (t, &c) in generator_cols.iter().enumerate() {
        for i in 0..rank {
            cover.set(i, 4 * t, if i == c { Scalar::from_integer(1.into()) } else { Scalar::from_integer(0.into()) });
            cover.set(i, 4 * t + 1, l.act_x().get(i, c).clone());
            cover.set(i, 4 * t + 2, l.act_y().get(i, c).clone());
            cover.set(i, 4 * t + 3, xy.get(i, c).clone());
        }
    }
    // Nakayama: the cover is surjective iff its reduction is.
    if cover.reduce(dvr).rank() != rank {
        return Err(Error::Invariant(format!(
            "projective cover of {} is not surjective",
            l.name
        )));
    }
    Ok(CoverData { g, cover })
}

/// Syzygy (= Auslander-Reiten translate `tau`): the kernel lattice of the
/// projective cover. Zero for projective lattices.
pub fn syzygy(dvr: &Dvr, l: &Lattice) -> Result<Lattice, Error> {
    let cover = projective_cover(dvr, l)?;
    if cover.g == 0 {
        return Ok(Lattice::zero());
    }
    let basis = kernel_saturated(dvr, &cover.cover);
    let expected = 4 * cover.g - l.rank();
    if basis.ncols() != expected {
        return Err(Error::Invariant(format!(
            "syzygy of {} has rank {} instead of {}",
            l.name,
            basis.ncols(),
            expected
        )));
    }
    if expected == 0 {
        return Ok(Lattice::zero());
    }
    let ambient = regular(cover.g);
    let act_x = solve_matrix(dvr, &basis, &ambient.act_x().mul(&basis))?;
    let act_y = solve_matrix(dvr, &basis, &ambient.act_y().mul(&basis))?;
    Lattice::new(format!("syzygy({})", l.name), dvr, act_x, act_y)
}

/// Convenience: syzygy applied `k` times.
pub fn tau_iterate(dvr: &Dvr, l: &Lattice, k: usize) -> Result<Vec<Lattice>, Error> {
    let mut chain = Vec::with_capacity(k + 1);
    chain.push(l.clone());
    for _ in 0..k {
        let next = syzygy(dvr, chain.last().unwrap())?;
        chain.push(next);
    }
    Ok(chain)
}

/// Sanity check shared by the test suites: rank over `Q` of the two actions
/// and their product match the free-over-`A tensor K` profile.
pub fn satisfies_rank_law(dvr: &Dvr, l: &Lattice) -> bool {
    let r = l.rank();
    r % 4 == 0
        && rank_q(dvr, l.act_x()) == r / 2
        && rank_q(dvr, l.act_y()) == r / 2
        && rank_q(dvr, &l.act_xy()) == r / 4
}
