//! Isomorphism testing for lattices.
//!
//! A positive answer is always *certified*: the returned witness is an exact
//! intertwiner with unit determinant, so conjugating by it carries one set of
//! actions to the other over `O`. A negative answer is reached either by an
//! invariant mismatch (exact, hence also certified) or by exhausting a
//! sampling budget over the reduced hom-space; the latter is only reported as
//! a plain `false` when `p` exceeds the lattice rank, and as
//! [`Error::Inconclusive`] otherwise, so a small residue field can never
//! silently misreport.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Config;
use crate::dvr::Dvr;
use crate::error::Error;
use crate::linalg::OMatrix;
use crate::modk::decompose;
use crate::order::{hom_space, Lattice};

/// Tests `L₁ ≅ L₂`. `Ok(Some(g))` carries a certified witness: `g` is an
/// `A`-homomorphism with unit determinant, i.e. an isomorphism over `O`.
pub fn iso_test(
    dvr: &Dvr,
    cfg: &Config,
    l1: &Lattice,
    l2: &Lattice,
) -> Result<Option<OMatrix>, Error> {
    let n = l1.rank();
    if n != l2.rank() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(OMatrix::identity(0)));
    }
    // Mod-p action-rank invariants.
    let pairs = [
        (l1.act_x().reduce(dvr), l2.act_x().reduce(dvr)),
        (l1.act_y().reduce(dvr), l2.act_y().reduce(dvr)),
        (
            l1.act_x().add(l1.act_y()).reduce(dvr),
            l2.act_x().add(l2.act_y()).reduce(dvr),
        ),
        (l1.act_xy().reduce(dvr), l2.act_xy().reduce(dvr)),
    ];
    for (a, b) in &pairs {
        if a.rank() != b.rank() {
            return Ok(None);
        }
    }
    // Reduction type: the full string/band decomposition is an invariant.
    let d1 = decompose(&l1.tensor_k(dvr)?)?;
    let d2 = decompose(&l2.tensor_k(dvr)?)?;
    if d1.summands != d2.summands {
        return Ok(None);
    }
    // Exact hom space; sample reduced combinations for an invertible one.
    let homs = hom_space(dvr, l1, l2);
    if homs.is_empty() {
        return Ok(None);
    }
    let p = dvr.p();
    let reduced: Vec<_> = homs.iter().map(|h| h.reduce(dvr)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.iso_samples {
        let coeffs: Vec<u64> = (0..homs.len()).map(|_| rng.gen_range(0..p)).collect();
        let mut cand = crate::linalg::KMatrix::zeros(n, n, p);
        for (c, h) in coeffs.iter().zip(&reduced) {
            if *c != 0 {
                cand = cand.add(&h.scale(*c));
            }
        }
        if cand.det() == 0 {
            continue;
        }
        // A unit determinant mod p certifies unit determinant over O for the
        // exact lift; assemble and hand out the witness.
        let mut g = OMatrix::zeros(n, n);
        for (c, h) in coeffs.iter().zip(&homs) {
            if *c != 0 {
                g = g.add(&h.scale(&dvr.lift(*c)));
            }
        }
        debug_assert!(crate::linalg::is_unimodular(dvr, &g));
        debug_assert!(crate::order::is_hom(dvr, l1, l2, &g));
        return Ok(Some(g));
    }
    let bound = n as u64;
    if p > bound {
        Ok(None)
    } else {
        Err(Error::Inconclusive {
            samples: cfg.iso_samples,
            p,
            bound,
        })
    }
}
