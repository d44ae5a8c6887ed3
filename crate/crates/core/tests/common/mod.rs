//! Shared support for integration tests that work with explicit, hand-written
//! presentations of lattices inside a free module `A^{⊕m}`.
//!
//! The free `A`-module of rank `m` has the canonical `O`-basis
//! `{e_i, Xe_i, Ye_i, XYe_i}` for `i = 1..m`. A hand-written fixture presents
//! a lattice as a list of columns in that basis, presents a projective cover
//! by listing the images of the cover's generators, presents the cover's
//! kernel by another explicit column list, and finally names a diagonal sign
//! matrix that conjugates the kernel's action matrices into those of the
//! expected translate. Every step is verified exactly: column unimodularity,
//! stability under the ambient actions, surjectivity of the cover, kernel
//! membership, and the final conjugation identity are all zero-tolerance
//! matrix checks over `O`.

#![allow(dead_code)]

pub mod fixtures;

use kronord_core::ars::iso_test;
use kronord_core::dvr::{Dvr, Scalar};
use kronord_core::heller::heller_label;
use kronord_core::linalg::{rank_q, solve_matrix, OMatrix};
use kronord_core::modk::ModLabel;
use kronord_core::order::Lattice;
use kronord_core::Config;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Component of the canonical `O`-basis `{e, Xe, Ye, XYe}` of one copy of `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comp {
    E = 0,
    Xe = 1,
    Ye = 2,
    XYe = 3,
}

/// One term `coeff · ε^eps_pow · (comp of generator gen)`, with `gen` 1-based.
#[derive(Clone, Copy, Debug)]
pub struct Term {
    pub coeff: i64,
    pub eps_pow: u32,
    pub gen: usize,
    pub comp: Comp,
}

pub fn e(coeff: i64, eps_pow: u32, gen: usize) -> Term {
    Term { coeff, eps_pow, gen, comp: Comp::E }
}

pub fn xe(coeff: i64, eps_pow: u32, gen: usize) -> Term {
    Term { coeff, eps_pow, gen, comp: Comp::Xe }
}

pub fn ye(coeff: i64, eps_pow: u32, gen: usize) -> Term {
    Term { coeff, eps_pow, gen, comp: Comp::Ye }
}

pub fn xye(coeff: i64, eps_pow: u32, gen: usize) -> Term {
    Term { coeff, eps_pow, gen, comp: Comp::XYe }
}

fn row_of(gen: usize, comp: Comp) -> usize {
    4 * (gen - 1) + comp as usize
}

/// Assembles term lists into a `4m × k` column matrix over `O`.
pub fn columns(dvr: &Dvr, m: usize, elements: &[Vec<Term>]) -> OMatrix {
    let mut g = OMatrix::zeros(4 * m, elements.len());
    for (j, el) in elements.iter().enumerate() {
        for t in el {
            assert!(
                t.gen >= 1 && t.gen <= m,
                "generator index {} outside 1..={m}",
                t.gen
            );
            let r = row_of(t.gen, t.comp);
            let add = BigRational::from_integer(BigInt::from(t.coeff)) * dvr.eps_pow(i64::from(t.eps_pow));
            let v = g.get(r, j).clone() + add;
            g.set(r, j, v);
        }
    }
    g
}

/// The matrix of the `X`-action on `A^{⊕m}` in the canonical basis:
/// `e ↦ Xe`, `Ye ↦ XYe`, and `Xe, XYe ↦ 0`.
pub fn ambient_x(m: usize) -> OMatrix {
    let mut a = OMatrix::zeros(4 * m, 4 * m);
    for i in 1..=m {
        a.set(row_of(i, Comp::Xe), row_of(i, Comp::E), Scalar::from_integer(BigInt::from(1)));
        a.set(row_of(i, Comp::XYe), row_of(i, Comp::Ye), Scalar::from_integer(BigInt::from(1)));
    }
    a
}

/// The matrix of the `Y`-action on `A^{⊕m}`: `e ↦ Ye`, `Xe ↦ XYe`.
pub fn ambient_y(m: usize) -> OMatrix {
    let mut a = OMatrix::zeros(4 * m, 4 * m);
    for i in 1..=m {
        a.set(row_of(i, Comp::Ye), row_of(i, Comp::E), Scalar::from_integer(BigInt::from(1)));
        a.set(row_of(i, Comp::XYe), row_of(i, Comp::Xe), Scalar::from_integer(BigInt::from(1)));
    }
    a
}

/// A lattice presented by an explicit column basis inside `A^{⊕m}`.
pub struct Presented {
    /// Number of ambient generators `m`.
    pub gens: usize,
    /// `4m × rank` column basis.
    pub basis: OMatrix,
    /// The abstract lattice carried by that basis.
    pub lattice: Lattice,
}

/// Builds a [`Presented`] lattice, verifying that the columns are linearly
/// independent and stable under both ambient actions with `O`-integral
/// coefficient matrices. (The columns need not be unimodular: a lattice such
/// as a Heller lattice sits inside its ambient free module with finite
/// index.)
pub fn present(dvr: &Dvr, name: &str, m: usize, elements: &[Vec<Term>]) -> Presented {
    let basis = columns(dvr, m, elements);
    let r = basis.ncols();
    assert_eq!(rank_q(dvr, &basis), r, "{name}: basis columns are dependent");
    let ax = ambient_x(m);
    let ay = ambient_y(m);
    let mx = solve_matrix(dvr, &basis, &ax.mul(&basis))
        .unwrap_or_else(|_| panic!("{name}: span is not X-stable over O"));
    let my = solve_matrix(dvr, &basis, &ay.mul(&basis))
        .unwrap_or_else(|_| panic!("{name}: span is not Y-stable over O"));
    let lattice = Lattice::new(name, dvr, mx, my)
        .unwrap_or_else(|err| panic!("{name}: invalid action matrices: {err}"));
    Presented { gens: m, basis, lattice }
}

/// Do two column bases inside the same `A^{⊕m}` span the same `O`-lattice?
pub fn spans_match(dvr: &Dvr, a: &OMatrix, b: &OMatrix) -> bool {
    a.nrows() == b.nrows()
        && a.ncols() == b.ncols()
        && solve_matrix(dvr, a, b).is_ok()
        && solve_matrix(dvr, b, a).is_ok()
}

/// An `A`-linear map `A^{⊕src} → A^{⊕dst}` given by the images of the
/// `src` module generators.
pub struct Cover {
    pub src: usize,
    /// Full `4·dst × 4·src` matrix on the canonical bases.
    pub map: OMatrix,
}

/// Assembles and verifies a projective cover presentation of `l`: every
/// listed target must lie in `l`, and the induced map must hit a full set of
/// residues of `l`'s basis (surjectivity by Nakayama).
pub fn cover(dvr: &Dvr, l: &Presented, src: usize, targets: &[Vec<Term>]) -> Cover {
    assert_eq!(targets.len(), src, "cover target count mismatch");
    let t = columns(dvr, l.gens, targets);
    solve_matrix(dvr, &l.basis, &t)
        .unwrap_or_else(|_| panic!("cover target outside the lattice {}", l.lattice.name));
    let ax = ambient_x(l.gens);
    let ay = ambient_y(l.gens);
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(4 * src);
    for i in 0..src {
        let ti = t.col(i);
        let xti = ax.mul_vec(&ti);
        let yti = ay.mul_vec(&ti);
        let xyti = ax.mul_vec(&yti);
        cols.push(ti);
        cols.push(xti);
        cols.push(yti);
        cols.push(xyti);
    }
    let map = OMatrix::from_columns(4 * l.gens, &cols);
    let coords = solve_matrix(dvr, &l.basis, &map)
        .unwrap_or_else(|_| panic!("cover image outside the lattice {}", l.lattice.name));
    assert_eq!(
        coords.reduce(dvr).rank(),
        l.basis.ncols(),
        "cover onto {} is not surjective",
        l.lattice.name
    );
    Cover { src, map }
}

/// Verifies that `elements` is an `O`-basis of the kernel of `cov` (where the
/// covered lattice has rank `covered_rank`) and presents it as a lattice.
pub fn kernel_presented(
    dvr: &Dvr,
    name: &str,
    cov: &Cover,
    covered_rank: usize,
    elements: &[Vec<Term>],
) -> Presented {
    let expected = 4 * cov.src - covered_rank;
    assert_eq!(
        elements.len(),
        expected,
        "{name}: kernel basis should have {expected} columns"
    );
    let p = present(dvr, name, cov.src, elements);
    // The kernel of a map onto a torsion-free module is saturated, so its
    // basis columns must be unimodular; together with membership and the
    // rank count this certifies that the listed columns span the whole
    // kernel, not a finite-index sublattice of it.
    assert_eq!(
        p.basis.reduce(dvr).rank(),
        expected,
        "{name}: kernel basis columns are not unimodular"
    );
    assert!(
        cov.map.mul(&p.basis).is_zero(),
        "{name}: a listed kernel element is not killed by the cover"
    );
    p
}

/// Diagonal sign matrix from a `±1` vector.
pub fn diag_signs(signs: &[i64]) -> OMatrix {
    let mut m = OMatrix::zeros(signs.len(), signs.len());
    for (i, s) in signs.iter().enumerate() {
        assert!(*s == 1 || *s == -1, "diagonal entries must be ±1");
        m.set(i, i, Scalar::from_integer(BigInt::from(*s)));
    }
    m
}

/// Checks the conjugation identities `P·X_a·P = X_b` and `P·Y_a·P = Y_b` for
/// a diagonal sign matrix `P` (which is its own inverse).
pub fn sign_conjugation_matches(p: &OMatrix, a: &Lattice, b: &Lattice) -> bool {
    p.mul(a.act_x()).mul(p) == *b.act_x() && p.mul(a.act_y()).mul(p) == *b.act_y()
}

/// Searches for a diagonal `±1` matrix `P` with `P·X_a·P = X_b` and
/// `P·Y_a·P = Y_b`. The constraint `d_i·m_ij·d_j = n_ij` on the sign vector
/// `d` is a graph two-colouring problem, solved by propagation; unconstrained
/// components default to `+1`.
pub fn find_diag_signs(a: &Lattice, b: &Lattice) -> Option<Vec<i64>> {
    let n = a.rank();
    if b.rank() != n {
        return None;
    }
    let mut signs: Vec<i64> = vec![0; n];
    let mut constraints: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for (ma, mb) in [(a.act_x(), b.act_x()), (a.act_y(), b.act_y())] {
        for i in 0..n {
            for j in 0..n {
                let x = ma.get(i, j);
                let y = mb.get(i, j);
                use num_traits::Zero;
                match (x.is_zero(), y.is_zero()) {
                    (true, true) => {}
                    (false, false) => {
                        if *x == *y {
                            constraints[i].push((j, 1));
                            constraints[j].push((i, 1));
                        } else if *x == -y.clone() {
                            constraints[i].push((j, -1));
                            constraints[j].push((i, -1));
                        } else {
                            return None;
                        }
                    }
                    _ => return None,
                }
            }
        }
    }
    for start in 0..n {
        if signs[start] != 0 {
            continue;
        }
        signs[start] = 1;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for &(j, rel) in &constraints[i] {
                let want = signs[i] * rel;
                if signs[j] == 0 {
                    signs[j] = want;
                    stack.push(j);
                } else if signs[j] != want {
                    return None;
                }
            }
        }
    }
    let p = diag_signs(&signs);
    if sign_conjugation_matches(&p, a, b) {
        Some(signs)
    } else {
        None
    }
}

/// Asserts that `l` is isomorphic to the Heller lattice of `label`,
/// the identification being certified by the randomized exact test.
pub fn assert_iso_to_heller(dvr: &Dvr, cfg: &Config, l: &Lattice, label: &str) {
    let parsed: ModLabel = label.parse().expect("bad label in test");
    let target = heller_label(dvr, &parsed).expect("heller failed in test");
    match iso_test(dvr, cfg, l, &target) {
        Ok(Some(_)) => {}
        other => panic!(
            "{} is not certified isomorphic to heller({label}): {other:?}",
            l.name
        ),
    }
}
