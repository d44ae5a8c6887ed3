//! Lattices over the Kronecker order `A = O[X, Y] / (X^2, Y^2)`.
//!
//! A lattice is a free `O`-module of finite rank together with two commuting
//! square-zero `O`-linear actions. Everything downstream (Heller translates,
//! almost split sequences, the component quiver) is phrased in terms of this
//! type; the constructors here validate the defining relations so invalid
//! action pairs cannot circulate.

use serde::{Deserialize, Serialize};

use crate::dvr::Dvr;
use crate::error::Error;
use crate::linalg::{kernel_saturated, rank_q, OMatrix, RowEliminator};
use crate::modk::ModK;

/// A lattice over `A`: a free `O`-module with commuting square-zero actions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    pub name: String,
    act_x: OMatrix,
    act_y: OMatrix,
}

impl Lattice {
    /// Builds a lattice from its action matrices, validating that both are
    /// square of equal size, integral, square-zero and commuting.
    pub fn new(
        name: impl Into<String>,
        dvr: &Dvr,
        act_x: OMatrix,
        act_y: OMatrix,
    ) -> Result<Self, Error> {
        if act_x.nrows() != act_x.ncols()
            || act_y.nrows() != act_y.ncols()
            || act_x.nrows() != act_y.nrows()
        {
            return Err(Error::Invariant("lattice action matrices must be square and of equal size".into()));
        }
        if !act_x.is_integral(dvr) || !act_y.is_integral(dvr) {
            return Err(Error::Invariant("lattice action matrices must have entries in O".into()));
        }
        if !act_x.mul(&act_x).is_zero() {
            return Err(Error::Invariant("X^2 != 0".into()));
        }
        if !act_y.mul(&act_y).is_zero() {
            return Err(Error::Invariant("Y^2 != 0".into()));
        }
        if act_x.mul(&act_y) != act_y.mul(&act_x) {
            return Err(Error::Invariant("XY != YX".into()));
        }
        Ok(Lattice {
            name: name.into(),
            act_x,
            act_y,
        })
    }

    /// The zero lattice.
    pub fn zero() -> Self {
        Lattice {
            name: "0".into(),
            act_x: OMatrix::zeros(0, 0),
            act_y: OMatrix::zeros(0, 0),
        }
    }

    /// Rank as a free `O`-module.
    pub fn rank(&self) -> usize {
        self.act_x.nrows()
    }

    pub fn act_x(&self) -> &OMatrix {
        &self.act_x
    }

    pub fn act_y(&self) -> &OMatrix {
        &self.act_y
    }

    pub fn act_xy(&self) -> OMatrix {
        self.act_x.mul(&self.act_y)
    }

    /// Renames the lattice in place (builder style).
    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Applies an element `c0 + c1 X + c2 Y + c3 XY` of `A` to coordinates.
    pub fn apply(&self, coeffs: &[crate::dvr::Scalar; 4], v: &[crate::dvr::Scalar]) -> Vec<crate::dvr::Scalar> {
        let n = self.rank();
        let mut out = vec![crate::dvr::Scalar::from_integer(0.into()); n];
        let xv = self.act_x.mul_vec(v);
        let yv = self.act_y.mul_vec(v);
        let xyv = self.act_x.mul_vec(&yv);
        for i in 0..n {
            out[i] = &coeffs[0] * &v[i] + &coeffs[1] * &xv[i] + &coeffs[2] * &yv[i] + &coeffs[3] * &xyv[i];
        }
        out
    }

    /// Reduction mod the maximal ideal: the `Lambda`-module `L/(eps L)`.
    pub fn tensor_k(&self, dvr: &Dvr) -> Result<ModK, Error> {
        ModK::new(
            self.name.clone(),
            self.act_x.reduce(dvr),
            self.act_y.reduce(dvr),
        )
    }

    /// Direct sum with block-diagonal actions.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice {
            name: format!("{} + {}", self.name, other.name),
            act_x: OMatrix::block_diag(&self.act_x, &other.act_x),
            act_y: OMatrix::block_diag(&self.act_y, &other.act_y),
        }
    }

    /// Dimension of the top `L / (eps L + X L + Y L)` over the residue field:
    /// the minimal number of `A`-module generators.
    pub fn top_dim(&self, dvr: &Dvr) -> usize {
        if self.rank() == 0 {
            return 0;
        }
        let stacked = self.act_x.reduce(dvr).hstack(&self.act_y.reduce(dvr));
        self.rank() - stacked.rank()
    }

    /// True when the lattice is a free (equivalently projective) `A`-module.
    pub fn is_projective(&self, dvr: &Dvr) -> bool {
        self.rank() == 4 * self.top_dim(dvr)
    }

    /// The rank condition characterising lattices in the stable component:
    /// rank divisible by 4 and the generic ranks of `X`, `Y`, `XY` equal to
    /// `rank/2`, `rank/2`, `rank/4`.
    pub fn has_natural_property(&self, _dvr: &Dvr) -> bool {
        let r = self.rank();
        if r % 4 != 0 {
            return false;
        }
        rank_q_of(&self.act_x) == r / 2
            && rank_q_of(&self.act_y) == r / 2
            && rank_q_of(&self.act_xy()) == r / 4
    }

    /// Conjugates the actions by a unimodular base change `g` (the lattice
    /// with actions `g X g^{-1}`, `g Y g^{-1}`).
    pub fn conjugate(&self, dvr: &Dvr, g: &OMatrix) -> Result<Lattice, Error> {
        if !crate::linalg::is_unimodular(dvr, g) {
            return Err(Error::Invariant("conjugating matrix is not unimodular".into()));
        }
        let smith = crate::linalg::smith_local(dvr, g);
        // g^{-1} = V D^{-1} U with D = identity for a unimodular g.
        let g_inv = smith.v.mul(&smith.u);
        Lattice::new(
            self.name.clone(),
            dvr,
            g.mul(&self.act_x).mul(&g_inv),
            g.mul(&self.act_y).mul(&g_inv),
        )
    }
}

fn rank_q_of(m: &OMatrix) -> usize {
    // Rank over the fraction field; p is irrelevant here, any Dvr works.
    static DVR: once_cell::sync::Lazy<Dvr> = once_cell::sync::Lazy::new(|| Dvr::new(2).unwrap());
    rank_q(&DVR, m)
}

/// The free lattice `A^k` with basis blocks `(e, Xe, Ye, XYe)` per summand.
pub fn regular(k: usize) -> Lattice {
    let n = 4 * k;
    let mut x = OMatrix::zeros(n, n);
    let mut y = OMatrix::zeros(n, n);
    let one = crate::dvr::Scalar::from_integer(1.into());
    for b in 0..k {
        x.set(4 * b + 1, 4 * b, one.clone());
        x.set(4 * b + 3, 4 * b + 2, one.clone());
        y.set(4 * b + 2, 4 * b, one.clone());
        y.set(4 * b + 3, 4 * b + 1, one.clone());
    }
    Lattice {
        name: if k == 1 { "A".into() } else { format!("A^{k}") },
        act_x: x,
        act_y: y,
    }
}

/// `O`-basis of `Hom_A(L1, L2)`: all integral matrices `T` with
/// `T X_1 = X_2 T` and `T Y_1 = Y_2 T`. The returned list is a basis of the
/// full (saturated) `O`-module of homomorphisms.
pub fn hom_space(dvr: &Dvr, l1: &Lattice, l2: &Lattice) -> Vec<OMatrix> {
    let n1 = l1.rank();
    let n2 = l2.rank();
    if n1 == 0 || n2 == 0 {
        return Vec::new();
    }
    let nvars = n1 * n2;
    let mut elim = RowEliminator::new(dvr, nvars, 0);
    // Variable (i, j) = entry T[i][j] at index i * n1 + j. The (i, j) entry
    // of T*S1 - S2*T contributes +S1[k][j] on var (i, k) and -S2[i][k] on
    // var (k, j); coefficients on coinciding variables must be accumulated.
    let mut push_conditions = |s1: &OMatrix, s2: &OMatrix| {
        for i in 0..n2 {
            for j in 0..n1 {
                let mut row: std::collections::HashMap<usize, crate::dvr::Scalar> =
                    std::collections::HashMap::new();
                for k in 0..n1 {
                    let c = s1.get(k, j);
                    if !num_traits::Zero::is_zero(c) {
                        *row.entry(i * n1 + k)
                            .or_insert_with(|| crate::dvr::Scalar::from_integer(0.into())) += c;
                    }
                }
                for k in 0..n2 {
                    let c = s2.get(i, k);
                    if !num_traits::Zero::is_zero(c) {
                        *row.entry(k * n1 + j)
                            .or_insert_with(|| crate::dvr::Scalar::from_integer(0.into())) -= c;
                    }
                }
                let entries: Vec<(usize, crate::dvr::Scalar)> = row
                    .into_iter()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(c))
                    .collect();
                elim.add_row(entries, Vec::new());
            }
        }
    };
    push_conditions(l1.act_x(), l2.act_x());
    push_conditions(l1.act_y(), l2.act_y());
    let kernel = elim.kernel_basis();
    (0..kernel.ncols())
        .map(|c| OMatrix::from_vectorized(n2, n1, kernel.col(c)))
        .collect()
}

/// Verifies that `t` is an `A`-homomorphism `l1 -> l2` with entries in `O`.
pub fn is_hom(dvr: &Dvr, l1: &Lattice, l2: &Lattice, t: &OMatrix) -> bool {
    t.nrows() == l2.rank()
        && t.ncols() == l1.rank()
        && t.is_integral(dvr)
        && t.mul(l1.act_x()) == l2.act_x().mul(t)
        && t.mul(l1.act_y()) == l2.act_y().mul(t)
}

/// Saturated kernel of a homomorphism `t : l1 -> l2` as a sublattice basis:
/// columns form an `O`-basis of `ker(t) ∩ l1`, and the restricted actions
/// are returned as a lattice.
pub fn kernel_lattice(dvr: &Dvr, l1: &Lattice, t: &OMatrix) -> Result<(Lattice, OMatrix), Error> {
    let basis = kernel_saturated(dvr, t);
    let act_x = crate::linalg::solve_matrix(dvr, &basis, &l1.act_x().mul(&basis))?;
    let act_y = crate::linalg::solve_matrix(dvr, &basis, &l1.act_y().mul(&basis))?;
    let lat = Lattice::new(format!("ker({})", l1.name), dvr, act_x, act_y)?;
    Ok((lat, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::Scalar;

    fn dvr() -> Dvr {
        Dvr::new(3).unwrap()
    }

    #[test]
    fn regular_one_has_documented_shape() {
        let a = regular(1);
        assert_eq!(a.rank(), 4);
        let x = a.act_x();
        let nonzero: Vec<(usize, usize)> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| !num_traits::Zero::is_zero(x.get(i, j)))
            .collect();
        assert_eq!(nonzero, vec![(1, 0), (3, 2)]);
        let xy = a.act_xy();
        let nonzero_xy: Vec<(usize, usize)> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| !num_traits::Zero::is_zero(xy.get(i, j)))
            .collect();
        assert_eq!(nonzero_xy, vec![(3, 0)]);
        assert_eq!(xy, a.act_y().mul(a.act_x()));
    }

    #[test]
    fn direct_sum_ranks_add() {
        let s = regular(1).direct_sum(&regular(1));
        assert_eq!(s.rank(), 8);
        assert_eq!(regular(2).rank(), 8);
    }

    #[test]
    fn tensor_k_of_regular_is_projective_module() {
        let d = dvr();
        let m = regular(1).tensor_k(&d).unwrap();
        let dec = crate::modk::decompose(&m).unwrap();
        assert_eq!(dec.summands, vec![(crate::modk::ModLabel::Proj, 1)]);
    }

    #[test]
    fn hom_space_of_regular_has_rank_four() {
        let d = dvr();
        let a = regular(1);
        let homs = hom_space(&d, &a, &a);
        assert_eq!(homs.len(), 4);
        for t in &homs {
            assert!(is_hom(&d, &a, &a, t));
        }
        let aa = regular(2);
        assert_eq!(hom_space(&d, &aa, &aa).len(), 16);
    }

    #[test]
    fn projectivity_detection() {
        let d = dvr();
        assert!(regular(1).is_projective(&d));
        assert!(regular(2).is_projective(&d));
        assert!(Lattice::zero().is_projective(&d));
        assert!(regular(1).has_natural_property(&d));
    }

    #[test]
    fn invalid_actions_are_rejected() {
        let d = dvr();
        let bad = OMatrix::identity(2);
        assert!(Lattice::new("bad", &d, bad.clone(), OMatrix::zeros(2, 2)).is_err()); // X^2 != 0
        let half = OMatrix::from_str_rows(&[vec!["0", "0"], vec!["1/3", "0"]]).unwrap();
        assert!(Lattice::new("frac", &d, half, OMatrix::zeros(2, 2)).is_err()); // not integral
    }

    #[test]
    fn conjugation_preserves_validity() {
        let d = dvr();
        let a = regular(1);
        let g = OMatrix::from_int_rows(&[
            vec![1, 0, 0, 0],
            vec![2, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![1, 0, 3, 1],
        ]);
        let c = a.conjugate(&d, &g).unwrap();
        assert_eq!(c.rank(), 4);
        assert!(c.is_projective(&d));
    }

    #[test]
    fn apply_matches_action_composition() {
        let d = dvr();
        let a = regular(1);
        let e0: Vec<Scalar> = (0..4)
            .map(|i| Scalar::from_integer(if i == 0 { 1 } else { 0 }.into()))
            .collect();
        let coeffs = [
            Scalar::from_integer(0.into()),
            Scalar::from_integer(0.into()),
            Scalar::from_integer(0.into()),
            Scalar::from_integer(1.into()),
        ];
        let got = a.apply(&coeffs, &e0);
        assert_eq!(got, a.act_xy().mul_vec(&e0));
        let _ = d;
    }
}
