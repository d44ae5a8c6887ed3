//! Sparse exact row-elimination engine over `O`.
//!
//! This is the workhorse behind saturated kernels, `O`-solvability, and rank
//! over the fraction field. It performs only row operations, which leave the
//! solution set of `M x = b` untouched:
//!
//! 1. an incoming row is reduced against all stored pivot rows;
//! 2. the surviving row is rescaled by `eps^{-min valuation}` so its minimal
//!    valuation becomes 0 (legal for solving; it would *not* be legal for
//!    row-space computations, which this engine deliberately does not offer);
//! 3. a unit entry is chosen as pivot (smallest column index among valuation-0
//!    entries) and the row is normalized so the pivot equals 1.
//!
//! Because every stored pivot is exactly 1 and back-substitution divides by
//! nothing else, kernel vectors built by setting one free coordinate to 1 have
//! all entries in `O`, and they form a basis of the *saturated* kernel
//! `ker_K(M) ∩ O^n`: any `O`-kernel vector, minus the combination of basis
//! vectors matching its free coordinates, has zero free coordinates and pivot
//! coordinates solving a homogeneous unit-triangular system, hence is zero.
//! The same argument shows the particular solution with free coordinates 0 is
//! integral if and only if the system has any solution over `O`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::dvr::{Dvr, Scalar, Valuation};
use crate::error::Error;
use crate::linalg::dense::OMatrix;

/// One stored, normalized pivot row.
struct EchRow {
    /// Sparse entries, sorted by column, pivot entry exactly 1.
    cols: Vec<(usize, Scalar)>,
    /// Dense augmented part (right-hand sides), transformed along.
    aug: Vec<Scalar>,
    pivot_col: usize,
}

/// Incremental row-elimination state.
pub struct RowEliminator {
    dvr: Dvr,
    ncols: usize,
    naug: usize,
    rows: Vec<EchRow>,
    /// For each column, the index into `rows` whose pivot sits there.
    row_of_pivot_col: Vec<Option<usize>>,
    /// Augmented columns that hit a `0 = nonzero` row (inconsistent over K).
    inconsistent: Vec<bool>,
}

impl RowEliminator {
    pub fn new(dvr: &Dvr, ncols: usize, naug: usize) -> Self {
        RowEliminator {
            dvr: dvr.clone(),
            ncols,
            naug,
            rows: Vec::new(),
            row_of_pivot_col: vec![None; ncols],
            inconsistent: vec![false; naug],
        }
    }

    /// Number of pivots so far = rank over `K` of the fed rows.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Feeds one sparse row (unsorted, duplicate-free columns) with its
    /// augmented entries.
    pub fn add_row(&mut self, entries: Vec<(usize, Scalar)>, aug: Vec<Scalar>) {
        debug_assert_eq!(aug.len(), self.naug);
        let mut work: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in entries {
            debug_assert!(c < self.ncols);
            if !v.is_zero() {
                let previous = work.insert(c, v);
                debug_assert!(previous.is_none(), "duplicate column");
            }
        }
        let mut aug = aug;

        // Eliminate pivot columns in ascending order of the owning row's
        // insertion index; eliminating against row k can only introduce pivot
        // columns owned by rows inserted after k, so each row fires at most
        // once.
        let mut pending: BTreeSet<usize> = work
            .keys()
            .filter_map(|c| self.row_of_pivot_col[*c])
            .collect();
        while let Some(r) = pending.iter().next().copied() {
            pending.remove(&r);
            let pc = self.rows[r].pivot_col;
            let Some(coef) = work.remove(&pc) else {
                continue;
            };
            if coef.is_zero() {
                continue;
            }
            // work -= coef * rows[r]  (pivot entry of rows[r] is 1).
            for (c, v) in &self.rows[r].cols {
                if *c == pc {
                    continue;
                }
                let entry = work.entry(*c).or_insert_with(Scalar::zero);
                *entry -= &coef * v;
                if entry.is_zero() {
                    work.remove(c);
                } else if let Some(owner) = self.row_of_pivot_col[*c] {
                    pending.insert(owner);
                }
            }
            for (j, b) in aug.iter_mut().enumerate() {
                let rv = &self.rows[r].aug[j];
                if !rv.is_zero() {
                    *b -= &coef * rv;
                }
            }
        }

        if work.is_empty() {
            // Zero row: record inconsistency for augmented targets.
            for (j, b) in aug.iter().enumerate() {
                if !b.is_zero() {
                    self.inconsistent[j] = true;
                }
            }
            return;
        }

        // Rescale so the minimal valuation becomes 0.
        let min_val = work
            .values()
            .map(|v| self.dvr.valuation(v))
            .min()
            .unwrap_or(Valuation::Infinity);
        let Valuation::Finite(mv) = min_val else {
            unreachable!("nonempty row with all-zero entries")
        };
        if mv != 0 {
            let scale = self.dvr.eps_pow(-mv);
            for v in work.values_mut() {
                *v *= &scale;
            }
            for b in aug.iter_mut() {
                *b *= &scale;
            }
        }

        // Pivot: smallest column index among unit entries.
        let pivot_col = *work
            .iter()
            .find(|(_, v)| self.dvr.is_unit(v))
            .expect("a unit entry exists after rescaling")
            .0;
        let pivot_val = work[&pivot_col].clone();
        let inv = pivot_val.recip();
        let cols: Vec<(usize, Scalar)> = work
            .into_iter()
            .map(|(c, v)| (c, if c == pivot_col { Scalar::from_integer(1.into()) } else { v * &inv }))
            .collect();
        for b in aug.iter_mut() {
            *b *= &inv;
        }

        self.row_of_pivot_col[pivot_col] = Some(self.rows.len());
        self.rows.push(EchRow { cols, aug, pivot_col });
    }

    /// Feeds every row of a dense matrix, with optional dense right-hand
    /// sides given as columns of `rhs`.
    pub fn add_matrix(&mut self, m: &OMatrix, rhs: Option<&OMatrix>) {
        if let Some(b) = rhs {
            debug_assert_eq!(b.nrows(), m.nrows());
            debug_assert_eq!(b.ncols(), self.naug);
        }
        for i in 0..m.nrows() {
            let entries: Vec<(usize, Scalar)> = (0..m.ncols())
                .filter(|&j| !m.get(i, j).is_zero())
                .map(|j| (j, m.get(i, j).clone()))
                .collect();
            let aug = match rhs {
                Some(b) => (0..self.naug).map(|j| b.get(i, j).clone()).collect(),
                None => vec![Scalar::zero(); self.naug],
            };
            self.add_row(entries, aug);
        }
    }

    /// Free (non-pivot) columns in ascending order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|&c| self.row_of_pivot_col[c].is_none())
            .collect()
    }

    /// Basis of the saturated kernel, as columns of a matrix.
    ///
    /// One basis vector per free column: that coordinate is 1, other free
    /// coordinates 0, pivot coordinates determined by back-substitution in
    /// reverse insertion order.
    pub fn kernel_basis(&self) -> OMatrix {
        let free = self.free_columns();
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![Scalar::zero(); self.ncols];
            x[f] = Scalar::from_integer(1.into());
            self.back_substitute(&mut x, None);
            cols.push(x);
        }
        OMatrix::from_columns(self.ncols, &cols)
    }

    /// Solves for the `j`-th augmented column; `None` when no solution exists
    /// over `O` (inconsistent over `K`, or integral solvability fails).
    pub fn solve_aug(&self, j: usize) -> Option<Vec<Scalar>> {
        debug_assert!(j < self.naug);
        if self.inconsistent[j] {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.ncols];
        self.back_substitute(&mut x, Some(j));
        if x.iter().all(|v| self.dvr.is_integral(v)) {
            Some(x)
        } else {
            None
        }
    }

    /// Shared back-substitution: fills pivot coordinates of `x` given its
    /// free coordinates, optionally honoring augmented column `j`.
    fn back_substitute(&self, x: &mut [Scalar], aug_j: Option<usize>) {
        for r in (0..self.rows.len()).rev() {
            let row = &self.rows[r];
            let mut acc = match aug_j {
                Some(j) => row.aug[j].clone(),
                None => Scalar::zero(),
            };
            for (c, v) in &row.cols {
                if *c == row.pivot_col {
                    continue;
                }
                if !x[*c].is_zero() {
                    acc -= v * &x[*c];
                }
            }
            x[row.pivot_col] = acc;
        }
    }
}

/// Rank of a dense matrix over the fraction field `K`.
pub fn rank_q(dvr: &Dvr, m: &OMatrix) -> usize {
    let mut e = RowEliminator::new(dvr, m.ncols(), 0);
    e.add_matrix(m, None);
    e.rank()
}

/// Basis of the saturated kernel `{x in O^n : M x = 0}` of a dense matrix,
/// returned as the columns of an `n x k` matrix (deterministic).
pub fn kernel_saturated(dvr: &Dvr, m: &OMatrix) -> OMatrix {
    let mut e = RowEliminator::new(dvr, m.ncols(), 0);
    e.add_matrix(m, None);
    e.kernel_basis()
}

/// Solves `M x = b` over `O`.
///
/// Returns [`Error::NoSolution`] both when the system is inconsistent over
/// `K` and when every `K`-solution needs denominators divisible by `p`.
pub fn solve(dvr: &Dvr, m: &OMatrix, b: &[Scalar]) -> Result<Vec<Scalar>, Error> {
    if b.len() != m.nrows() {
        return Err(Error::Invariant(format!(
            "solve: rhs length {} does not match {} rows",
            b.len(),
            m.nrows()
        )));
    }
    let rhs = OMatrix::from_columns(b.len(), &[b.to_vec()]);
    let mut e = RowEliminator::new(dvr, m.ncols(), 1);
    e.add_matrix(m, Some(&rhs));
    e.solve_aug(0).ok_or(Error::NoSolution)
}

/// Solves `M X = B` over `O` for every column of `B` at once.
///
/// Returns the solution matrix, or [`Error::NoSolution`] if any column fails.
pub fn solve_matrix(dvr: &Dvr, m: &OMatrix, b: &OMatrix) -> Result<OMatrix, Error> {
    if b.nrows() != m.nrows() {
        return Err(Error::Invariant(format!(
            "solve_matrix: rhs has {} rows, matrix has {}",
            b.nrows(),
            m.nrows()
        )));
    }
    let mut e = RowEliminator::new(dvr, m.ncols(), b.ncols());
    e.add_matrix(m, Some(b));
    let mut cols = Vec::with_capacity(b.ncols());
    for j in 0..b.ncols() {
        cols.push(e.solve_aug(j).ok_or(Error::NoSolution)?);
    }
    Ok(OMatrix::from_columns(m.ncols(), &cols))
}

/// Column-echelon basis of an `O`-span, with the pivot row of each basis
/// column. Column `k` is zero above `pivot_rows[k]`, which makes exact
/// membership testable by forward substitution.
#[derive(Debug, Clone)]
pub struct ColumnSpan {
    pub basis: OMatrix,
    pub pivot_rows: Vec<usize>,
}

impl ColumnSpan {
    /// Exact `O`-span membership: the coefficients expressing `v` in the
    /// basis, or `None` when `v` is outside the span. Each step divides by a
    /// pivot and demands the quotient be integral; the staircase shape makes
    /// the coefficients forced, so this decides membership exactly.
    pub fn contains(&self, dvr: &Dvr, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let nrows = self.basis.nrows();
        assert_eq!(v.len(), nrows, "span membership: wrong vector length");
        let mut residual = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.pivot_rows.len());
        let mut next_pivot = 0usize;
        for r in 0..nrows {
            if next_pivot < self.pivot_rows.len() && self.pivot_rows[next_pivot] == r {
                let k = next_pivot;
                next_pivot += 1;
                if residual[r].is_zero() {
                    coeffs.push(Scalar::zero());
                    continue;
                }
                let c = &residual[r] / self.basis.get(r, k);
                if !dvr.is_integral(&c) {
                    return None;
                }
                for i in r..nrows {
                    let b = self.basis.get(i, k);
                    if !b.is_zero() {
                        let x = &residual[i] - &c * b;
                        residual[i] = x;
                    }
                }
                coeffs.push(c);
            } else if !residual[r].is_zero() {
                return None;
            }
        }
        Some(coeffs)
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    /// `K`-span membership: the (unique) fraction-field coefficients
    /// expressing `v` in the basis, or `None` when `v` is outside even the
    /// `K`-span. Same forward substitution as [`ColumnSpan::contains`] but
    /// without the integrality requirement; the caller can read off the
    /// minimal `ε`-power needed to pull `v` into the `O`-span from the
    /// coefficient valuations.
    pub fn solve_k(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let nrows = self.basis.nrows();
        assert_eq!(v.len(), nrows, "span solve: wrong vector length");
        let mut residual = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.pivot_rows.len());
        let mut next_pivot = 0usize;
        for r in 0..nrows {
            if next_pivot < self.pivot_rows.len() && self.pivot_rows[next_pivot] == r {
                let k = next_pivot;
                next_pivot += 1;
                if residual[r].is_zero() {
                    coeffs.push(Scalar::zero());
                    continue;
                }
                let c = &residual[r] / self.basis.get(r, k);
                for i in r..nrows {
                    let b = self.basis.get(i, k);
                    if !b.is_zero() {
                        let x = &residual[i] - &c * b;
                        residual[i] = x;
                    }
                }
                coeffs.push(c);
            } else if !residual[r].is_zero() {
                return None;
            }
        }
        Some(coeffs)
    }
}

/// Column echelon reduction of the `O`-span of the columns of `m`, using
/// `O`-invertible column operations only (no rescaling), so the span is
/// preserved exactly. Deterministic; result columns are echelon-ordered.
pub fn column_span(dvr: &Dvr, m: &OMatrix) -> ColumnSpan {
    let mut cols: Vec<Vec<Scalar>> = (0..m.ncols()).map(|j| m.col(j)).collect();
    let nrows = m.nrows();
    let mut pivot_rows = Vec::new();
    let mut done = 0usize;
    for r in 0..nrows {
        if done == cols.len() {
            break;
        }
        // Pivot: active column with minimal valuation at row r (ties: first).
        let mut best: Option<(usize, i64)> = None;
        for (idx, col) in cols.iter().enumerate().skip(done) {
            if let Valuation::Finite(v) = dvr.valuation(&col[r]) {
                if best.map_or(true, |(_, bv)| v < bv) {
                    best = Some((idx, v));
                }
            }
        }
        let Some((pidx, _)) = best else {
            continue;
        };
        cols.swap(done, pidx);
        let pivot = cols[done][r].clone();
        for j in done + 1..cols.len() {
            if cols[j][r].is_zero() {
                continue;
            }
            let coef = &cols[j][r] / &pivot;
            debug_assert!(dvr.is_integral(&coef), "span pivot was not minimal");
            for i in 0..nrows {
                if !cols[done][i].is_zero() {
                    let v = &cols[j][i] - &coef * &cols[done][i];
                    cols[j][i] = v;
                }
            }
        }
        pivot_rows.push(r);
        done += 1;
    }
    ColumnSpan {
        basis: OMatrix::from_columns(nrows, &cols[..done]),
        pivot_rows,
    }
}

/// Basis of the `O`-span of the columns of `m` (see [`column_span`]).
pub fn span_basis_columns(dvr: &Dvr, m: &OMatrix) -> OMatrix {
    column_span(dvr, m).basis
}
