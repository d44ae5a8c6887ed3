//! Smith normal form over the local PID `O`.
//!
//! Over a discrete valuation ring every matrix is equivalent to a diagonal
//! matrix of uniformizer powers `diag(eps^{a_1}, ..., eps^{a_r}, 0, ...)`
//! with `a_1 <= a_2 <= ...`. Pivoting on an entry of minimal valuation keeps
//! all elimination multipliers in `O`, and because valuations cannot drop
//! below the pivot's during elimination the diagonal comes out ascending
//! automatically. Units are folded into `U`, so `D` holds exact powers of
//! `eps`.

use num_traits::{One, Zero};

use crate::dvr::{Dvr, Scalar, Valuation};
use crate::linalg::dense::OMatrix;

/// Result of [`smith_local`]: `u * m * v = d`, with exact inverses of the
/// unimodular factors tracked alongside (they are produced by mirroring the
/// elementary operations, not by inverting afterwards).
pub struct Smith {
    pub u: OMatrix,
    pub d: OMatrix,
    pub v: OMatrix,
    pub u_inv: OMatrix,
    pub v_inv: OMatrix,
}

impl Smith {
    /// Number of nonzero diagonal entries (= rank over `K`).
    pub fn rank(&self) -> usize {
        (0..self.d.nrows().min(self.d.ncols()))
            .take_while(|&i| !self.d.get(i, i).is_zero())
            .count()
    }

    /// Valuations of the nonzero diagonal entries, ascending.
    pub fn divisor_valuations(&self, dvr: &Dvr) -> Vec<i64> {
        (0..self.rank())
            .map(|i| match dvr.valuation(self.d.get(i, i)) {
                Valuation::Finite(v) => v,
                Valuation::Infinity => unreachable!("nonzero divisor"),
            })
            .collect()
    }
}

/// Computes the Smith normal form of `m` over `O`.
pub fn smith_local(dvr: &Dvr, m: &OMatrix) -> Smith {
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut w = m.clone();
    let mut u = OMatrix::identity(nr);
    let mut u_inv = OMatrix::identity(nr);
    let mut v = OMatrix::identity(nc);
    let mut v_inv = OMatrix::identity(nc);

    let t_max = nr.min(nc);
    for t in 0..t_max {
        // Minimal-valuation pivot in the trailing submatrix; ties break to
        // the lowest row, then the lowest column.
        let mut best: Option<(usize, usize, i64)> = None;
        for i in t..nr {
            for j in t..nc {
                if let Valuation::Finite(val) = dvr.valuation(w.get(i, j)) {
                    if best.map_or(true, |(_, _, bv)| val < bv) {
                        best = Some((i, j, val));
                    }
                }
            }
        }
        let Some((pi, pj, pval)) = best else {
            break; // trailing submatrix is zero
        };

        if pi != t {
            swap_rows(&mut w, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut u_inv, t, pi);
        }
        if pj != t {
            swap_cols(&mut w, t, pj);
            swap_cols(&mut v, t, pj);
            swap_rows(&mut v_inv, t, pj);
        }

        let pivot = w.get(t, t).clone();
        // Clear the pivot column with row operations.
        for i in t + 1..nr {
            if w.get(i, t).is_zero() {
                continue;
            }
            let coef = w.get(i, t) / &pivot;
            debug_assert!(dvr.is_integral(&coef), "pivot valuation not minimal");
            row_axpy(&mut w, i, t, &coef); // row_i -= coef * row_t
            row_axpy(&mut u, i, t, &coef);
            col_axpy_rev(&mut u_inv, t, i, &coef); // col_t += coef * col_i
        }
        // Clear the pivot row with column operations.
        for j in t + 1..nc {
            if w.get(t, j).is_zero() {
                continue;
            }
            let coef = w.get(t, j) / &pivot;
            debug_assert!(dvr.is_integral(&coef), "pivot valuation not minimal");
            col_axpy(&mut w, j, t, &coef); // col_j -= coef * col_t
            col_axpy(&mut v, j, t, &coef);
            row_axpy_rev(&mut v_inv, t, j, &coef); // row_t += coef * row_j
        }
        // Normalize the pivot to an exact power of eps by a unit row scaling.
        let unit = &pivot / dvr.eps_pow(pval);
        debug_assert!(dvr.is_unit(&unit));
        if !unit.is_one() {
            let inv = unit.recip();
            scale_row(&mut w, t, &inv);
            scale_row(&mut u, t, &inv);
            scale_col(&mut u_inv, t, &unit);
        }
        debug_assert_eq!(w.get(t, t), &dvr.eps_pow(pval));
    }

    // Ascending valuations hold by the minimal-pivot invariant; check.
    debug_assert!({
        let vals: Vec<_> = (0..t_max).map(|i| dvr.valuation(w.get(i, i))).collect();
        vals.windows(2).all(|pair| pair[0] <= pair[1])
    });

    Smith { u, d: w, v, u_inv, v_inv }
}

/// True when a square matrix is invertible over `O` (unit determinant).
pub fn is_unimodular(dvr: &Dvr, m: &OMatrix) -> bool {
    m.nrows() == m.ncols() && m.is_integral(dvr) && dvr.is_unit(&m.det())
}

fn swap_rows(m: &mut OMatrix, a: usize, b: usize) {
    for j in 0..m.ncols() {
        let x = m.get(a, j).clone();
        let y = m.get(b, j).clone();
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

fn swap_cols(m: &mut OMatrix, a: usize, b: usize) {
    for i in 0..m.nrows() {
        let x = m.get(i, a).clone();
        let y = m.get(i, b).clone();
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

/// `row_i -= coef * row_t`
fn row_axpy(m: &mut OMatrix, i: usize, t: usize, coef: &Scalar) {
    for j in 0..m.ncols() {
        if !m.get(t, j).is_zero() {
            let v = m.get(i, j) - coef * m.get(t, j);
            m.set(i, j, v);
        }
    }
}

/// `row_t += coef * row_j`
fn row_axpy_rev(m: &mut OMatrix, t: usize, j: usize, coef: &Scalar) {
    for c in 0..m.ncols() {
        if !m.get(j, c).is_zero() {
            let v = m.get(t, c) + coef * m.get(j, c);
            m.set(t, c, v);
        }
    }
}

/// `col_j -= coef * col_t`
fn col_axpy(m: &mut OMatrix, j: usize, t: usize, coef: &Scalar) {
    for i in 0..m.nrows() {
        if !m.get(i, t).is_zero() {
            let v = m.get(i, j) - coef * m.get(i, t);
            m.set(i, j, v);
        }
    }
}

/// `col_t += coef * col_i`
fn col_axpy_rev(m: &mut OMatrix, t: usize, i: usize, coef: &Scalar) {
    for r in 0..m.nrows() {
        if !m.get(r, i).is_zero() {
            let v = m.get(r, t) + coef * m.get(r, i);
            m.set(r, t, v);
        }
    }
}

fn scale_row(m: &mut OMatrix, i: usize, c: &Scalar) {
    for j in 0..m.ncols() {
        if !m.get(i, j).is_zero() {
            let v = m.get(i, j) * c;
            m.set(i, j, v);
        }
    }
}

fn scale_col(m: &mut OMatrix, j: usize, c: &Scalar) {
    for i in 0..m.nrows() {
        if !m.get(i, j).is_zero() {
            let v = m.get(i, j) * c;
            m.set(i, j, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::parse_scalar;

    fn check_factorization(dvr: &Dvr, m: &OMatrix, s: &Smith) {
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "U m V != D");
        assert_eq!(s.u.mul(&s.u_inv), OMatrix::identity(m.nrows()), "U U^-1");
        assert_eq!(s.v.mul(&s.v_inv), OMatrix::identity(m.ncols()), "V V^-1");
        assert!(s.u.is_integral(dvr) && s.u_inv.is_integral(dvr));
        assert!(s.v.is_integral(dvr) && s.v_inv.is_integral(dvr));
        // Diagonal is exact eps powers, ascending; off-diagonal zero.
        let mut last = -1i64;
        for i in 0..s.d.nrows() {
            for j in 0..s.d.ncols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero(), "off-diagonal junk");
                } else if !s.d.get(i, i).is_zero() {
                    let v = dvr.valuation(s.d.get(i, i)).finite().unwrap();
                    assert_eq!(s.d.get(i, i), &dvr.eps_pow(v), "not an eps power");
                    assert!(v >= last);
                    last = v;
                }
            }
        }
    }

    #[test]
    fn smith_diag_p_one() {
        // smith([[p,0],[0,1]]) -> diag(1, p)
        let o = Dvr::new(3).unwrap();
        let m = OMatrix::from_int_rows(&[vec![3, 0], vec![0, 1]]);
        let s = smith_local(&o, &m);
        check_factorization(&o, &m, &s);
        assert_eq!(s.divisor_valuations(&o), vec![0, 1]);
    }

    #[test]
    fn smith_zero_matrix() {
        let o = Dvr::new(3).unwrap();
        let m = OMatrix::zeros(2, 3);
        let s = smith_local(&o, &m);
        check_factorization(&o, &m, &s);
        assert_eq!(s.rank(), 0);
        assert!(s.d.is_zero());
    }

    #[test]
    fn smith_rank_one_with_cancellation() {
        // [[1, p], [p, p^2]] has rank 1: divisors (1), then a zero row.
        let o = Dvr::new(3).unwrap();
        let m = OMatrix::from_int_rows(&[vec![1, 3], vec![3, 9]]);
        let s = smith_local(&o, &m);
        check_factorization(&o, &m, &s);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.divisor_valuations(&o), vec![0]);
    }

    #[test]
    fn smith_units_are_folded() {
        let o = Dvr::new(3).unwrap();
        let m = OMatrix::from_str_rows(&[vec!["2/5", "1"], vec!["0", "6"]]).unwrap();
        let s = smith_local(&o, &m);
        check_factorization(&o, &m, &s);
        assert_eq!(s.divisor_valuations(&o), vec![0, 1]);
    }

    #[test]
    fn smith_random_round_trip() {
        let o = Dvr::new(3).unwrap();
        let mut state = 42u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..30 {
            let rows = 1 + (next() % 5) as usize;
            let cols = 1 + (next() % 5) as usize;
            let m = OMatrix::from_fn(rows, cols, |_, _| {
                let base = (next() % 11) as i64 - 5;
                let pow = next() % 3;
                parse_scalar(&format!("{}", base * 3i64.pow(pow as u32))).unwrap()
            });
            let s = smith_local(&o, &m);
            check_factorization(&o, &m, &s);
        }
    }

    #[test]
    fn unimodular_check() {
        let o = Dvr::new(3).unwrap();
        assert!(is_unimodular(&o, &OMatrix::identity(3)));
        let m = OMatrix::from_int_rows(&[vec![2, 1], vec![1, 1]]);
        assert!(is_unimodular(&o, &m)); // det 1
        let m2 = OMatrix::from_int_rows(&[vec![3, 0], vec![0, 1]]);
        assert!(!is_unimodular(&o, &m2)); // det 3
        let m3 = OMatrix::from_str_rows(&[vec!["1/3", "0"], vec!["0", "3"]]).unwrap();
        assert!(!is_unimodular(&o, &m3)); // det 1 but not integral
    }
}
