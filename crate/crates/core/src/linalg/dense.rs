//! Dense matrices over the exact scalar field.
//!
//! [`OMatrix`] is a plain row-major dense matrix of exact rationals. It is
//! used for everything user-facing; large kernel/solve problems are routed
//! through the sparse elimination engine internally but always enter and
//! leave as dense matrices.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dvr::{parse_scalar, scalar_to_string, Dvr, Scalar};
use crate::error::Error;
use crate::linalg::modp::KMatrix;

/// A dense matrix over `K = Q` (usually with entries in `O`).
#[derive(Clone, PartialEq, Eq)]
pub struct OMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl std::fmt::Debug for OMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "OMatrix({}x{}) [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| scalar_to_string(self.get(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl OMatrix {
    /// The zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        OMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    /// The identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = OMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from a closure on (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        OMatrix { rows, cols, data }
    }

    /// Builds a matrix from rows of integers (test/fixture convenience).
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        OMatrix::from_fn(r, c, |i, j| Scalar::from_integer(rows[i][j].into()))
    }

    /// Builds a matrix from rows of exact scalar strings such as `"3/5"`.
    pub fn from_str_rows(rows: &[Vec<&str>]) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if !rows.iter().all(|row| row.len() == c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            for s in row {
                data.push(parse_scalar(s)?);
            }
        }
        Ok(OMatrix { rows: r, cols: c, data })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    /// Immutable access to a full row as a slice.
    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// A column copied out as a vector.
    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// True if every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &OMatrix) -> OMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = OMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a * b);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &OMatrix) -> OMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        OMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &OMatrix) -> OMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        OMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> OMatrix {
        let data = self.data.iter().map(|a| -a).collect();
        OMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> OMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        OMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> OMatrix {
        OMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &OMatrix) -> OMatrix {
        assert_eq!(self.rows, other.rows, "hstack shape mismatch");
        OMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vstack(&self, other: &OMatrix) -> OMatrix {
        assert_eq!(self.cols, other.cols, "vstack shape mismatch");
        OMatrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    /// Block diagonal sum of two matrices.
    pub fn block_diag(&self, other: &OMatrix) -> OMatrix {
        OMatrix::from_fn(
            self.rows + other.rows,
            self.cols + other.cols,
            |i, j| {
                if i < self.rows && j < self.cols {
                    self.get(i, j).clone()
                } else if i >= self.rows && j >= self.cols {
                    other.get(i - self.rows, j - self.cols).clone()
                } else {
                    Scalar::zero()
                }
            },
        )
    }

    /// Copies a contiguous block of rows and columns.
    pub fn submatrix(&self, row0: usize, rows: usize, col0: usize, cols: usize) -> OMatrix {
        assert!(row0 + rows <= self.rows && col0 + cols <= self.cols);
        OMatrix::from_fn(rows, cols, |i, j| self.get(row0 + i, col0 + j).clone())
    }

    /// Matrix with the selected columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> OMatrix {
        OMatrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// Reduction of every entry into the residue field.
    ///
    /// Panics if an entry is not integral (caller bug).
    pub fn reduce(&self, dvr: &Dvr) -> KMatrix {
        let mut out = KMatrix::zeros(self.rows, self.cols, dvr.p());
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, dvr.reduce(self.get(i, j)));
            }
        }
        out
    }

    /// Entry-wise lift of a residue matrix, with representatives in `0..p`.
    pub fn lift(m: &KMatrix, dvr: &Dvr) -> OMatrix {
        OMatrix::from_fn(m.nrows(), m.ncols(), |i, j| dvr.lift(m.get(i, j)))
    }

    /// True when every entry lies in `O`.
    pub fn is_integral(&self, dvr: &Dvr) -> bool {
        self.data.iter().all(|x| dvr.is_integral(x))
    }

    /// Minimal valuation over all entries (`Infinity` for the zero matrix).
    pub fn min_valuation(&self, dvr: &Dvr) -> crate::dvr::Valuation {
        self.data
            .iter()
            .map(|x| dvr.valuation(x))
            .min()
            .unwrap_or(crate::dvr::Valuation::Infinity)
    }

    /// Exact determinant by fraction Gaussian elimination.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        let mut w = self.clone();
        let mut det = Scalar::one();
        for t in 0..n {
            // Find a nonzero pivot in column t at or below row t.
            let Some(pr) = (t..n).find(|&i| !w.get(i, t).is_zero()) else {
                return Scalar::zero();
            };
            if pr != t {
                for j in 0..n {
                    let a = w.get(t, j).clone();
                    let b = w.get(pr, j).clone();
                    w.set(t, j, b);
                    w.set(pr, j, a);
                }
                det = -det;
            }
            let pivot = w.get(t, t).clone();
            det *= &pivot;
            for i in t + 1..n {
                if w.get(i, t).is_zero() {
                    continue;
                }
                let coef = w.get(i, t) / &pivot;
                for j in t..n {
                    let v = w.get(i, j) - &coef * w.get(t, j);
                    w.set(i, j, v);
                }
            }
        }
        det
    }

    /// Entry-wise canonical reduction mod `eps^k` (see [`Dvr::reduce_mod_power`]).
    pub fn reduce_mod_power(&self, dvr: &Dvr, k: u32) -> OMatrix {
        OMatrix::from_fn(self.rows, self.cols, |i, j| {
            dvr.reduce_mod_power(self.get(i, j), k)
        })
    }

    /// Flattens the matrix into a row-major vector (for `vec(T)` systems).
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    /// Rebuilds a matrix from a row-major vector.
    pub fn from_vectorized(rows: usize, cols: usize, v: Vec<Scalar>) -> OMatrix {
        assert_eq!(v.len(), rows * cols);
        OMatrix { rows, cols, data: v }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Scalar>]) -> OMatrix {
        assert!(cols.iter().all(|c| c.len() == rows), "bad column length");
        OMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }
}

/// Serde representation: shape plus exact `"a/b"` strings.
#[derive(Serialize, Deserialize)]
struct OMatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<String>,
}

impl Serialize for OMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        OMatrixRepr {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(scalar_to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = OMatrixRepr::deserialize(deserializer)?;
        if repr.data.len() != repr.rows * repr.cols {
            return Err(serde::de::Error::custom("matrix shape/data mismatch"));
        }
        let data = repr
            .data
            .iter()
            .map(|s| parse_scalar(s).map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(OMatrix {
            rows: repr.rows,
            cols: repr.cols,
            data,
        })
    }
}
