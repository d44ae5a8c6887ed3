//! Dense linear algebra over the residue field `kappa = F_p`.
//!
//! Entries are canonical representatives in `0..p` stored as `u64`. The
//! echelon conventions are fixed (leftmost pivots, top-down scan) so every
//! kernel and solution the crate produces is deterministic.

use serde::{Deserialize, Serialize};

use crate::dvr::{inv_mod, mulmod};

/// A dense matrix over `F_p`.
#[derive(Clone, PartialEq, Eq)]
pub struct KMatrix {
    rows: usize,
    cols: usize,
    p: u64,
    data: Vec<u64>,
}

impl std::fmt::Debug for KMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "KMatrix({}x{} mod {}) [", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl KMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        KMatrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = KMatrix::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, p: u64, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % p);
            }
        }
        KMatrix { rows, cols, p, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> KMatrix {
        KMatrix::from_fn(self.cols, self.rows, self.p, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &KMatrix) -> KMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        assert_eq!(self.p, other.p);
        let mut out = KMatrix::zeros(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = (out.data[idx] + mulmod(a, b, self.p)) % self.p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = (acc + mulmod(self.get(i, j), v[j] % self.p, self.p)) % self.p;
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &KMatrix) -> KMatrix {
        assert_eq!((self.rows, self.cols, self.p), (other.rows, other.cols, other.p));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a + b) % self.p)
            .collect();
        KMatrix { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    pub fn sub(&self, other: &KMatrix) -> KMatrix {
        assert_eq!((self.rows, self.cols, self.p), (other.rows, other.cols, other.p));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a + self.p - b) % self.p)
            .collect();
        KMatrix { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    pub fn scale(&self, c: u64) -> KMatrix {
        let c = c % self.p;
        let data = self.data.iter().map(|a| mulmod(*a, c, self.p)).collect();
        KMatrix { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    pub fn hstack(&self, other: &KMatrix) -> KMatrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.p, other.p);
        KMatrix::from_fn(self.rows, self.cols + other.cols, self.p, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &KMatrix) -> KMatrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.p, other.p);
        KMatrix::from_fn(self.rows + other.rows, self.cols, self.p, |i, j| {
            if i < self.rows {
                self.get(i, j)
            } else {
                other.get(i - self.rows, j)
            }
        })
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> KMatrix {
        KMatrix::from_fn(self.rows, cols.len(), self.p, |i, j| self.get(i, cols[j]))
    }

    /// Reduced row echelon form together with the pivot columns
    /// (deterministic: leftmost pivot, rows scanned top-down).
    pub fn rref(&self) -> (KMatrix, Vec<usize>) {
        let mut w = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..w.cols {
            if r == w.rows {
                break;
            }
            let Some(pr) = (r..w.rows).find(|&i| w.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..w.cols {
                    let a = w.get(r, j);
                    let b = w.get(pr, j);
                    w.set(r, j, b);
                    w.set(pr, j, a);
                }
            }
            let inv = inv_mod(w.get(r, c), p);
            for j in 0..w.cols {
                let v = mulmod(w.get(r, j), inv, p);
                w.set(r, j, v);
            }
            for i in 0..w.rows {
                if i == r || w.get(i, c) == 0 {
                    continue;
                }
                let coef = w.get(i, c);
                for j in 0..w.cols {
                    let v = (w.get(i, j) + p - mulmod(coef, w.get(r, j), p)) % p;
                    w.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (w, pivots)
    }

    /// Rank over `F_p`.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel as columns (deterministic: one vector per free
    /// column in ascending order, that free coordinate set to 1).
    pub fn kernel(&self) -> KMatrix {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = KMatrix::zeros(self.cols, free.len(), self.p);
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                let v = rref.get(i, f);
                if v != 0 {
                    out.set(pc, k, self.p - v);
                }
            }
        }
        out
    }

    /// Solves `M x = b`; `None` if inconsistent. Free variables are set to 0
    /// (lexicographically-first particular solution under the fixed pivots).
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let sols = self.solve_matrix(&KMatrix::from_fn(self.rows, 1, self.p, |i, _| b[i]))?;
        Some(sols.col(0))
    }

    /// Solves `M X = B` column-wise; `None` if any column is inconsistent.
    pub fn solve_matrix(&self, b: &KMatrix) -> Option<KMatrix> {
        assert_eq!(b.rows, self.rows);
        let aug = self.hstack(b);
        let (rref, pivots) = aug.rref();
        // Any pivot in the augmented block means inconsistency.
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut out = KMatrix::zeros(self.cols, b.cols, self.p);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                out.set(pc, j, rref.get(i, self.cols + j));
            }
        }
        Some(out)
    }

    /// Inverse of a square invertible matrix; `None` if singular.
    pub fn inverse(&self) -> Option<KMatrix> {
        assert_eq!(self.rows, self.cols);
        let sol = self.solve_matrix(&KMatrix::identity(self.rows, self.p))?;
        // solve_matrix zero-fills free columns; verify honestly.
        if self.mul(&sol) == KMatrix::identity(self.rows, self.p) {
            Some(sol)
        } else {
            None
        }
    }

    /// Determinant over `F_p` (Gaussian elimination).
    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let p = self.p;
        let mut w = self.clone();
        let mut det = 1u64;
        for t in 0..w.rows {
            let Some(pr) = (t..w.rows).find(|&i| w.get(i, t) != 0) else {
                return 0;
            };
            if pr != t {
                for j in 0..w.cols {
                    let a = w.get(t, j);
                    let b = w.get(pr, j);
                    w.set(t, j, b);
                    w.set(pr, j, a);
                }
                det = (p - det) % p;
            }
            let pivot = w.get(t, t);
            det = mulmod(det, pivot, p);
            let inv = inv_mod(pivot, p);
            for i in t + 1..w.rows {
                if w.get(i, t) == 0 {
                    continue;
                }
                let coef = mulmod(w.get(i, t), inv, p);
                for j in t..w.cols {
                    let v = (w.get(i, j) + p - mulmod(coef, w.get(t, j), p)) % p;
                    w.set(i, j, v);
                }
            }
        }
        det
    }

    /// Characteristic polynomial by the Berkowitz algorithm (division-free).
    ///
    /// Returns coefficients in *descending* form indexed ascending by
    /// codegree: `out[k]` is the coefficient of `t^{n-k}`, so `out[0] = 1`.
    pub fn charpoly(&self) -> Vec<u64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let p = self.p;
        if n == 0 {
            return vec![1];
        }
        // w holds the coefficient vector of the char poly of the leading
        // k x k principal submatrix, length k + 1, w[0] = 1.
        let mut w: Vec<u64> = vec![1, (p - self.get(0, 0) % p) % p];
        for k in 2..=n {
            // q_m sequence: q_0 = 1, q_1 = -a_kk, q_m = -(R M^{m-2} C).
            let a = self.get(k - 1, k - 1);
            let mut q: Vec<u64> = Vec::with_capacity(k + 1);
            q.push(1);
            q.push((p - a % p) % p);
            // Iteratively build M^j C where M is the (k-1) principal block,
            // R the row left of a, C the column above a.
            let mut vc: Vec<u64> = (0..k - 1).map(|i| self.get(i, k - 1)).collect();
            for _m in 2..=k {
                // s = R . vc
                let mut s = 0u64;
                for (j, v) in vc.iter().enumerate() {
                    s = (s + mulmod(self.get(k - 1, j), *v, p)) % p;
                }
                q.push((p - s) % p);
                // vc = M . vc
                let mut nvc = vec![0u64; k - 1];
                for (i, out) in nvc.iter_mut().enumerate() {
                    let mut acc = 0u64;
                    for (j, v) in vc.iter().enumerate() {
                        acc = (acc + mulmod(self.get(i, j), *v, p)) % p;
                    }
                    *out = acc;
                }
                vc = nvc;
            }
            // w_new[i] = sum_j q[i - j] w[j]  (Toeplitz product).
            let mut nw = vec![0u64; k + 1];
            for (i, out) in nw.iter_mut().enumerate() {
                let mut acc = 0u64;
                for (j, wj) in w.iter().enumerate() {
                    if i >= j && i - j < q.len() {
                        acc = (acc + mulmod(q[i - j], *wj, p)) % p;
                    }
                }
                *out = acc;
            }
            w = nw;
        }
        w
    }
}

/// Serde representation: shape, modulus, and row-major residues.
#[derive(Serialize, Deserialize)]
struct KMatrixRepr {
    rows: usize,
    cols: usize,
    p: u64,
    data: Vec<u64>,
}

impl Serialize for KMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        KMatrixRepr {
            rows: self.rows,
            cols: self.cols,
            p: self.p,
            data: self.data.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for KMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = KMatrixRepr::deserialize(deserializer)?;
        if repr.data.len() != repr.rows * repr.cols {
            return Err(serde::de::Error::custom("matrix shape/data mismatch"));
        }
        if repr.p < 2 {
            return Err(serde::de::Error::custom("invalid modulus"));
        }
        if repr.data.iter().any(|&x| x >= repr.p) {
            return Err(serde::de::Error::custom("entry out of residue range"));
        }
        Ok(KMatrix {
            rows: repr.rows,
            cols: repr.cols,
            p: repr.p,
            data: repr.data,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        let m = KMatrix::from_fn(2, 2, 3, |i, j| [[1, 3], [3, 9]][i][j]);
        // mod 3 this is [[1,0],[0,0]]: rank 1.
        assert_eq!(m.rank(), 1);
        assert_eq!(KMatrix::identity(4, 5).rank(), 4);
    }

    #[test]
    fn kernel_matches_rank() {
        let m = KMatrix::from_fn(2, 3, 5, |i, j| [[1, 2, 3], [2, 4, 6]][i][j]);
        let k = m.kernel();
        assert_eq!(k.ncols(), 3 - m.rank());
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let m = KMatrix::from_fn(2, 2, 7, |i, j| [[2, 1], [1, 1]][i][j]);
        let x = m.solve(&[5, 4]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![5, 4]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), KMatrix::identity(2, 7));
        let sing = KMatrix::from_fn(2, 2, 7, |i, j| [[1, 2], [2, 4]][i][j]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn charpoly_small_cases() {
        // char poly of [[a,b],[c,d]] = t^2 - (a+d) t + (ad - bc).
        let p = 7;
        let m = KMatrix::from_fn(2, 2, p, |i, j| [[3, 5], [2, 6]][i][j]);
        let cp = m.charpoly();
        assert_eq!(cp.len(), 3);
        assert_eq!(cp[0], 1);
        assert_eq!(cp[1], (p - (3 + 6) % p) % p); // -trace
        assert_eq!(cp[2], ((3 * 6 + p * p - 5 * 2) as u64) % p); // det
        // Identity: (t-1)^3 = t^3 - 3t^2 + 3t - 1 over F_5.
        let id = KMatrix::identity(3, 5);
        assert_eq!(id.charpoly(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn charpoly_satisfies_cayley_hamilton() {
        let p = 3;
        let mut state = 7u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        for n in 1..=6 {
            let m = KMatrix::from_fn(n, n, p, |_, _| next() % p);
            let cp = m.charpoly();
            // Evaluate sum cp[k] * M^{n-k} and check it vanishes.
            let mut acc = KMatrix::zeros(n, n, p);
            let mut pw = KMatrix::identity(n, p); // M^0
            // Accumulate from lowest power: cp[n - j] * M^j.
            for j in 0..=n {
                let c = cp[n - j];
                if c != 0 {
                    acc = acc.add(&pw.scale(c));
                }
                if j < n {
                    pw = pw.mul(&m);
                }
            }
            assert!(acc.is_zero(), "Cayley-Hamilton failed at n={n}");
        }
    }

    #[test]
    fn charpoly_det_and_trace_match() {
        let p = 5;
        let mut state = 99u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        for n in 1..=6 {
            let m = KMatrix::from_fn(n, n, p, |_, _| next() % p);
            let cp = m.charpoly();
            let trace: u64 = (0..n).map(|i| m.get(i, i)).sum::<u64>() % p;
            assert_eq!(cp[1], (p - trace % p) % p);
            // det = (-1)^n * cp[n]
            let det = m.det();
            let sign_det = if n % 2 == 0 { cp[n] } else { (p - cp[n]) % p };
            assert_eq!(det, sign_det);
        }
    }
}
