//! Univariate polynomials over `F_p` and Smith normal form over `F_p[t]`.
//!
//! Used to classify the regular part of a Kronecker pencil: the elementary
//! divisors of `t*A - B` over `F_p[t]` are exactly the Jordan data of the
//! band summands. Since the base primes in scope are tiny, irreducible
//! factors are found by exhaustive trial division in increasing degree —
//! a divisor of smallest degree is automatically irreducible.

use crate::dvr::{inv_mod, mulmod};
use crate::error::Error;
use crate::linalg::modp::KMatrix;

/// A polynomial over `F_p`, coefficients ascending, no trailing zeros
/// (zero polynomial = empty coefficient vector).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl std::fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 if *c == 1 => "t".into(),
                1 => format!("{c}t"),
                _ if *c == 1 => format!("t^{i}"),
                _ => format!("{c}t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl FpPoly {
    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn constant(c: u64, p: u64) -> Self {
        let c = c % p;
        FpPoly { p, coeffs: if c == 0 { vec![] } else { vec![c] } }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::constant(1, p)
    }

    /// `t - root`
    pub fn linear_minus(root: u64, p: u64) -> Self {
        FpPoly { p, coeffs: vec![(p - root % p) % p, 1] }
    }

    pub fn from_coeffs(coeffs: Vec<u64>, p: u64) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + other.coeffs.get(i).copied().unwrap_or(0)) % p
            })
            .collect();
        FpPoly::from_coeffs(coeffs, p)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + p
                    - other.coeffs.get(i).copied().unwrap_or(0))
                    % p
            })
            .collect();
        FpPoly::from_coeffs(coeffs, p)
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(p);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + mulmod(*a, *b, p)) % p;
            }
        }
        FpPoly::from_coeffs(coeffs, p)
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let p = self.p;
        FpPoly::from_coeffs(self.coeffs.iter().map(|a| mulmod(*a, c % p, p)).collect(), p)
    }

    /// Euclidean division: `(quotient, remainder)` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        let p = self.p;
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead_inv = inv_mod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = mulmod(c, lead_inv, p);
            quot[i - dd] = q;
            for (k, b) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + k] = (rem[i - dd + k] + p - mulmod(q, *b, p)) % p;
            }
        }
        (FpPoly::from_coeffs(quot, p), FpPoly::from_coeffs(rem, p))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.divmod(divisor).1
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn extended_gcd(a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            (r0, r1) = (r1, r);
            let ns = s0.sub(&q.mul(&s1));
            (s0, s1) = (s1, ns);
            let nt = t0.sub(&q.mul(&t1));
            (t0, t1) = (t1, nt);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead_inv = inv_mod(r0.leading(), p);
        (r0.scale(lead_inv), s0.scale(lead_inv), t0.scale(lead_inv))
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            acc = (mulmod(acc, x, p) + c) % p;
        }
        acc
    }

    /// Evaluates the polynomial at a square matrix argument, inside the
    /// abstract algebra given by a multiply closure and identity element.
    pub fn eval_in<T: Clone>(
        &self,
        x: &T,
        one: &T,
        add_scaled: impl Fn(&T, &T, u64) -> T, // acc + c * y
        mul: impl Fn(&T, &T) -> T,
        zero: T,
    ) -> T {
        let mut acc = zero;
        let mut pw = one.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c != 0 {
                acc = add_scaled(&acc, &pw, *c);
            }
            if i + 1 < self.coeffs.len() {
                pw = mul(&pw, x);
            }
        }
        acc
    }

    /// All roots in `F_p` with multiplicity, by exhaustive evaluation and
    /// repeated division (p is small by assumption).
    pub fn roots_with_multiplicity(&self) -> Vec<(u64, usize)> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        for r in 0..p {
            let mut mult = 0usize;
            while !f.is_zero() && f.degree().unwrap_or(0) >= 1 && f.eval(r) == 0 {
                let (q, rem) = f.divmod(&FpPoly::linear_minus(r, p));
                debug_assert!(rem.is_zero());
                f = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((r, mult));
            }
        }
        out
    }

    /// Smallest-degree monic non-constant divisor (hence irreducible), by
    /// trial division against all monic polynomials in increasing degree.
    ///
    /// Errors out if the search space gets absurd (cannot happen for the
    /// small primes in scope).
    pub fn smallest_irreducible_factor(&self) -> Result<FpPoly, Error> {
        let p = self.p;
        assert!(!self.is_zero() && self.degree().unwrap_or(0) >= 1);
        // Linear factors first, cheaply.
        for r in 0..p {
            if self.eval(r) == 0 {
                return Ok(FpPoly::linear_minus(r, p));
            }
        }
        let dmax = self.degree().unwrap();
        for d in 2..=dmax {
            let count = (p as u128).pow(d as u32);
            if count > 20_000_000 {
                return Err(Error::Invariant(format!(
                    "irreducible factor search space too large: p^{d} = {count}"
                )));
            }
            // Enumerate monic degree-d candidates by base-p counting.
            let mut idx = vec![0u64; d];
            loop {
                let mut coeffs = idx.clone();
                coeffs.push(1);
                let cand = FpPoly::from_coeffs(coeffs, p);
                if self.rem(&cand).is_zero() {
                    return Ok(cand);
                }
                // Increment the base-p counter.
                let mut k = 0usize;
                loop {
                    if k == d {
                        break;
                    }
                    idx[k] += 1;
                    if idx[k] < p {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == d {
                    break;
                }
            }
        }
        // self itself is irreducible.
        Ok(self.monic())
    }

    /// Full factorization into monic irreducibles with multiplicity.
    pub fn factor(&self) -> Result<Vec<(FpPoly, usize)>, Error> {
        let mut f = self.monic();
        let mut out: Vec<(FpPoly, usize)> = Vec::new();
        while f.degree().unwrap_or(0) >= 1 {
            let q = f.smallest_irreducible_factor()?;
            let mut mult = 0usize;
            loop {
                let (quot, rem) = f.divmod(&q);
                if !rem.is_zero() {
                    break;
                }
                f = quot;
                mult += 1;
            }
            out.push((q, mult));
        }
        Ok(out)
    }
}

/// Minimal polynomial of a square mod-`p` matrix: the monic generator of the
/// relations among its powers. Computed by reducing the vectorized Krylov
/// sequence `I, M, M^2, ...` incrementally; each stored row keeps a record of
/// which powers it combines, so the first power that reduces to zero yields
/// the (monic) minimal polynomial directly.
pub fn min_poly_of_matrix(m: &KMatrix) -> FpPoly {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "min_poly_of_matrix: matrix must be square");
    let p = m.p();
    if n == 0 {
        return FpPoly::one(p);
    }
    // (pivot position, reduced vectorized row, power-combination record).
    let mut reduced: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut power = KMatrix::identity(n, p);
    for k in 0..=n {
        let mut row: Vec<u64> = (0..n * n).map(|t| power.get(t / n, t % n)).collect();
        let mut record = vec![0u64; n + 1];
        record[k] = 1;
        for (piv, r, rec) in &reduced {
            let c = row[*piv];
            if c == 0 {
                continue;
            }
            for (a, b) in row.iter_mut().zip(r.iter()) {
                *a = (*a + p - mulmod(c, *b, p)) % p;
            }
            for (a, b) in record.iter_mut().zip(rec.iter()) {
                *a = (*a + p - mulmod(c, *b, p)) % p;
            }
        }
        match row.iter().position(|&x| x != 0) {
            None => {
                // Stored rows only involve powers < k, so record[k] is
                // still 1: the relation is monic of degree k.
                record.truncate(k + 1);
                return FpPoly::from_coeffs(record, p);
            }
            Some(piv) => {
                let inv = inv_mod(row[piv], p);
                for a in row.iter_mut() {
                    *a = mulmod(*a, inv, p);
                }
                for a in record.iter_mut() {
                    *a = mulmod(*a, inv, p);
                }
                reduced.push((piv, row, record));
            }
        }
        if k < n {
            power = power.mul(m);
        }
    }
    unreachable!("powers 0..=n of an n x n matrix are always dependent");
}

/// A matrix over `F_p[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub p: u64,
    pub data: Vec<FpPoly>,
}

impl FpPolyMatrix {
    pub fn from_fn(rows: usize, cols: usize, p: u64, mut f: impl FnMut(usize, usize) -> FpPoly) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        FpPolyMatrix { rows, cols, p, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &FpPoly {
        &self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: FpPoly) {
        self.data[i * self.cols + j] = v;
    }

    /// Diagonalizes the matrix by elementary row/column operations over
    /// `F_p[t]` and returns the nonzero diagonal entries, made monic.
    ///
    /// The divisibility chain is *not* enforced: this routine is only used to
    /// harvest the multiset of elementary divisors, which for a diagonal
    /// matrix is the multiset of prime-power factors of the diagonal entries
    /// regardless of their order.
    pub fn diagonalize(mut self) -> Vec<FpPoly> {
        let tmax = self.rows.min(self.cols);
        let mut out = Vec::new();
        for t in 0..tmax {
            'pivot: loop {
                // Find minimal-degree nonzero entry in the trailing block.
                let mut best: Option<(usize, usize, usize)> = None;
                for i in t..self.rows {
                    for j in t..self.cols {
                        if let Some(d) = self.get(i, j).degree() {
                            if best.map_or(true, |(_, _, bd)| d < bd) {
                                best = Some((i, j, d));
                            }
                        }
                    }
                }
                let Some((pi, pj, _)) = best else {
                    return out; // trailing block zero
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                // Reduce the pivot row and column by division; any nonzero
                // remainder strictly drops the minimal degree, so this loop
                // terminates.
                let pivot = self.get(t, t).clone();
                for j in t + 1..self.cols {
                    if self.get(t, j).is_zero() {
                        continue;
                    }
                    let (q, r) = self.get(t, j).divmod(&pivot);
                    // col_j -= q * col_t
                    for i in t..self.rows {
                        let v = self.get(i, j).sub(&q.mul(self.get(i, t)));
                        self.set(i, j, v);
                    }
                    debug_assert_eq!(self.get(t, j), &r);
                    if !r.is_zero() {
                        continue 'pivot; // smaller-degree entry appeared
                    }
                }
                for i in t + 1..self.rows {
                    if self.get(i, t).is_zero() {
                        continue;
                    }
                    let (q, r) = self.get(i, t).divmod(&pivot);
                    for j in t..self.cols {
                        let v = self.get(i, j).sub(&q.mul(self.get(t, j)));
                        self.set(i, j, v);
                    }
                    debug_assert_eq!(self.get(i, t), &r);
                    if !r.is_zero() {
                        continue 'pivot;
                    }
                }
                out.push(self.get(t, t).monic());
                break;
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}
