//! Finite-dimensional modules over `Lambda = kappa[X,Y]/(X^2, Y^2)`.
//!
//! `Lambda` is special biserial, and its finite-dimensional indecomposables
//! are completely classified:
//!
//! - `Horizontal(m)` (`H:m`): string module of dimension `2m+1`; `H:0` is the
//!   simple module;
//! - `Vertical(n)` (`V:n`, `n >= 1`): string module of dimension `2n+1` with
//!   the opposite orientation;
//! - `Band(lambda, n)` (`B:l:n`): band module of dimension `2n`, Jordan
//!   parameter `lambda` in `F_p`;
//! - `BandInf(n)` (`Binf:n`): the band at the infinite point of the
//!   projective line;
//! - `Proj` (`P`): the free module `Lambda` itself, dimension 4.
//!
//! [`decompose`] recovers the multiset of indecomposable summands of any
//! module: the projective multiplicity is `rank(XY)`; quotienting by `XY M`
//! turns each projective summand into a copy of `H:1` and leaves everything
//! else alone, after which the module is a representation of the Kronecker
//! pencil `(X, Y) : V -> W` with `V = M/(XM + YM)` and `W = XM + YM`.
//! Minimal-index blocks of the pencil are counted through kernel dimensions
//! of block-Toeplitz systems, and the regular part is read off the elementary
//! divisors of `t*X - Y` over `F_p[t]` (plus `s*Y - X` for the infinite
//! point). An eigenvalue outside the prime field is reported as
//! [`Error::IrreducibleOverPrimeField`] with the offending factor.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{FpPoly, FpPolyMatrix, KMatrix};

/// Label of an indecomposable `Lambda`-module.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ModLabel {
    /// `H:m` — horizontal string module of dimension `2m + 1` (`H:0` simple).
    Horizontal { m: usize },
    /// `V:n` — vertical string module of dimension `2n + 1`, `n >= 1`.
    Vertical { n: usize },
    /// `B:lambda:n` — band module of dimension `2n`, `lambda` in `0..p`.
    Band { lambda: u64, n: usize },
    /// `Binf:n` — band module at infinity, dimension `2n`.
    BandInf { n: usize },
    /// `P` — the regular module `Lambda`, dimension 4.
    Proj,
}

impl ModLabel {
    /// Dimension over `kappa` of the labeled module.
    pub fn dim(&self) -> usize {
        match self {
            ModLabel::Horizontal { m } => 2 * m + 1,
            ModLabel::Vertical { n } => 2 * n + 1,
            ModLabel::Band { n, .. } => 2 * n,
            ModLabel::BandInf { n } => 2 * n,
            ModLabel::Proj => 4,
        }
    }

    /// True for every label except `P`.
    pub fn is_stable(&self) -> bool {
        !matches!(self, ModLabel::Proj)
    }
}

impl fmt::Display for ModLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModLabel::Horizontal { m } => write!(f, "H:{m}"),
            ModLabel::Vertical { n } => write!(f, "V:{n}"),
            ModLabel::Band { lambda, n } => write!(f, "B:{lambda}:{n}"),
            ModLabel::BandInf { n } => write!(f, "Binf:{n}"),
            ModLabel::Proj => write!(f, "P"),
        }
    }
}

impl FromStr for ModLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid module label: {s:?}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["P"] => Ok(ModLabel::Proj),
            ["H", m] => Ok(ModLabel::Horizontal {
                m: m.parse().map_err(|_| bad())?,
            }),
            ["V", n] => {
                let n: usize = n.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(Error::Parse("vertical index must be >= 1 (V:0 is H:0)".into()));
                }
                Ok(ModLabel::Vertical { n })
            }
            ["B", l, n] => {
                let n: usize = n.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                Ok(ModLabel::Band {
                    lambda: l.parse().map_err(|_| bad())?,
                    n,
                })
            }
            ["Binf", n] => {
                let n: usize = n.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                Ok(ModLabel::BandInf { n })
            }
            _ => Err(bad()),
        }
    }
}

/// A finite-dimensional `Lambda`-module: two commuting square-zero actions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModK {
    pub name: String,
    act_x: KMatrix,
    act_y: KMatrix,
}

impl ModK {
    /// Builds a module from its two action matrices, checking the relations
    /// `X^2 = Y^2 = 0`, `XY = YX`.
    pub fn new(name: impl Into<String>, act_x: KMatrix, act_y: KMatrix) -> Result<Self, Error> {
        if act_x.nrows() != act_x.ncols()
            || act_y.nrows() != act_y.ncols()
            || act_x.nrows() != act_y.nrows()
            || act_x.p() != act_y.p()
        {
            return Err(Error::Invariant("module action matrices have mismatched shapes".into()));
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
        Ok(ModK {
            name: name.into(),
            act_x,
            act_y,
        })
    }

    pub fn dim(&self) -> usize {
        self.act_x.nrows()
    }

    pub fn p(&self) -> u64 {
        self.act_x.p()
    }

    pub fn act_x(&self) -> &KMatrix {
        &self.act_x
    }

    pub fn act_y(&self) -> &KMatrix {
        &self.act_y
    }

    pub fn act_xy(&self) -> KMatrix {
        self.act_x.mul(&self.act_y)
    }

    /// The indecomposable module for a label, in its standard basis
    /// (amalgam generators `u_1..`, then socle-side vectors `w_1..`).
    pub fn from_label(label: &ModLabel, p: u64) -> Result<Self, Error> {
        if let ModLabel::Band { lambda, .. } = label {
            if *lambda >= p {
                return Err(Error::Parse(format!(
                    "band parameter {lambda} is not a residue mod {p}"
                )));
            }
        }
        let d = label.dim();
        let mut x = KMatrix::zeros(d, d, p);
        let mut y = KMatrix::zeros(d, d, p);
        match *label {
            ModLabel::Horizontal { m } => {
                // u_i (0-based i-1) -> w_i = X u_i, w_{i+1} = Y u_i;
                // u's at 0..m, w's at m..2m+1.
                for i in 0..m {
                    x.set(m + i, i, 1);
                    y.set(m + i + 1, i, 1);
                }
            }
            ModLabel::Vertical { n } => {
                // u's at 0..n+1, w's at n+1..2n+1; X u_i = w_i (i <= n),
                // Y u_i = w_{i-1} (i >= 2).
                for i in 0..n {
                    x.set(n + 1 + i, i, 1);
                    y.set(n + 1 + i, i + 1, 1);
                }
            }
            ModLabel::Band { lambda, n } => {
                // X u_i = w_i; Y u_i = lambda w_i + w_{i+1}.
                for i in 0..n {
                    x.set(n + i, i, 1);
                    y.set(n + i, i, lambda);
                    if i + 1 < n {
                        y.set(n + i + 1, i, 1);
                    }
                }
            }
            ModLabel::BandInf { n } => {
                // X u_i = w_{i+1}; Y u_i = w_i.
                for i in 0..n {
                    y.set(n + i, i, 1);
                    if i + 1 < n {
                        x.set(n + i + 1, i, 1);
                    }
                }
            }
            ModLabel::Proj => {
                // Basis e, Xe, Ye, XYe.
                x.set(1, 0, 1);
                x.set(3, 2, 1);
                y.set(2, 0, 1);
                y.set(3, 1, 1);
            }
        }
        ModK::new(label.to_string(), x, y)
    }

    /// Direct sum, with block-diagonal actions.
    pub fn direct_sum(&self, other: &ModK) -> ModK {
        let p = self.p();
        assert_eq!(p, other.p());
        let d1 = self.dim();
        let d = d1 + other.dim();
        let block = |a: &KMatrix, b: &KMatrix| {
            KMatrix::from_fn(d, d, p, |i, j| {
                if i < d1 && j < d1 {
                    a.get(i, j)
                } else if i >= d1 && j >= d1 {
                    b.get(i - d1, j - d1)
                } else {
                    0
                }
            })
        };
        ModK {
            name: format!("{} + {}", self.name, other.name),
            act_x: block(&self.act_x, &other.act_x),
            act_y: block(&self.act_y, &other.act_y),
        }
    }

    /// Direct sum of labeled indecomposables (fixture convenience).
    pub fn from_labels(labels: &[ModLabel], p: u64) -> Result<ModK, Error> {
        let mut out: Option<ModK> = None;
        for l in labels {
            let m = ModK::from_label(l, p)?;
            out = Some(match out {
                None => m,
                Some(acc) => acc.direct_sum(&m),
            });
        }
        out.ok_or_else(|| Error::Invariant("empty label list".into()))
    }

    /// Conjugates both actions by an invertible matrix `g`: the module with
    /// actions `g X g^{-1}`, `g Y g^{-1}` (isomorphic to `self`).
    pub fn conjugate(&self, g: &KMatrix) -> Result<ModK, Error> {
        let gi = g
            .inverse()
            .ok_or_else(|| Error::Invariant("conjugating matrix is singular".into()))?;
        ModK::new(
            self.name.clone(),
            g.mul(&self.act_x).mul(&gi),
            g.mul(&self.act_y).mul(&gi),
        )
    }
}

/// Multiset of indecomposable summands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Sorted labels with multiplicities.
    pub summands: Vec<(ModLabel, usize)>,
}

impl Decomposition {
    fn from_counts(counts: BTreeMap<ModLabel, usize>) -> Self {
        Decomposition {
            summands: counts.into_iter().filter(|(_, c)| *c > 0).collect(),
        }
    }

    /// Total dimension of the decomposition.
    pub fn dim(&self) -> usize {
        self.summands.iter().map(|(l, c)| l.dim() * c).sum()
    }

    /// Number of non-projective summands, with multiplicity.
    pub fn stable_count(&self) -> usize {
        self.summands
            .iter()
            .filter(|(l, _)| l.is_stable())
            .map(|(_, c)| *c)
            .sum()
    }

    /// Multiplicity of one label.
    pub fn multiplicity(&self, label: &ModLabel) -> usize {
        self.summands
            .iter()
            .find(|(l, _)| l == label)
            .map_or(0, |(_, c)| *c)
    }

    /// The multiset restricted to non-projective labels.
    pub fn stable_part(&self) -> Vec<(ModLabel, usize)> {
        self.summands
            .iter()
            .filter(|(l, _)| l.is_stable())
            .cloned()
            .collect()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|(l, c)| {
                if *c == 1 {
                    l.to_string()
                } else {
                    format!("{l}^{c}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Decomposes a module into indecomposable summands.
pub fn decompose(m: &ModK) -> Result<Decomposition, Error> {
    let p = m.p();
    let dim = m.dim();
    let mut counts: BTreeMap<ModLabel, usize> = BTreeMap::new();
    if dim == 0 {
        return Ok(Decomposition::from_counts(counts));
    }

    // Projective multiplicity = rank of XY.
    let xy = m.act_xy();
    let g = xy.rank();

    // Quotient by XY M: pick a basis adapted to im(XY) and a complement.
    let (qx, qy, qdim) = quotient_by_columns(&m.act_x, &m.act_y, &xy)?;
    debug_assert_eq!(qdim, dim - g);

    // The quotient has XY = 0; classify its Kronecker pencil.
    classify_pencil(&qx, &qy, qdim, p, &mut counts)?;

    // Each projective summand became an H:1 in the quotient.
    if g > 0 {
        let h1 = ModLabel::Horizontal { m: 1 };
        let have = counts.get(&h1).copied().unwrap_or(0);
        if have < g {
            return Err(Error::Invariant(format!(
                "projective bookkeeping failed: rank(XY) = {g} but only {have} H:1 in quotient"
            )));
        }
        if have == g {
            counts.remove(&h1);
        } else {
            counts.insert(h1, have - g);
        }
        counts.insert(ModLabel::Proj, g);
    }

    let result = Decomposition::from_counts(counts);
    if result.dim() != dim {
        return Err(Error::Invariant(format!(
            "decomposition dimensions {} do not sum to module dimension {dim}",
            result.dim()
        )));
    }
    Ok(result)
}

/// Builds the quotient module `M / span(columns of s)`, returning the two
/// quotient actions and the quotient dimension.
fn quotient_by_columns(x: &KMatrix, y: &KMatrix, s: &KMatrix) -> Result<(KMatrix, KMatrix, usize), Error> {
    let p = x.p();
    let dim = x.nrows();
    // Basis of the subspace: the columns of s at its pivot positions.
    let (_, s_pivots) = s.rref();
    let sub = s.select_columns(&s_pivots);
    let k = sub.ncols();
    if k == 0 {
        return Ok((x.clone(), y.clone(), dim));
    }
    // Complement: standard basis vectors completing sub to a basis,
    // lexicographically first.
    let full = sub.hstack(&KMatrix::identity(dim, p));
    let (_, pivots) = full.rref();
    let comp: Vec<usize> = pivots.iter().filter(|&&c| c >= k).map(|&c| c - k).collect();
    debug_assert_eq!(comp.len(), dim - k);
    // Basis matrix B = [sub | e_comp]; quotient action of T = coords of T*e_c
    // in B, keeping only the complement block.
    let comp_mat = KMatrix::identity(dim, p).select_columns(&comp);
    let basis = sub.hstack(&comp_mat);
    let binv = basis
        .inverse()
        .ok_or_else(|| Error::Invariant("quotient basis not invertible".into()))?;
    let project = |t: &KMatrix| -> KMatrix {
        // Full coordinates of T * comp vectors, then drop the subspace block.
        let coords = binv.mul(&t.mul(&comp_mat));
        KMatrix::from_fn(dim - k, dim - k, p, |i, j| coords.get(k + i, j))
    };
    let qx = project(x);
    let qy = project(y);
    Ok((qx, qy, dim - k))
}

/// Classifies a module with `XY = 0` via its Kronecker pencil and adds the
/// summand counts. `H:1` counts here include images of projectives (the
/// caller adjusts).
fn classify_pencil(
    x: &KMatrix,
    y: &KMatrix,
    dim: usize,
    p: u64,
    counts: &mut BTreeMap<ModLabel, usize>,
) -> Result<(), Error> {
    if dim == 0 {
        return Ok(());
    }
    debug_assert!(x.mul(y).is_zero());

    // W = im X + im Y, V = complement of W (greedy standard vectors).
    let stacked = x.hstack(y);
    let (_, w_pivots) = stacked.rref();
    let w_mat = stacked.select_columns(&w_pivots);
    let w = w_mat.ncols();
    let full = w_mat.hstack(&KMatrix::identity(dim, p));
    let (_, pivots) = full.rref();
    let v_cols: Vec<usize> = pivots.iter().filter(|&&c| c >= w).map(|&c| c - w).collect();
    let v = v_cols.len();
    debug_assert_eq!(w + v, dim);
    let v_mat = KMatrix::identity(dim, p).select_columns(&v_cols);

    // Pencil matrices A = X|_V, B = Y|_V in the W basis.
    let a = w_solve(&w_mat, &x.mul(&v_mat))?;
    let b = w_solve(&w_mat, &y.mul(&v_mat))?;

    // Regular part: elementary divisors of t*A - B (finite points) and the
    // s^k divisors of s*B - A (infinite point).
    let mut regular: Vec<(ModLabel, usize)> = Vec::new();
    let mut regular_dim = 0usize;
    let t_pencil = FpPolyMatrix::from_fn(w, v, p, |i, j| {
        FpPoly::from_coeffs(vec![(p - b.get(i, j)) % p, a.get(i, j)], p)
    });
    for d in t_pencil.diagonalize() {
        if d.degree().unwrap_or(0) == 0 {
            continue;
        }
        for (q, mult) in d.factor()? {
            if q.degree() == Some(1) {
                // monic t - lambda: lambda = -q[0]
                let lambda = (p - q.coeffs[0] % p) % p;
                let label = ModLabel::Band { lambda, n: mult };
                regular_dim += label.dim();
                regular.push((label, 1));
            } else {
                return Err(Error::IrreducibleOverPrimeField {
                    p,
                    factor: q.coeffs.clone(),
                });
            }
        }
    }
    let s_pencil = FpPolyMatrix::from_fn(w, v, p, |i, j| {
        FpPoly::from_coeffs(vec![(p - a.get(i, j)) % p, b.get(i, j)], p)
    });
    for d in s_pencil.diagonalize() {
        if d.degree().unwrap_or(0) == 0 {
            continue;
        }
        // Count only the s^k part: multiplicity of the root 0 (the other
        // factors duplicate finite points already found on the t side).
        let mult = d
            .roots_with_multiplicity()
            .iter()
            .find(|(r, _)| *r == 0)
            .map_or(0, |(_, m)| *m);
        if mult > 0 {
            let label = ModLabel::BandInf { n: mult };
            regular_dim += label.dim();
            regular.push((label, 1));
        }
    }

    // Singular part: minimal indices, found by raising the search depth
    // until the dimension count closes (kernel-dimension plateaus can be
    // deceptive, e.g. H:0 + V:9, so total dimension is the referee).
    let mut limit = 8usize;
    loop {
        let col_limit = limit.min(v);
        let row_limit = limit.min(w);
        // Column-side minimal indices (H:0 at index 0, V:n at index n >= 1).
        let col_counts = minimal_index_counts(&a, &b, v, w, p, col_limit);
        // Row-side indices of the transposed pencil (H:m at m >= 1).
        let row_counts = minimal_index_counts(&a.transpose(), &b.transpose(), w, v, p, row_limit);
        if row_counts.first().copied().unwrap_or(0) != 0 {
            return Err(Error::Invariant(
                "pencil has a zero row; W = im X + im Y should prevent this".into(),
            ));
        }
        let singular_dim: usize = col_counts
            .iter()
            .enumerate()
            .map(|(e, &c)| (2 * e + 1) * c)
            .sum::<usize>()
            + row_counts
                .iter()
                .enumerate()
                .map(|(e, &c)| (2 * e + 1) * c)
                .sum::<usize>();
        if regular_dim + singular_dim == dim {
            for (e, &c) in col_counts.iter().enumerate() {
                if c > 0 {
                    let label = if e == 0 {
                        ModLabel::Horizontal { m: 0 }
                    } else {
                        ModLabel::Vertical { n: e }
                    };
                    *counts.entry(label).or_insert(0) += c;
                }
            }
            for (e, &c) in row_counts.iter().enumerate().skip(1) {
                if c > 0 {
                    *counts.entry(ModLabel::Horizontal { m: e }).or_insert(0) += c;
                }
            }
            for (label, c) in regular {
                *counts.entry(label).or_insert(0) += c;
            }
            return Ok(());
        }
        if col_limit == v && row_limit == w {
            // Depth is at the provable maximum, so the counts are complete
            // and the mismatch is a genuine inconsistency.
            return Err(Error::Invariant(format!(
                "pencil classification explained {} of {dim} dimensions",
                regular_dim + singular_dim
            )));
        }
        limit *= 2;
    }
}

/// Solves `w_mat * out = rhs` over `F_p`; `w_mat` has full column rank.
fn w_solve(w_mat: &KMatrix, rhs: &KMatrix) -> Result<KMatrix, Error> {
    if w_mat.ncols() == 0 {
        if !rhs.is_zero() {
            return Err(Error::Invariant("image outside W".into()));
        }
        return Ok(KMatrix::zeros(0, rhs.ncols(), w_mat.p()));
    }
    w_mat
        .solve_matrix(rhs)
        .ok_or_else(|| Error::Invariant("image of action not inside W".into()))
}

/// Counts minimal column indices of the pencil `(A, B)` up to index
/// `limit - 1`: `out[e]` is the number of column-type Kronecker blocks of
/// minimal index `e`.
///
/// `K_k` = dimension of polynomial solutions `x(t)` of degree `< k` of
/// `(A + tB) x(t) = 0`; `D_k = K_k - K_{k-1}` counts blocks of index
/// `<= k - 1`, so the block counts are the first differences of `D`. Every
/// index is `< v` (an index-`e` block spans `e + 1` columns), so
/// `limit = v` is always exhaustive.
fn minimal_index_counts(
    a: &KMatrix,
    b: &KMatrix,
    v: usize,
    w: usize,
    p: u64,
    limit: usize,
) -> Vec<usize> {
    if v == 0 || limit == 0 {
        return vec![];
    }
    let kernel_dim = |k: usize| -> usize {
        // Degree-by-degree expansion of (A + tB) x(t) = 0: block-Toeplitz
        // matrix with k+1 block rows of height w and k block columns of
        // width v; A on the diagonal, B one block below.
        let m = KMatrix::from_fn((k + 1) * w, k * v, p, |i, j| {
            let (br, ir) = (i / w, i % w);
            let (bc, ic) = (j / v, j % v);
            if br == bc {
                a.get(ir, ic)
            } else if br == bc + 1 {
                b.get(ir, ic)
            } else {
                0
            }
        });
        k * v - m.rank()
    };

    let mut counts = vec![0usize; limit];
    let mut k_prev = 0usize; // K_0
    let mut d_prev = 0usize; // D_0
    for k in 1..=limit {
        let k_cur = kernel_dim(k);
        let d_cur = k_cur - k_prev;
        counts[k - 1] = d_cur - d_prev;
        k_prev = k_cur;
        d_prev = d_cur;
    }
    while counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

/// Deterministic conclusion: two modules are isomorphic iff their summand
/// multisets coincide.
pub fn mods_isomorphic(m1: &ModK, m2: &ModK) -> Result<bool, Error> {
    if m1.dim() != m2.dim() || m1.p() != m2.p() {
        return Ok(false);
    }
    Ok(decompose(m1)? == decompose(m2)?)
}

/// Projective cover data of a `Lambda`-module.
#[derive(Debug, Clone)]
pub struct CoverK {
    /// Number of generators (dimension of the top).
    pub g: usize,
    /// Indices of the greedily chosen standard basis vectors generating the top.
    pub generator_cols: Vec<usize>,
    /// The cover `Lambda^g -> M` as a `dim x 4g` matrix; block `i` has
    /// columns `u_i, X u_i, Y u_i, XY u_i`.
    pub matrix: KMatrix,
}

impl CoverK {
    /// True when the cover is an isomorphism (the module is free).
    pub fn is_bijective(&self, dim: usize) -> bool {
        4 * self.g == dim && self.matrix.rank() == dim
    }
}

/// Projective cover of a module: one generator per top basis vector, with the
/// lexicographically-first standard vectors spanning the top.
pub fn projective_cover_k(m: &ModK) -> CoverK {
    let p = m.p();
    let dim = m.dim();
    let stacked = m.act_x().hstack(m.act_y());
    let (_, w_pivots) = stacked.rref();
    let w_mat = stacked.select_columns(&w_pivots);
    let w = w_mat.ncols();
    let full = w_mat.hstack(&KMatrix::identity(dim, p));
    let (_, pivots) = full.rref();
    let generator_cols: Vec<usize> = pivots.iter().filter(|&&c| c >= w).map(|&c| c - w).collect();
    let g = generator_cols.len();
    debug_assert_eq!(g, dim - w);
    let xy = m.act_xy();
    let mut matrix = KMatrix::zeros(dim, 4 * g, p);
    for (t, &c) in generator_cols.iter().enumerate() {
        for i in 0..dim {
            matrix.set(i, 4 * t, if i == c { 1 } else { 0 });
            matrix.set(i, 4 * t + 1, m.act_x().get(i, c));
            matrix.set(i, 4 * t + 2, m.act_y().get(i, c));
            matrix.set(i, 4 * t + 3, xy.get(i, c));
        }
    }
    debug_assert_eq!(matrix.rank(), dim, "cover must be surjective");
    CoverK { g, generator_cols, matrix }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str) -> ModLabel {
        s.parse().unwrap()
    }

    #[test]
    fn label_parse_and_display_round_trip() {
        for s in ["H:0", "H:3", "V:1", "B:2:4", "Binf:2", "P"] {
            assert_eq!(label(s).to_string(), s);
        }
        assert!("V:0".parse::<ModLabel>().is_err());
        assert!("B:1".parse::<ModLabel>().is_err());
        assert!("Q:1".parse::<ModLabel>().is_err());
        assert!("".parse::<ModLabel>().is_err());
    }

    #[test]
    fn standard_modules_have_documented_shapes() {
        let h1 = ModK::from_label(&label("H:1"), 3).unwrap();
        assert_eq!(h1.dim(), 3);
        assert_eq!(h1.act_x().rank(), 1);
        assert_eq!(h1.act_y().rank(), 1);
        assert!(h1.act_xy().is_zero());

        let v1 = ModK::from_label(&label("V:1"), 3).unwrap();
        assert_eq!(v1.dim(), 3);
        assert_eq!(v1.act_x().rank(), 1);
        assert_eq!(v1.act_y().rank(), 1);
        assert!(v1.act_xy().is_zero());

        let b02 = ModK::from_label(&label("B:0:2"), 3).unwrap();
        assert_eq!(b02.dim(), 4);
        assert_eq!(b02.act_x().rank(), 2);
        assert_eq!(b02.act_y().rank(), 1); // nilpotent Jordan shift
        assert!(b02.act_xy().is_zero());

        let pr = ModK::from_label(&ModLabel::Proj, 3).unwrap();
        assert_eq!(pr.dim(), 4);
        assert_eq!(pr.act_xy().rank(), 1);
    }

    #[test]
    fn decompose_single_indecomposables() {
        for s in ["H:0", "H:1", "H:4", "V:1", "V:3", "B:0:1", "B:2:3", "Binf:2", "P"] {
            let l = label(s);
            let m = ModK::from_label(&l, 3).unwrap();
            let d = decompose(&m).unwrap();
            assert_eq!(d.summands, vec![(l, 1)], "decompose({s})");
        }
    }

    #[test]
    fn decompose_direct_sums() {
        let p = 3;
        let labels: Vec<ModLabel> =
            ["H:1", "H:1", "V:2", "B:1:2", "Binf:1", "P", "H:0"].iter().map(|s| label(s)).collect();
        let m = ModK::from_labels(&labels, p).unwrap();
        let d = decompose(&m).unwrap();
        let expected: Vec<(ModLabel, usize)> = {
            let mut counts = BTreeMap::new();
            for l in &labels {
                *counts.entry(l.clone()).or_insert(0usize) += 1;
            }
            counts.into_iter().collect()
        };
        assert_eq!(d.summands, expected);
    }

    #[test]
    fn decompose_is_conjugation_invariant() {
        let p = 3;
        let labels: Vec<ModLabel> = ["P", "V:1", "H:2"].iter().map(|s| label(s)).collect();
        let m = ModK::from_labels(&labels, p).unwrap();
        // A fixed invertible matrix (unitriangular + permutation-ish).
        let g = KMatrix::from_fn(m.dim(), m.dim(), p, |i, j| {
            if i == j {
                1
            } else if j == i + 1 {
                2
            } else if j + 3 == i {
                1
            } else {
                0
            }
        });
        let conj = m.conjugate(&g).unwrap();
        assert_eq!(decompose(&conj).unwrap(), decompose(&m).unwrap());
    }

    #[test]
    fn band_eigenvalue_outside_prime_field_is_reported() {
        // Y acts by a 2x2 companion matrix of t^2 + 1 (irreducible mod 3)
        // against X = identity on the pencil: build the 4-dim module directly.
        let p = 3;
        let n = 2;
        let mut x = KMatrix::zeros(2 * n, 2 * n, p);
        let mut y = KMatrix::zeros(2 * n, 2 * n, p);
        // X u_i = w_i; Y u = C w with C = companion([1, 0]) = [[0, -1],[1, 0]].
        x.set(n, 0, 1);
        x.set(n + 1, 1, 1);
        y.set(n, 1, p - 1);
        y.set(n + 1, 0, 1);
        let m = ModK::new("twisted band", x, y).unwrap();
        match decompose(&m) {
            Err(Error::IrreducibleOverPrimeField { p: 3, factor }) => {
                assert_eq!(factor, vec![1, 0, 1]); // t^2 + 1
            }
            other => panic!("expected irreducible-factor error, got {other:?}"),
        }
    }

    #[test]
    fn mods_isomorphic_examples() {
        let p = 3;
        let m1 = ModK::from_label(&label("H:1"), p).unwrap();
        let m1_shuffled = {
            let g = KMatrix::from_fn(3, 3, p, |i, j| [[1, 0, 2], [0, 1, 1], [0, 0, 1]][i][j]);
            m1.conjugate(&g).unwrap()
        };
        assert!(mods_isomorphic(&m1, &m1_shuffled).unwrap());
        let v1 = ModK::from_label(&label("V:1"), p).unwrap();
        assert!(!mods_isomorphic(&m1, &v1).unwrap());
        // Different dimensions are conclusive immediately.
        let h2 = ModK::from_label(&label("H:2"), p).unwrap();
        assert!(!mods_isomorphic(&m1, &h2).unwrap());
    }

    #[test]
    fn projective_cover_counts() {
        let p = 3;
        for (s, expected_g) in [("H:1", 1), ("H:3", 3), ("V:1", 2), ("V:2", 3), ("P", 1)] {
            let m = ModK::from_label(&label(s), p).unwrap();
            let cover = projective_cover_k(&m);
            assert_eq!(cover.g, expected_g, "generators of {s}");
            assert_eq!(cover.matrix.rank(), m.dim(), "surjectivity for {s}");
        }
        let pr = ModK::from_label(&ModLabel::Proj, p).unwrap();
        assert!(projective_cover_k(&pr).is_bijective(pr.dim()));
        let h1 = ModK::from_label(&label("H:1"), p).unwrap();
        assert!(!projective_cover_k(&h1).is_bijective(h1.dim()));
    }

    #[test]
    fn decompose_large_random_multisets() {
        // Random multisets of labels, built, shuffled by conjugation, and
        // decomposed back: the round trip must be exact.
        let p = 3;
        let mut state = 0xfeed_5eed_u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        for trial in 0..60 {
            let mut labels = Vec::new();
            let mut dim = 0usize;
            while dim < 30 {
                let l = match next() % 5 {
                    0 => ModLabel::Horizontal { m: (next() % 4) as usize },
                    1 => ModLabel::Vertical { n: 1 + (next() % 3) as usize },
                    2 => ModLabel::Band { lambda: next() % p, n: 1 + (next() % 3) as usize },
                    3 => ModLabel::BandInf { n: 1 + (next() % 3) as usize },
                    _ => ModLabel::Proj,
                };
                dim += l.dim();
                labels.push(l);
            }
            let m = ModK::from_labels(&labels, p).unwrap();
            // Random invertible conjugator: identity + strictly lower noise,
            // then a couple of row swaps encoded as a permutation product.
            let d = m.dim();
            let mut gmat = KMatrix::identity(d, p);
            for _ in 0..3 * d {
                let i = (next() as usize) % d;
                let j = (next() as usize) % d;
                if i > j {
                    gmat.set(i, j, next() % p);
                }
            }
            let conj = m.conjugate(&gmat).unwrap();
            let expected = {
                let mut counts = BTreeMap::new();
                for l in &labels {
                    *counts.entry(l.clone()).or_insert(0usize) += 1;
                }
                Decomposition::from_counts(counts)
            };
            assert_eq!(decompose(&conj).unwrap(), expected, "trial {trial}: {labels:?}");
        }
    }
}
