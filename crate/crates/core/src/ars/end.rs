//! Endomorphism algebras of lattices.
//!
//! `End_A(L)` is computed exactly as an `O`-basis of matrices commuting with
//! both actions. The reduction `Ē = End ⊗ κ` is carried alongside and is the
//! arena for all structural questions: locality, the Jacobson radical, and
//! the socle.
//!
//! Locality is established by a *certificate*, never assumed:
//!
//! 1. every reduced basis element `b̄ᵢ` must have exactly one `λᵢ ∈ κ` with
//!    `b̄ᵢ − λᵢ·1` singular (in a local algebra with residue field `κ`,
//!    `b̄ᵢ = λᵢ + nilpotent`, so the set of singular shifts is exactly `{λᵢ}`);
//! 2. the codimension-1 subspace `R = ker λ` must admit a full flag of
//!    subspaces `0 ⊂ V₁ ⊂ … ⊂ κⁿ` with `R·Vₖ ⊆ Vₖ₋₁` (greedy construction;
//!    success proves the multiplicative closure `N` of `R` is nilpotent);
//! 3. the identity must have `λ(1) ≠ 0`.
//!
//! Together these prove `R` is a nilpotent two-sided ideal of codimension 1:
//! `N` is nilpotent so `1 ∉ N`, hence `N ⊊ Ē`; `R ⊆ N` and `codim R = 1`
//! force `N = R`, so `R` is multiplicatively closed; by (3) `Ē = κ·1 ⊕ R`, so
//! `aR ⊆ R + NR ⊆ R` and symmetrically, making `R` an ideal. A nilpotent ideal
//! is inside the radical, and a codimension-1 subspace containing the radical
//! *is* the radical (the quotient has no proper nonzero ideals left to lose).
//! Hence `rad Ē = R`, the quotient is `κ`, and `Ē` is local. Each check is a
//! plain rank computation; nothing relies on trace forms, which degenerate in
//! small characteristic.

use once_cell::sync::OnceCell;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dvr::Dvr;
use crate::error::Error;
use crate::linalg::{KMatrix, OMatrix};
use crate::order::{hom_space, Lattice};

/// The endomorphism algebra of a lattice: exact `O`-basis plus its reduction.
#[derive(Debug, Clone)]
pub struct EndAlgebra {
    pub lattice: Lattice,
    /// `O`-basis of `End_A(L)` (saturated: reductions stay independent).
    pub basis: Vec<OMatrix>,
    /// Reductions of the basis mod `ε`, a `κ`-basis of `Ē`.
    pub reduced: Vec<KMatrix>,
    /// Rows of the vectorized reduced basis forming an invertible block.
    coord_rows: Vec<usize>,
    /// Inverse of that block: `coords(v) = coord_inv · v[coord_rows]`.
    coord_inv: KMatrix,
    /// Left-multiplication tables in basis coordinates, built on demand.
    table: OnceCell<Vec<KMatrix>>,
}

/// Outcome of the locality certificate: the data pinning `rad Ē`.
#[derive(Debug, Clone)]
pub struct LocalCertificate {
    /// `λᵢ`: the unique singular shift of each reduced basis element.
    pub lambdas: Vec<u64>,
    /// A basis index with `λ ≠ 0` (used to normalize the radical basis).
    pub pivot: usize,
    /// Length of the certified flag (nilpotency class bound of the radical).
    pub nilpotency_class: usize,
    /// `κ`-basis of `rad Ē`: the reduced images of `radical_endos` (the last
    /// `ε·b_pivot` generator reduces to zero and is omitted here).
    pub radical_reduced: Vec<KMatrix>,
    /// Coefficient vectors of `radical_reduced` in the reduced basis.
    pub radical_coords: Vec<Vec<u64>>,
}

/// Computes `End_A(L)` with its reduction and coordinate extractor.
pub fn end_algebra(dvr: &Dvr, l: &Lattice) -> EndAlgebra {
    let basis = hom_space(dvr, l, l);
    let reduced: Vec<KMatrix> = basis.iter().map(|b| b.reduce(dvr)).collect();
    let (coord_rows, coord_inv) = coordinate_extractor(&reduced, dvr.p());
    EndAlgebra {
        lattice: l.clone(),
        basis,
        reduced,
        coord_rows,
        coord_inv,
        table: OnceCell::new(),
    }
}

/// Selects rows of the stacked vectorized basis forming an invertible block
/// and inverts it, so that coordinates in the basis cost one small multiply.
fn coordinate_extractor(reduced: &[KMatrix], p: u64) -> (Vec<usize>, KMatrix) {
    let d = reduced.len();
    if d == 0 {
        return (Vec::new(), KMatrix::zeros(0, 0, p));
    }
    let n = reduced[0].nrows();
    let stacked = KMatrix::from_fn(d, n * n, p, |i, t| reduced[i].get(t / n, t % n));
    let (_, pivots) = stacked.rref();
    assert_eq!(
        pivots.len(),
        d,
        "endomorphism basis reductions must stay linearly independent"
    );
    let block = KMatrix::from_fn(d, d, p, |r, i| reduced[i].get(pivots[r] / n, pivots[r] % n));
    let inv = block
        .inverse()
        .expect("pivot block of an independent family is invertible");
    (pivots, inv)
}

impl EndAlgebra {
    /// Dimension of `End` over `O` (= dimension of `Ē` over `κ`).
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Rank of the underlying lattice.
    pub fn lattice_rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Coordinates of a reduced endomorphism in the reduced basis.
    ///
    /// The input must lie in `Ē` (true for any reduction of an exact
    /// endomorphism and for any product of reduced basis elements).
    pub fn coords_of(&self, m: &KMatrix) -> Vec<u64> {
        let n = self.lattice.rank();
        let restricted: Vec<u64> = self
            .coord_rows
            .iter()
            .map(|&t| m.get(t / n, t % n))
            .collect();
        self.coord_inv.mul_vec(&restricted)
    }

    /// The exact lift `Σ lift(cᵢ)·bᵢ` of a coefficient vector.
    pub fn element_from_coords(&self, dvr: &Dvr, coords: &[u64]) -> OMatrix {
        let n = self.lattice.rank();
        let mut acc = OMatrix::zeros(n, n);
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c != 0 {
                acc = acc.add(&b.scale(&dvr.lift(*c)));
            }
        }
        acc
    }

    /// Left-multiplication tables of `Ē` in basis coordinates: entry `i` is
    /// the `d×d` matrix whose column `j` holds `coords(b̄ᵢ·b̄ⱼ)`. Computed on
    /// first use (quadratically many products; only tests and diagnostics
    /// need the full table).
    pub fn reduced_structure(&self) -> &Vec<KMatrix> {
        self.table.get_or_init(|| {
            let d = self.dim();
            let p = self.p();
            (0..d)
                .map(|i| {
                    let cols: Vec<Vec<u64>> = (0..d)
                        .map(|j| self.coords_of(&self.reduced[i].mul(&self.reduced[j])))
                        .collect();
                    KMatrix::from_fn(d, d, p, |r, c| cols[c][r])
                })
                .collect()
        })
    }

    fn p(&self) -> u64 {
        self.coord_inv.p()
    }

    /// Locality certificate (see module docs). `Err(Invariant)` means the
    /// certificate could not be established — the algebra is not local with
    /// residue field `κ`, or not provably so by this method; it never returns
    /// a wrong certificate.
    pub fn certify_local(&self, dvr: &Dvr) -> Result<LocalCertificate, Error> {
        let d = self.dim();
        let n = self.lattice.rank();
        let p = dvr.p();
        if d == 0 || n == 0 {
            return Err(Error::Invariant(
                "locality certificate: zero algebra has no identity".into(),
            ));
        }
        // Check 1: unique singular shift per basis element.
        let mut lambdas = Vec::with_capacity(d);
        for (i, b) in self.reduced.iter().enumerate() {
            let mut hits = Vec::new();
            for c in 0..p {
                let shifted = b.sub(&KMatrix::identity(n, p).scale(c));
                if shifted.rank() < n {
                    hits.push(c);
                }
            }
            match hits.as_slice() {
                [c] => lambdas.push(*c),
                _ => {
                    return Err(Error::Invariant(format!(
                        "locality certificate: basis element {i} has {} singular shifts over F_{p}",
                        hits.len()
                    )))
                }
            }
        }
        // Check 3 first (cheap): λ(identity) ≠ 0.
        let id_coords = self.coords_of(&KMatrix::identity(n, p));
        let lam_id = id_coords
            .iter()
            .zip(&lambdas)
            .fold(0u64, |acc, (c, l)| (acc + c * l) % p);
        if lam_id == 0 {
            return Err(Error::Invariant(
                "locality certificate: identity lies in the candidate radical".into(),
            ));
        }
        let pivot = lambdas
            .iter()
            .position(|&l| l != 0)
            .expect("lambda functional is nonzero because lambda(1) != 0");
        // Candidate radical basis: b̄ⱼ − (λⱼ/λ_pivot)·b̄_pivot, j ≠ pivot.
        let pivot_inv = crate::dvr::inv_mod(lambdas[pivot], p);
        let mut radical_reduced = Vec::with_capacity(d - 1);
        let mut radical_coords = Vec::with_capacity(d - 1);
        for j in 0..d {
            if j == pivot {
                continue;
            }
            let mu = (lambdas[j] * pivot_inv) % p;
            radical_reduced.push(self.reduced[j].sub(&self.reduced[pivot].scale(mu)));
            let mut coords = vec![0u64; d];
            coords[j] = 1;
            coords[pivot] = (p - mu) % p;
            radical_coords.push(coords);
        }
        // Check 2: greedy flag — V₁ = ∩ ker rⱼ, V_{k+1} = {v : rⱼ v ∈ Vₖ ∀j}.
        let nilpotency_class = nilpotency_flag(&radical_reduced, n, p).ok_or_else(|| {
            Error::Invariant(
                "locality certificate: candidate radical is not nilpotent (flag stalled)".into(),
            )
        })?;
        Ok(LocalCertificate {
            lambdas,
            pivot,
            nilpotency_class,
            radical_reduced,
            radical_coords,
        })
    }

    /// `O`-basis of the preimage in `End` of `rad Ē` (index `p` in `End`):
    /// the lifts of the certified radical basis together with `ε·b_pivot`.
    /// Only certified-local algebras are supported; every consumer of the
    /// radical in this crate requires locality anyway.
    pub fn radical_endos(&self, dvr: &Dvr) -> Result<Vec<OMatrix>, Error> {
        let cert = self.certify_local(dvr)?;
        Ok(self.radical_endos_from(dvr, &cert))
    }

    /// Same as [`EndAlgebra::radical_endos`] with an already-built certificate.
    pub fn radical_endos_from(&self, dvr: &Dvr, cert: &LocalCertificate) -> Vec<OMatrix> {
        let mut out: Vec<OMatrix> = cert
            .radical_coords
            .iter()
            .map(|coords| self.element_from_coords(dvr, coords))
            .collect();
        out.push(self.basis[cert.pivot].scale(&dvr.eps()));
        out
    }

    /// Coefficient vectors of a `κ`-basis of the two-sided socle
    /// `{x ∈ Ē : x·rad = rad·x = 0}`.
    ///
    /// The defining linear system has `2·|rad|·n²` equations in `d` unknowns;
    /// instead of eliminating it wholesale, random `κ`-combinations of the
    /// equations are accumulated until every kernel vector of the sampled
    /// system verifies against the full condition set (verification is exact
    /// and cheap, so sampling can only overshoot, never lie). Falls back to
    /// the full elimination if sampling stalls.
    pub fn socle(&self, dvr: &Dvr, rad_reduced: &[KMatrix], seed: u64) -> Vec<Vec<u64>> {
        let d = self.dim();
        let n = self.lattice.rank();
        let p = dvr.p();
        if d == 0 {
            return Vec::new();
        }
        if rad_reduced.is_empty() {
            // Zero radical: the socle is everything.
            return (0..d)
                .map(|i| {
                    let mut c = vec![0u64; d];
                    c[i] = 1;
                    c
                })
                .collect();
        }
        let verifies = |coords: &[u64]| -> bool {
            let x = linear_combination(&self.reduced, coords, n, p);
            rad_reduced
                .iter()
                .all(|r| x.mul(r).is_zero() && r.mul(&x).is_zero())
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x50c1e);
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for round in 0..12 {
            // A fresh batch of random combinations of the exact conditions:
            // for random u ∈ κⁿ, v ∈ κⁿ and each side/radical element, the
            // functional c ↦ uᵀ·(Σᵢ cᵢ b̄ᵢ)·r·v (or r on the left).
            let batch = if round == 0 { 2 * d + 8 } else { d / 2 + 4 };
            for _ in 0..batch {
                let u: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
                let v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
                let r = &rad_reduced[rng.gen_range(0..rad_reduced.len())];
                let left = rng.gen_bool(0.5);
                let mut row = Vec::with_capacity(d);
                for b in &self.reduced {
                    let m = if left { r.mul(b) } else { b.mul(r) };
                    // uᵀ m v
                    let mv = m.mul_vec(&v);
                    let val = u
                        .iter()
                        .zip(&mv)
                        .fold(0u64, |acc, (a, b)| (acc + a * b) % p);
                    row.push(val);
                }
                rows.push(row);
            }
            let system = KMatrix::from_fn(rows.len(), d, p, |i, j| rows[i][j]);
            let kernel = system.kernel();
            let candidates: Vec<Vec<u64>> = (0..kernel.ncols()).map(|j| kernel.col(j)).collect();
            if candidates.iter().all(|c| verifies(c)) {
                return candidates;
            }
        }
        // Full elimination fallback (exact, slower).
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for r in rad_reduced {
            for side in 0..2 {
                for s in 0..n {
                    for t in 0..n {
                        let row: Vec<u64> = self
                            .reduced
                            .iter()
                            .map(|b| {
                                let m = if side == 0 { b.mul(r) } else { r.mul(b) };
                                m.get(s, t)
                            })
                            .collect();
                        rows.push(row);
                    }
                }
            }
        }
        let system = KMatrix::from_fn(rows.len(), d, p, |i, j| rows[i][j]);
        let kernel = system.kernel();
        (0..kernel.ncols()).map(|j| kernel.col(j)).collect()
    }
}

/// `Σ cᵢ·mᵢ` over `κ`.
fn linear_combination(mats: &[KMatrix], coords: &[u64], n: usize, p: u64) -> KMatrix {
    let mut acc = KMatrix::zeros(n, n, p);
    for (c, m) in coords.iter().zip(mats) {
        if *c != 0 {
            acc = acc.add(&m.scale(*c));
        }
    }
    acc
}

/// Greedy common flag for a family of matrices: returns the number of steps
/// needed for `V₁ = ∩ ker rⱼ`, `V_{k+1} = {v : rⱼ v ⊆ Vₖ}` to reach `κⁿ`, or
/// `None` if the chain stalls first (the family is then not nilpotent).
fn nilpotency_flag(family: &[KMatrix], n: usize, p: u64) -> Option<usize> {
    if family.is_empty() {
        return Some(0);
    }
    // W holds a basis (as rows) of the functionals vanishing on the current V.
    let mut w = KMatrix::identity(n, p);
    let mut dim_v = 0usize;
    let mut steps = 0usize;
    while dim_v < n {
        // Stack W·rⱼ over all j; its kernel is the next V.
        let mut stacked = w.mul(&family[0]);
        for r in &family[1..] {
            stacked = stacked.vstack(&w.mul(r));
        }
        let v = stacked.kernel(); // n × dim V_{k+1}
        let new_dim = v.ncols();
        if new_dim == dim_v {
            return None;
        }
        dim_v = new_dim;
        steps += 1;
        if dim_v == n {
            break;
        }
        // Functionals vanishing on V = kernel of Vᵀ, as rows.
        w = v.transpose().kernel().transpose();
    }
    Some(steps)
}
