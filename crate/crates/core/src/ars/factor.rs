//! Endomorphisms factoring through the projective cover, and the φ-search.
//!
//! `T(L) = {π∘ψ : ψ ∈ Hom_A(L, P)}` for a projective cover `π: P → L` is an
//! `O`-submodule of `End_A(L)` — deliberately *not* saturated: the defining
//! condition is membership in the exact image. Writing `P = A^g`, every `ψ`
//! splits into `g` maps `L → A`, so `T` is spanned by `{π_b ∘ h}` over cover
//! blocks `π_b` and a basis `h` of `Hom_A(L, A)`.
//!
//! Membership is decided exactly against a column-echelon form of the
//! vectorized generators; a mod-`p` row-space test serves as a fast necessary
//! filter. For the φ-search the `K`-solve variant reports, for each
//! endomorphism `f`, the exact threshold `t(f) = min{j : ε^j·f ∈ T}` (or that
//! no power ever lands in `T`), so one pass per candidate decides every
//! `ε`-level at once.
//!
//! `find_phi` looks for `φ ∈ End` with `φ ∉ T` while `φ∘f ∈ T` and `f∘φ ∈ T`
//! for every `f` in the radical. Candidates are scanned level by level:
//! level `j` proposes `ε^j·c` for `c` running over the `End` basis and then
//! over lifts of a basis of `soc(Ē) mod reduce(T)`; the first hit wins. Both
//! one-sided and two-sided variants of the factoring condition are tracked so
//! the outcome records whether enforcing the left condition changed the
//! answer.

use crate::config::Config;
use crate::dvr::{Dvr, Valuation};
use crate::error::Error;
use crate::heller::projective_cover;
use crate::linalg::{column_span, ColumnSpan, KMatrix, OMatrix};
use crate::order::{hom_space, regular, Lattice};

use super::end::EndAlgebra;

/// The `O`-span of the endomorphisms factoring through the projective cover.
#[derive(Debug, Clone)]
pub struct FactorSpace {
    /// Spanning set: cover block composed with a `Hom(L, A)` basis element.
    pub generators: Vec<OMatrix>,
    /// Lattice rank `n` (generators are `n×n`).
    n: usize,
    /// Column echelon of the vectorized generators (exact membership).
    span: ColumnSpan,
    /// Row-reduced reductions of the generators (mod-`p` prefilter).
    red_rref: KMatrix,
    red_pivots: Vec<usize>,
}

/// `ε`-threshold of a vector relative to `T`:
/// `Power(t)` means `ε^j·f ∈ T ⟺ j ≥ t`; `Never` means no power lands in `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    Power(u32),
    Never,
}

/// Computes `T(L)` from the greedy projective cover.
pub fn factor_through_cover(dvr: &Dvr, l: &Lattice) -> Result<FactorSpace, Error> {
    let n = l.rank();
    let cover = projective_cover(dvr, l)?;
    let homs = hom_space(dvr, l, &regular(1));
    let mut generators = Vec::with_capacity(cover.g * homs.len());
    for b in 0..cover.g {
        let block = cover.cover.submatrix(0, n, 4 * b, 4);
        for h in &homs {
            generators.push(block.mul(h));
        }
    }
    let vectorized = OMatrix::from_columns(
        n * n,
        &generators.iter().map(|g| g.vectorize()).collect::<Vec<_>>(),
    );
    let span = column_span(dvr, &vectorized);
    let p = dvr.p();
    let reduced_rows = KMatrix::from_fn(generators.len(), n * n, p, |i, t| {
        dvr.reduce(generators[i].get(t / n, t % n))
    });
    let (red_rref, red_pivots) = reduced_rows.rref();
    Ok(FactorSpace {
        generators,
        n,
        span,
        red_rref,
        red_pivots,
    })
}

impl FactorSpace {
    /// `O`-rank of `T`.
    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    /// Mod-`p` membership of a reduced endomorphism in `reduce(T)`.
    /// Necessary (not sufficient) for exact membership.
    pub fn reduced_member(&self, m: &KMatrix) -> bool {
        let n = self.n;
        let p = self.red_rref.p();
        let mut v: Vec<u64> = (0..n * n).map(|t| m.get(t / n, t % n)).collect();
        for (i, &pc) in self.red_pivots.iter().enumerate() {
            let c = v[pc];
            if c != 0 {
                for j in 0..v.len() {
                    let r = self.red_rref.get(i, j);
                    if r != 0 {
                        v[j] = (v[j] + p - (c * r) % p) % p;
                    }
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// Exact membership `f ∈ T`.
    pub fn contains(&self, dvr: &Dvr, f: &OMatrix) -> bool {
        if !self.reduced_member(&f.reduce(dvr)) {
            return false;
        }
        self.span.contains(dvr, &f.vectorize()).is_some()
    }

    /// Exact `ε`-threshold of `f` relative to `T` (see [`Threshold`]).
    pub fn eps_threshold(&self, dvr: &Dvr, f: &OMatrix) -> Threshold {
        match self.span.solve_k(&f.vectorize()) {
            None => Threshold::Never,
            Some(coeffs) => {
                let mut need = 0i64;
                for c in &coeffs {
                    if let Valuation::Finite(v) = dvr.valuation(c) {
                        if -v > need {
                            need = -v;
                        }
                    }
                }
                Threshold::Power(need as u32)
            }
        }
    }
}

/// Result of the φ-search.
#[derive(Debug, Clone)]
pub struct PhiOutcome {
    /// The chosen endomorphism (already scaled by its `ε`-level).
    pub phi: OMatrix,
    /// `ε`-power applied to the base candidate.
    pub level: u32,
    /// Index of the base candidate (basis elements first, then socle lifts).
    pub candidate_index: usize,
    /// Whether enforcing only the right-sided condition `φ∘f ∈ T` would have
    /// selected a different (earlier) candidate.
    pub one_sided_would_differ: bool,
}

const PHI_LEVEL_MAX: u32 = 8;

/// Per-candidate exact search data, computed lazily.
struct CandidateState {
    exact: OMatrix,
    reduced: KMatrix,
    discarded: bool,
    /// `(j_min_both, j_min_right, j_max_exclusive)` once computed: the
    /// candidate is a (both-sided) hit at level `j` iff
    /// `j_min_both ≤ j < j_max_exclusive`, and a right-only hit iff
    /// `j_min_right ≤ j < j_max_exclusive`. `j_min_both = u32::MAX` marks a
    /// candidate that can never satisfy the two-sided condition but is kept
    /// for the one-sided diagnostic.
    window: Option<(u32, u32, u32)>,
}

/// Searches for `φ` with `φ ∉ T`, `φ∘f ∈ T`, `f∘φ ∈ T` for all radical
/// basis elements `f`. Requires a certified-local endomorphism algebra.
pub fn find_phi(
    dvr: &Dvr,
    cfg: &Config,
    end: &EndAlgebra,
    t: &FactorSpace,
) -> Result<PhiOutcome, Error> {
    let cert = end.certify_local(dvr)?;
    let rad = end.radical_endos_from(dvr, &cert);
    let rad_red: Vec<KMatrix> = rad.iter().map(|f| f.reduce(dvr)).collect();

    let mut candidates: Vec<CandidateState> = end
        .basis
        .iter()
        .zip(&end.reduced)
        .map(|(b, r)| CandidateState {
            exact: b.clone(),
            reduced: r.clone(),
            discarded: false,
            window: None,
        })
        .collect();
    let mut socle_added = false;
    let mut right_winner: Option<(u32, usize)> = None;

    let mut level = 0u32;
    while level <= PHI_LEVEL_MAX {
        let mut idx = 0usize;
        while idx < candidates.len() {
            if !candidates[idx].discarded {
                // Level-0 fast path: a failed mod-p prefilter on any *right*
                // product proves the candidate cannot hit level 0 in either
                // variant, without exact arithmetic. (Left products are not
                // pre-filtered: a right-only-feasible candidate must still be
                // seen by the one-sided diagnostic.)
                let prefilter_ok = level > 0 || {
                    let c_red = &candidates[idx].reduced;
                    rad_red.iter().all(|f| t.reduced_member(&c_red.mul(f)))
                };
                if prefilter_ok {
                    if candidates[idx].window.is_none() {
                        match candidate_window(dvr, t, &candidates[idx].exact, &rad) {
                            None => candidates[idx].discarded = true,
                            Some(win) => candidates[idx].window = Some(win),
                        }
                    }
                    if let Some((jmin_both, jmin_right, jmax)) = candidates[idx].window {
                        if right_winner.is_none() && jmin_right <= level && level < jmax {
                            right_winner = Some((level, idx));
                        }
                        if jmin_both != u32::MAX && jmin_both <= level && level < jmax {
                            let phi = candidates[idx].exact.scale(&dvr.eps_pow(level as i64));
                            let one_sided_would_differ = match right_winner {
                                Some(rw) => rw != (level, idx),
                                None => false,
                            };
                            return Ok(PhiOutcome {
                                phi,
                                level,
                                candidate_index: idx,
                                one_sided_would_differ,
                            });
                        }
                    }
                }
            }
            idx += 1;
        }
        // Basis candidates exhausted at this level: bring in the socle lifts
        // (once), then retry this level including them before moving on.
        if !socle_added {
            socle_added = true;
            let lifts = socle_lift_candidates(dvr, cfg, end, t, &cert.radical_reduced);
            if !lifts.is_empty() {
                for m in lifts {
                    let reduced = m.reduce(dvr);
                    candidates.push(CandidateState {
                        exact: m,
                        reduced,
                        discarded: false,
                        window: None,
                    });
                }
                continue; // re-run the same level over the extended list
            }
        }
        level += 1;
    }
    Err(Error::NoPhiFound(format!(
        "no endomorphism of {} satisfies the factoring conditions within {} eps-levels",
        end.lattice.name, PHI_LEVEL_MAX
    )))
}

/// Computes the feasibility window of one candidate: thresholds of the
/// candidate itself and of all products against the radical basis.
/// `None` means not even the right-sided condition is ever satisfiable;
/// otherwise `j_min_both` is `u32::MAX` when only the right side works.
fn candidate_window(
    dvr: &Dvr,
    t: &FactorSpace,
    cand: &OMatrix,
    rad: &[OMatrix],
) -> Option<(u32, u32, u32)> {
    let jmax = match t.eps_threshold(dvr, cand) {
        Threshold::Power(0) => return None, // in T, so every ε-multiple is too
        Threshold::Power(k) => k,
        Threshold::Never => u32::MAX,
    };
    let mut jmin_right = 0u32;
    for f in rad {
        match t.eps_threshold(dvr, &cand.mul(f)) {
            Threshold::Never => return None,
            Threshold::Power(k) => jmin_right = jmin_right.max(k),
        }
        if jmin_right >= jmax {
            return None;
        }
    }
    let mut jmin_both = jmin_right;
    for f in rad {
        match t.eps_threshold(dvr, &f.mul(cand)) {
            Threshold::Never => {
                jmin_both = u32::MAX;
                break;
            }
            Threshold::Power(k) => jmin_both = jmin_both.max(k),
        }
    }
    if jmin_both >= jmax {
        jmin_both = u32::MAX;
    }
    Some((jmin_both, jmin_right, jmax))
}

/// Lifts of a basis of `soc(Ē) / (soc(Ē) ∩ reduce(T))`, in deterministic
/// (row-echelon) order.
fn socle_lift_candidates(
    dvr: &Dvr,
    cfg: &Config,
    end: &EndAlgebra,
    t: &FactorSpace,
    rad_reduced: &[KMatrix],
) -> Vec<OMatrix> {
    let d = end.dim();
    let p = dvr.p();
    let socle = end.socle(dvr, rad_reduced, cfg.seed);
    if socle.is_empty() {
        return Vec::new();
    }
    // Coordinates of reduce(T) inside Ē.
    let t_coords: Vec<Vec<u64>> = t
        .generators
        .iter()
        .map(|g| end.coords_of(&g.reduce(dvr)))
        .collect();
    let t_mat = KMatrix::from_fn(t_coords.len(), d, p, |i, j| t_coords[i][j]);
    let (t_rref, t_pivots) = t_mat.rref();
    // Reduce each socle vector modulo reduce(T), then echelon the survivors.
    let reduced_socle: Vec<Vec<u64>> = socle
        .iter()
        .map(|c| {
            let mut v = c.clone();
            for (i, &pc) in t_pivots.iter().enumerate() {
                let coef = v[pc];
                if coef != 0 {
                    for j in 0..d {
                        let r = t_rref.get(i, j);
                        if r != 0 {
                            v[j] = (v[j] + p - (coef * r) % p) % p;
                        }
                    }
                }
            }
            v
        })
        .collect();
    let stacked = KMatrix::from_fn(reduced_socle.len(), d, p, |i, j| reduced_socle[i][j]);
    let (rref, pivots) = stacked.rref();
    (0..pivots.len())
        .map(|i| {
            let coords: Vec<u64> = (0..d).map(|j| rref.get(i, j)).collect();
            end.element_from_coords(dvr, &coords)
        })
        .collect()
}
