//! Deterministic certificates for the translate isomorphisms.
//!
//! The case data lives in `common::fixtures`; each case presents a lattice by
//! an explicit `O`-basis inside `A^{⊕m}`, a projective cover, an explicit
//! kernel basis, and a diagonal sign matrix carrying the kernel onto an
//! explicit presentation of the expected translate — all verified as exact
//! matrix identities over `O`.
//!
//! Covered: the boundary orbit `τZ_n ≅ Z_{n−1}` for `n ∈ {−3, …, 4}` (with
//! `Z_n` the Heller lattice of `H:n` for `n ≥ 0` and of `V:−n` for `n < 0`),
//! the fixed points `τ(heller(Binf:n)) ≅ heller(Binf:n)`, and the mirror law
//! `τ(heller(B:λ:n)) ≅ heller(B:−λ:n)` — which is a fixed point precisely
//! for `λ = 0`.

mod common;

use common::fixtures::*;
use common::*;
use kronord_core::ars::iso_test;
use kronord_core::dvr::Dvr;
use kronord_core::heller::heller_label;
use kronord_core::Config;

fn setup() -> (Dvr, Config) {
    let cfg = Config::default();
    let dvr = Dvr::new(cfg.p).unwrap();
    (dvr, cfg)
}

#[test]
fn boundary_translate_cases_verify() {
    let (dvr, cfg) = setup();
    let cases = boundary_cases();
    assert_eq!(cases.len(), 8);
    for case in &cases {
        run_case(&dvr, &cfg, case);
    }
}

#[test]
fn negative_boundary_bases_agree() {
    let (dvr, _) = setup();
    for a in 1..=3usize {
        let first = columns(&dvr, a + 1, &boundary_basis_neg_first(a));
        let second = columns(&dvr, a + 1, &boundary_basis_neg_second(a));
        assert!(
            spans_match(&dvr, &first, &second),
            "the two bases of Z_-{a} span different lattices"
        );
    }
}

#[test]
fn band_infinity_translate_is_fixed() {
    let (dvr, cfg) = setup();
    for case in &band_inf_cases() {
        run_case(&dvr, &cfg, case);
    }
}

#[test]
fn band_translate_mirrors_the_parameter() {
    let (dvr, cfg) = setup();
    let p = cfg.p as i64;
    for n in 1..=3usize {
        for lam in 0..=2i64 {
            let case = band_mirror_case(n, lam, p);
            let mirror = (p - lam) % p;
            let ker = run_case(&dvr, &cfg, &case);
            if lam != mirror {
                // No diagonal sign matrix carries the kernel back to the
                // unmirrored parameter, and the engine confirms the mirror
                // target abstractly.
                let unmirrored = present(&dvr, "unmirrored band target", n, &band_basis(n, lam));
                assert!(
                    find_diag_signs(&ker.lattice, &unmirrored.lattice).is_none(),
                    "translate of B:{lam}:{n} unexpectedly matches its own parameter"
                );
                let mirror_target =
                    heller_label(&dvr, &format!("B:{mirror}:{n}").parse().unwrap()).unwrap();
                assert!(
                    matches!(iso_test(&dvr, &cfg, &ker.lattice, &mirror_target), Ok(Some(_))),
                    "translate of B:{lam}:{n} is not certified isomorphic to B:{mirror}:{n}"
                );
            }
        }
    }
}
