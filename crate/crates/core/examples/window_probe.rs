//! Timing probe for the expensive steps of a depth-3 component window.
//!
//! Not part of the test suite; run with
//! `cargo run -p kronord-core --release --example window_probe`.

use std::time::Instant;

use kronord_core::ars::{almost_split, end_algebra, iso_test, split_lattice};
use kronord_core::heller::{syzygy, z_lattice};
use kronord_core::modk::decompose;
use kronord_core::{Config, Dvr};

fn main() {
    let cfg = Config::default();
    let dvr = Dvr::new(cfg.p).unwrap();

    let t0 = Instant::now();
    let z = z_lattice(&dvr, -2).unwrap();
    println!("[{:>8.2?}] Z(-2) rank {}", t0.elapsed(), z.rank());

    let t = Instant::now();
    let seq = almost_split(&dvr, &cfg, &z).unwrap();
    println!(
        "[{:>8.2?}] E(Z(-2)): middle rank {}, tail rank {}",
        t.elapsed(),
        seq.middle.rank(),
        seq.tail.rank()
    );

    let t = Instant::now();
    let split = split_lattice(&dvr, &cfg, &seq.middle).unwrap();
    println!(
        "[{:>8.2?}] split middle of E(Z(-2)): {} summand(s)",
        t.elapsed(),
        split.summands.len()
    );
    let e_m2 = split.summands[0].clone().named("E(-2)".to_string());
    println!("          E(-2) rank {}", e_m2.rank());

    let t = Instant::now();
    let end = end_algebra(&dvr, &e_m2);
    println!("[{:>8.2?}] End(E(-2)) dim {}", t.elapsed(), end.basis.len());

    let t = Instant::now();
    let dec = decompose(&e_m2.tensor_k(&dvr).unwrap()).unwrap();
    println!("[{:>8.2?}] E(-2) tensor kappa: {:?}", t.elapsed(),
        dec.summands.iter().map(|(l, c)| (l.to_string(), *c)).collect::<Vec<_>>());

    let t = Instant::now();
    let seq2 = almost_split(&dvr, &cfg, &e_m2).unwrap();
    println!(
        "[{:>8.2?}] E(E(-2)): middle rank {}, tail rank {}",
        t.elapsed(),
        seq2.middle.rank(),
        seq2.tail.rank()
    );

    let t = Instant::now();
    let split2 = split_lattice(&dvr, &cfg, &seq2.middle).unwrap();
    let ranks: Vec<usize> = split2.summands.iter().map(|s| s.rank()).collect();
    println!(
        "[{:>8.2?}] split middle of E(E(-2)): ranks {:?}",
        t.elapsed(),
        ranks
    );

    let t = Instant::now();
    let tau = syzygy(&dvr, &e_m2).unwrap();
    println!("[{:>8.2?}] tau E(-2) rank {}", t.elapsed(), tau.rank());

    let t = Instant::now();
    let z3 = z_lattice(&dvr, -3).unwrap();
    let lower = split2
        .summands
        .iter()
        .find(|s| s.rank() == z3.rank())
        .expect("a summand with the rank of Z(-3)");
    let matched = iso_test(&dvr, &cfg, lower, &z3).unwrap();
    println!(
        "[{:>8.2?}] lower middle summand ~ Z(-3): {}",
        t.elapsed(),
        matched.is_some()
    );

    println!("total: {:?}", t0.elapsed());
}
