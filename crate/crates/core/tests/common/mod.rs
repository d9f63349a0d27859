#![allow(dead_code)]
//! Shared randomized-fixture helpers for the integration suites.
//! Deterministic: everything is driven by a seeded ChaCha stream.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use exchg_core::counts::{CountGamble, CountSpace};
use exchg_core::gamble::{Gamble, OutcomeSpace, SequenceSpace};
use exchg_core::rational::{ratio, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(r: &mut ChaCha8Rng) -> Rational {
    ratio(r.gen_range(-6..=6), r.gen_range(1..=4))
}

pub fn labels(k: usize) -> Arc<OutcomeSpace> {
    let names = ["a", "b", "c", "d"];
    OutcomeSpace::new(names[..k].to_vec()).unwrap()
}

pub fn space(k: usize, n: usize) -> SequenceSpace {
    SequenceSpace::new(labels(k), n).unwrap()
}

pub fn random_gamble(r: &mut ChaCha8Rng, s: &SequenceSpace) -> Gamble {
    let values = (0..s.size()).map(|_| random_rational(r)).collect();
    Gamble::new(s.clone(), values).unwrap()
}

pub fn random_count_gamble(r: &mut ChaCha8Rng, cs: &CountSpace) -> CountGamble {
    let values = (0..cs.size()).map(|_| random_rational(r)).collect();
    CountGamble::new(cs.clone(), values).unwrap()
}

/// A random point of the simplex with positive rational coordinates.
pub fn random_simplex_coords(r: &mut ChaCha8Rng, k: usize) -> Vec<Rational> {
    loop {
        let raw: Vec<Rational> = (0..k).map(|_| ratio(r.gen_range(0..=9), 1)).collect();
        let total: Rational = raw.iter().sum();
        if total != ratio(0, 1) {
            return raw.into_iter().map(|v| v / &total).collect();
        }
    }
}
