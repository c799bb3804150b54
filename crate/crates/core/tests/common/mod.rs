//! Strategies and seeded helpers shared by the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wdvv_core::{Poly, PolyMatrix, Rat};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
}

/// Polynomials in `n` variables of total degree `≤ max_degree`.
pub fn poly(n: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=max_degree, n), rat()), 0..=max_terms).prop_map(move |terms| {
        Poly::from_terms(
            n,
            terms.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= max_degree),
        )
    })
}

pub fn matrix(dim: usize, n: usize, max_degree: u32) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(poly(n, max_degree, 3), dim * dim)
        .prop_map(move |entries| PolyMatrix::from_fn(dim, n, |i, j| entries[i * dim + j].clone()))
}

pub fn point(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(rat(), n)
}
