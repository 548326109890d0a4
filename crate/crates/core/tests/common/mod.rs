#![allow(dead_code)]

use hallforge_core::group::{GroupElement, GroupWord, NilpotentGroup};
use hallforge_core::ring::RingElement;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn element(g: &NilpotentGroup, rng: &mut ChaCha8Rng, bound: i64) -> GroupElement {
    let coords: Vec<i64> = (0..g.dimension()).map(|_| rng.gen_range(-bound..=bound)).collect();
    g.from_i64s(&coords).unwrap()
}

pub fn word(g: &NilpotentGroup, rng: &mut ChaCha8Rng, len: usize, bound: i64) -> GroupWord {
    let basis = g.basis();
    let mut w = GroupWord::new();
    for _ in 0..len {
        let p = rng.gen_range(0..g.dimension());
        let x = rng.gen_range(-bound..=bound);
        w.push(basis.get(p).index, RingElement::from(x));
    }
    w
}

pub fn ints(v: &[i64]) -> Vec<RingElement> {
    v.iter().map(|&x| RingElement::from(x)).collect()
}
