//! Reproducible sampling. The generator is ChaCha8 (`rand_chacha`), seeded
//! from the 64-bit `--seed` through `SeedableRng::seed_from_u64`.

use hallforge_core::group::{GroupElement, GroupWord, NilpotentGroup};
use hallforge_core::ring::{Ring, RingElement};
use hallforge_core::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// An independent stream per `label`, so suites do not depend on the
    /// order in which they run.
    pub fn for_label(seed: u64, label: &str) -> Self {
        let tag = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
        });
        Sampler::new(seed ^ tag)
    }

    pub fn int(&mut self, bound: i64) -> i64 {
        self.rng.gen_range(-bound..=bound)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// An integer in `[-bound, bound]`, or over Q a fraction with
    /// numerator in that range and denominator in `1..=4`.
    pub fn scalar(&mut self, ring: &Ring, bound: i64) -> RingElement {
        let n = self.int(bound);
        match ring {
            Ring::Integers => RingElement::from(n),
            _ => {
                let d = self.rng.gen_range(1..=4i64);
                ring.from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
                    .expect("Q and Q[vars] contain the rationals")
            }
        }
    }

    pub fn element(&mut self, g: &NilpotentGroup, bound: i64) -> GroupElement {
        let coords = (0..g.dimension()).map(|_| self.scalar(g.ring(), bound)).collect();
        g.element(coords).expect("coordinates in the group ring")
    }

    pub fn word(&mut self, g: &NilpotentGroup, len: usize, bound: i64) -> GroupWord {
        let mut w = GroupWord::new();
        for _ in 0..len {
            let p = self.index(g.dimension());
            w.push(g.basis().get(p).index, self.scalar(g.ring(), bound));
        }
        w
    }

    pub fn length(&mut self, max: usize) -> usize {
        self.rng.gen_range(0..=max)
    }
}
