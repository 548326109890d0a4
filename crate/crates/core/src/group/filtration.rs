use alloc::vec;
use alloc::vec::Vec;

use super::{GroupElement, NilpotentGroup};
use crate::Result;

impl NilpotentGroup {
    /// Least `i` with a nonzero weight-`i` coordinate, or `c + 1` for the
    /// identity. `g ∈ Γ_i` exactly when `gamma_weight(g) >= i`.
    pub fn gamma_weight(&self, g: &GroupElement) -> usize {
        g.coords
            .iter()
            .position(|x| !x.is_zero())
            .map(|p| self.basis().weight_of(p))
            .unwrap_or(self.class() + 1)
    }

    /// Coordinates of weight `i` only.
    pub fn weight_block<'a>(&self, g: &'a GroupElement, i: usize) -> &'a [crate::ring::RingElement] {
        &g.coords[self.basis().weight_range(i)]
    }

    /// All left-normed commutators `[..[y_1, y_2], .., y_k]` with every
    /// `y_t` drawn from `generators`, including trivial ones such as
    /// `[y, y]`. Weight one returns the generators themselves.
    pub fn simple_commutators(&self, k: usize, generators: &[GroupElement]) -> Result<Vec<GroupElement>> {
        for g in generators {
            self.check(g)?;
        }
        if k == 0 {
            return Ok(Vec::new());
        }
        let mut layer: Vec<GroupElement> = generators.to_vec();
        for _ in 1..k {
            let mut next = Vec::with_capacity(layer.len() * generators.len());
            for h in &layer {
                for y in generators {
                    next.push(self.commutator(h, y)?);
                }
            }
            layer = next;
        }
        Ok(layer)
    }

    /// Left-normed commutator `[..[y_1, y_2], .., y_k]` of a given sequence.
    pub fn left_normed(&self, items: &[GroupElement]) -> Result<GroupElement> {
        let mut iter = items.iter();
        let mut acc = match iter.next() {
            Some(g) => {
                self.check(g)?;
                g.clone()
            }
            None => return Ok(self.identity()),
        };
        for y in iter {
            acc = self.commutator(&acc, y)?;
        }
        Ok(acc)
    }

    /// The generators `u_11, …, u_1r` as a vector.
    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|g| self.generator(g)).collect()
    }

    /// Zero in every weight except `i`, where the given block is placed.
    pub fn from_weight_block(&self, i: usize, block: Vec<crate::ring::RingElement>) -> Result<GroupElement> {
        let mut coords = vec![self.ring().zero(); self.dimension()];
        let range = self.basis().weight_range(i);
        if block.len() != range.len() {
            return Err(crate::Error::ShapeMismatch(alloc::format!(
                "weight {} block has {} entries, expected {}",
                i,
                block.len(),
                range.len()
            )));
        }
        for (p, x) in range.zip(block) {
            coords[p] = x;
        }
        self.element(coords)
    }
}
