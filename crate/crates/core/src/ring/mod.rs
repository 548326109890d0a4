//! Exact binomial-domain arithmetic.
//!
//! Three rings are supported: `Z`, `Q` and `Q[vars]`. All of them are
//! binomial domains, so `binom(a, k)` is defined for every element. Values
//! of all three rings share the [`RingElement`] type so that the group
//! engine can run unchanged over integer, rational or symbolic coordinates.

mod binomial;
mod element;
mod poly;

pub use binomial::{binom, binom_table, eval_binomial_form, factorial, BinomialForm};
pub use element::{Ring, RingElement};
pub use poly::{Monomial, Poly, Vars};

use alloc::vec::Vec;

use crate::{Error, Result};

/// Evaluates `poly` at `point` and returns the value in `ring`.
///
/// The computation runs over `Q` (or `Q[vars]`) and the result is brought
/// back into `ring`; over the integers the value must be integral.
pub fn eval_poly(poly: &Poly, point: &[RingElement], ring: &Ring) -> Result<RingElement> {
    if point.len() != poly.nvars() {
        return Err(Error::ArityMismatch {
            expected: poly.nvars(),
            found: point.len(),
        });
    }
    if point.iter().any(|p| !ring.contains(p)) {
        return Err(Error::MixedRings);
    }
    let work_ring = match ring {
        Ring::Integers => Ring::Rationals,
        r => r.clone(),
    };
    let promoted: Vec<RingElement> = point.iter().map(RingElement::promote).collect();
    // powers[i][e] = point_i^e
    let powers: Vec<Vec<RingElement>> = promoted
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let top = poly.degree_in(i) as usize;
            let mut row = Vec::with_capacity(top + 1);
            row.push(work_ring.one());
            for e in 1..=top {
                let next = &row[e - 1] * p;
                row.push(next);
            }
            row
        })
        .collect();
    let mut acc = work_ring.zero();
    for (m, c) in poly.terms() {
        let mut term = work_ring.from_rational(c.clone())?;
        for (i, &e) in m.iter().enumerate() {
            if e > 0 {
                term = &term * &powers[i][e as usize];
            }
        }
        acc += &term;
    }
    acc.demote(ring)
}
