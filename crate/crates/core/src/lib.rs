//! Exact arithmetic for free nilpotent groups `N_{r,c}(R)` over binomial domains.
//!
//! The crate is `no_std` and only needs `alloc`. It provides
//!
//! * [`ring`]: integers, rationals and sparse polynomials over the rationals
//!   behind one element type, with the binomial operator `binom(a, k)`;
//! * [`magnus`]: the degree-truncated free associative algebra and the Hall
//!   basis of the free Lie algebra;
//! * [`group`]: Hall-coordinate group arithmetic, collection, Hall–Petresco
//!   words and centralizer checks;
//! * [`hall_poly`]: symbolic derivation of the canonical product and power
//!   polynomials and their integer binomial-basis form;
//! * [`deformation`]: symmetric 2-cocycles and the deformed groups built from
//!   them, coboundary splittings and the resulting isomorphisms;
//! * [`lazard`]: Lazard Lie rings, free nilpotent Lie rings and the
//!   endomorphism-pair linear system attached to their bracket.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod deformation;
mod error;
pub mod group;
pub mod hall_poly;
pub mod lazard;
pub mod linalg;
pub mod magnus;
pub mod ring;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Largest `r + c` accepted by the symbolic routines.
pub const DESK_SCALE: usize = 7;
