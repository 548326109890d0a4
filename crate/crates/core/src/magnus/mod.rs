//! The truncated free associative algebra and the Hall basis.
//!
//! `N_{r,c}(R)` embeds in the group of units of `R<x_1, …, x_r>` modulo
//! words of length `> c` by sending the `i`-th generator to `1 + x_i`.
//! Powers with exponents in `R` are binomial series, which is where the
//! binomial-domain hypothesis enters.

mod hall;
mod series;

pub use hall::{hall_basis, lie_element_of, BasicCommutator, BracketTree, Construction, HallBasis, HallIndex};
pub use series::TruncatedSeries;
pub(crate) use series::WordLayout;
