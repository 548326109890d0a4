//! Group arithmetic in `N_{r,c}(R)` in Hall coordinates.

mod centralizer;
mod collect;
mod element;
mod engine;
mod filtration;
mod petresco;

pub use centralizer::CentralizerReport;
pub use collect::Collector;
pub use element::{GroupElement, GroupWord, Letter};
pub use engine::{MagnusTables, NilpotentGroup};

/// Sign and ordering conventions used throughout the crate.
pub mod conventions {
    /// Group commutator.
    pub const COMMUTATOR: &str = "[x,y] = x^-1 y^-1 x y";
    /// Lie bracket in the associative algebra.
    pub const LIE_BRACKET: &str = "[u,v] = uv - vu";
    /// Image of the generator `u_1i` in the Magnus algebra.
    pub const MAGNUS: &str = "u_1i -> 1 + x_i";
    /// Rule selecting basic commutators.
    pub const HALL_RULE: &str = "[u,v] is basic iff u > v and, when u = [a,b], b <= v";
    /// Standard forms multiply basic powers left to right in sequence order.
    pub const STANDARD_FORM: &str = "u_11^a_11 u_12^a_12 ... u_cn^a_cn";
    /// Weight-2 coordinate of `[u_11, u_12]` in `N_{2,2}`, whose only
    /// weight-2 basic commutator is `u_21 = [u_12, u_11]`.
    pub const GENERATOR_COMMUTATOR_SIGN: i64 = -1;
}
