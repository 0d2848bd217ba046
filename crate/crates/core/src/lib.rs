//! Exact analysis of polar-code synthetic channels over the binary erasure
//! channel.
//!
//! Every synthetic channel `W^u` of a length-`2^m` polar code over `BEC(p)`
//! has a Bhattacharyya parameter `Z(W^u)(p)` that is a polynomial in `p`
//! with integer coefficients. This crate synthesizes those polynomials
//! exactly, compares channels under the weak, standard, dominance and
//! pointwise orders, and ranks channels by their average reliability
//! `Avr(u) = ∫₀¹ Z(W^u)(p) dp`.
//!
//! The main entry points are:
//!
//! - [`Monomial`]: a channel label / monomial `x^u` on `m` variables.
//! - [`synthesis::synth_all`]: the full [`ChannelTable`] for a given `m`.
//! - [`orders`]: the combinatorial orders and the pointwise order.
//! - [`reliability`]: two-terminal network view, closed-form averages.
//! - [`construction`]: ranking and information-set construction.
//! - [`verify`]: named verification suites used by the CLI.

pub mod construction;
pub mod error;
pub mod monomials;
pub mod orders;
pub mod polynomials;
pub mod reference;
pub mod reliability;
pub mod synthesis;
pub mod verify;

pub use construction::{Criterion, RankedChannels};
pub use error::{Error, Result};
pub use monomials::Monomial;
pub use orders::{Comparison, OrderVerdict, PosetRelation, Relation};
pub use polynomials::{IntPoly, PathCounts, Rational, SignVerdict};
pub use synthesis::ChannelTable;
