//! Hypercubic billiard words via the cut-and-project construction.
//!
//! A direction `theta = (1, theta_1, ..., theta_d)` determines a billiard in
//! the unit hypercube whose face-coding words can equivalently be generated by
//! a domain exchange on the window `W = pi([0,1]^{d+1})` in the internal
//! hyperplane. This crate builds those words, measures how evenly factors
//! occur in them (discrepancy `count(w, n) - n mu[w]` and balance verdicts),
//! and decides the bounded-remainder-set status of the length-2 factor cells
//! of the cubic case with exact symbolic arithmetic over `Q(t_1, t_2)`,
//! using the Grepstad-Lev criterion for convex polygons.
//!
//! Letters come with a certified discrepancy bound; the headline phenomenon
//! is that no longer factor enjoys one.

pub mod balance;
pub mod brs;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod language;
pub mod scalars;
pub mod selftest;

pub use geometry::{parse_direction, Direction, InternalPoint, ParsedDirection};
pub use scalars::{NumCtx, RatFn, DEFAULT_PRECISION};
