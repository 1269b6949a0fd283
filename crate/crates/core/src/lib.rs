//! Ideal sets and boundary functions for refinement limit algebras.
//!
//! Points of the Cantor space are eventually periodic digit sequences, so
//! order, orbit and gap questions are decided exactly. Boundary functions are
//! piecewise objects over order intervals with leaves drawn from
//! `{id, id-, const(c)}`.

pub mod boundary;
pub mod cocycle;
pub mod ideal;
pub mod irreducible;
pub mod literal;
pub mod oracle;
pub mod order;
pub mod restrict;
pub mod sample;
pub mod scenario;
#[cfg(test)]
mod testutil;

pub use boundary::{boundary_of, Leaf, Piece, PiecewiseBF};
pub use ideal::{close_finite_level, member, IdealExpr, MatrixUnitSet, Mode, Node, Verdict};
pub use order::{
    cylinder_bounds, gap_probe, orbit_test, order_compare, p_test, Bound, Digit, GapProbe,
    OrderError, OrderInterval, Point, RefinementSystem, Tail, Word,
};
pub use restrict::restrict_to_level;
