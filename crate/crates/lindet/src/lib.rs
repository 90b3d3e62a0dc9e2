//! Exact verification of determinant and permanent identities on weighted
//! digraphs.
//!
//! The library computes with arbitrary-precision rationals or symbolic
//! polynomial weights (never floats) and checks, by independent routes:
//!
//! * closed-walk power sums against signed linear-subdigraph sums
//!   (graphical Newton identities), including an explicit sign-reversing
//!   involution certificate on walk/subdigraph pairs;
//! * path-matrix determinants against vertex-disjoint path systems and
//!   permanents against all path systems;
//! * Cramer's rule, both numerically and as a polynomial identity coming
//!   from a three-layer digraph;
//! * alternating determinant and permanent sums over sums of matrix
//!   subsets, with an inclusion-exclusion decomposition over a layered
//!   "boxes" digraph.
//!
//! Every check is exact: a verdict of PASS means the identity holds in the
//! ring, not up to tolerance.

pub mod caps;
pub mod cramer;
pub mod error;
pub mod graph;
pub mod involution;
pub mod io;
pub mod lgv;
pub mod report;
pub mod ring;
pub mod sumident;
pub mod walks;

pub use error::{Error, Result};
pub use graph::{Matrix, WeightedDigraph};
pub use ring::{Literal, MPoly, Mode, Monomial, Rational, Weight};
