//! Exact-integer chip-firing (the Dollar Game) on weighted graphs.
//!
//! A divisor assigns chips (possibly debt) to the vertices of a graph; a
//! lending move at `v` sends chips along each incident edge, a borrowing
//! move pulls them back. The Dollar Game asks whether some sequence of
//! moves clears all debt. On a *weighted* graph a vertex of weight `w(v)`
//! sends `w(v)/w(e)` chips along an edge of weight `w(e)`, which makes the
//! game asymmetric: the machinery of unweighted chip-firing (all-ones
//! Laplacian kernel, unique q-reduced representatives) has to be rebuilt
//! around the *charges* `c(v) = lcm of weights / w(v)`.
//!
//! This crate provides that machinery with exact integer arithmetic:
//!
//! - [`graph`]: the weighted-graph model, weighted valency, charges, and
//!   the weighted Laplacian;
//! - [`solvers`]: winnability by greedy borrowing and by the burning
//!   algorithm, q-reduction, q-class enumeration, integer linear
//!   equivalence, and the Jacobian group;
//! - [`quotient`]: group actions on graphs and the weighted quotients
//!   whose vertex and edge weights are stabilizer orders;
//! - [`words`]: burn-order words, the divisor a word determines, and the
//!   census of maximally unwinnable divisors;
//! - [`fixtures`]: the small example graphs used throughout the guide.
//!
//! ```
//! use chipfire::{fixtures, solvers, Divisor};
//!
//! let g = fixtures::weighted_star();
//! let d = Divisor::new(vec![1, 0, 2, -1]);
//! assert!(solvers::is_winnable(&g, &d).unwrap().is_winnable());
//! ```

#![forbid(unsafe_code)]

pub mod divisor;
pub mod fixtures;
pub mod graph;
mod intsolve;
pub mod io;
pub mod quotient;
pub mod solvers;
pub mod words;

pub use divisor::{Divisor, FiringScript};
pub use graph::{BuildError, GraphSpec, Laplacian, WeightedGraph};
