//! Limit ratios of nonunimodular roots for sequences of monic reciprocal
//! integer polynomials.
//!
//! The library is layered:
//!
//! * [`family`] defines the polynomial sequences and expands them for a given `n`.
//! * [`trig`] provides the cosine-series algebra that turns the root-counting
//!   problem on the unit circle into a fixed pair of curves `(f2, E)`.
//! * [`solver`] isolates the crossings `|f2| = |E|` and integrates over the
//!   resulting intervals, giving the limit ratio and the limit Mahler measure.
//! * [`oracle`] counts roots of concrete members of a sequence as ground truth.
//! * [`families`] builds the named families (P, Q, R, S, H, T).

pub mod error;
pub mod families;
pub mod family;
pub mod oracle;
pub mod solver;
pub mod trig;

pub use error::{Error, Result};
pub use family::{FamilySpec, IntPolynomial, RawSpec};
