//! pairframe: exact jet calculus and canonical frames for pairs (X, V) of a
//! line field and a rank-m distribution, as defined by systems of ODEs
//! `x^(k+1) = F(t, x, x', ..., x^(k))` or given directly by coordinate frames.
//!
//! The toolkit checks the bracket-growth regularity of a pair, tests the
//! pointwise necessary conditions for a pair to come from an equation,
//! computes normal frames and the generalized linearization invariants
//! `K_0..K_{k-1}`, performs the projective rescaling that kills the trace of
//! the top invariant, and builds the canonical frame and structure constants
//! on the associated principal bundle, comparing them against the flat model
//! Lie algebra. All computation happens on truncated Taylor expansions (jets)
//! at a chosen base point, exactly over rationals by default.

pub mod bundle;
pub mod cli;
pub mod error;
pub mod expr;
pub mod field;
pub mod jet;
pub mod jet_linalg;
pub mod normalize;
pub mod pair;
pub mod problem;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use jet::{Chart, Jet, JetOrder, MultiIndex};
pub use scalar::{Scalar, ScalarMode};
