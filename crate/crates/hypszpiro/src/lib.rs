//! Braid-word monodromy for hyperelliptic Lefschetz fibrations.
//!
//! The crate computes the integral symplectic representation of braid words
//! through transvections along a fixed hyperelliptic chain, lifts words to the
//! universal cover of `Sp(2g, R)` as tracked paths with a winding number, and
//! evaluates displacement angles. On top of that sits a verifier for fibration
//! monodromy data: it checks the bound `N <= (4g+2) D` on vanishing cycles
//! versus singular fibers together with the winding identity that certifies
//! the monodromy word.
//!
//! Modules:
//! - [`artin`]: graph-defined Artin systems, braid words, the degree
//!   character, and the tree coboundary solver.
//! - [`symprep`]: exact-integer symplectic matrices and the transvection
//!   representation of the braid group.
//! - [`cover`]: path lifts to the universal cover, polar phase tracking,
//!   elliptic log angles, and the non-positive cone.
//! - [`szpiro`]: fibration data model, verifier, example generation, and
//!   report types backing the CLI.

pub mod artin;
pub mod cover;
pub mod symprep;
pub mod szpiro;

pub use artin::{ArtinGraph, BraidWord, Cochain0, Cochain1, Letter, Sign};
pub use cover::{LiftedElement, NilpotentLog, PathSegment, PolarContext};
pub use symprep::{ChainBasis, LatticeVector, SympMatrix};
pub use szpiro::{FibrationSpec, TwistSpec, VerificationReport, Verdict};
