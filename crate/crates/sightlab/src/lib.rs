//! Computational toolkit for the lattice of basic local operators.
//!
//! The crate is layered bottom-up:
//!
//! * [`nat`]: arbitrary-precision naturals with the Cantor pairing and
//!   sequence coding everything else speaks through.
//! * [`pca`]: a partial combinatory algebra over ℕ with a budgeted
//!   call-by-value evaluator and a bracket-abstraction toolkit for
//!   writing object-level programs.
//! * [`sets`] and [`family`]: finite/cofinite subsets of ℕ and the
//!   families of sets that present local operators.
//! * [`sight`]: well-founded interaction trees, the predicates that
//!   classify them, and the program transformations between their
//!   dedicated and supporting forms.
//! * [`lattice`]: decision and semi-decision procedures for the
//!   pointwise preorder on operator presentations, producing
//!   independently re-checkable certificates.
//! * [`arith`]: first-order arithmetic, a bounded classical evaluator,
//!   and the realizability interpretation parameterized by a family.
//! * [`verdict`]: the three-valued outcome type shared by every
//!   checker, with explicit resource accounting.
//!
//! Everything bounded is explicit about it: procedures return
//! `Unknown` with the exhausted resource rather than guessing, and
//! positive answers come with certificates that can be re-verified
//! without trusting the code that found them.

pub mod family;
pub mod lattice;
pub mod nat;
pub mod pca;
pub mod sets;
pub mod sight;
pub mod verdict;
