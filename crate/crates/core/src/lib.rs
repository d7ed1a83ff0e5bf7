//! Finite-group invariants of oriented links, colored tangles and
//! surgery-presented 3-manifolds, with machine checks for the algebraic
//! identities the constructions rest on.
//!
//! The layers, bottom up:
//!
//! - [`group`]: finite groups as multiplication tables, conjugacy data,
//!   and a catalog of small groups used as separating families.
//! - [`dset`]: the class algebra, the parameterized tuple sets behind its
//!   structure constants, the modular identity suite, and the braid moves
//!   on tuples.
//! - [`character`]: character tables as exact-rational inputs and the
//!   identities linking them to the class algebra.
//! - [`rmatrix`]: exact tensor maps, partial traces, and validators for the
//!   several flavors of R-matrix data.
//! - [`braid`] / [`invariants`]: braid words, the refined braid action, and
//!   the scalar link invariants computed as closure traces.
//! - [`tangle`]: sliced colored tangle diagrams and the (framed) functor
//!   evaluations.
//! - [`presentations`]: link-group style presentations from braids and
//!   diagrams, homomorphism counting, and hom-count profiles.
//! - [`mfd`]: the surgery invariant and Kirby moves.

pub mod braid;
pub mod character;
pub mod dset;
pub mod error;
pub mod fpgroup;
pub mod group;
pub mod invariants;
pub mod mfd;
pub mod presentations;
pub mod rmatrix;
pub mod tangle;
pub mod verify;

pub use error::{Error, Result};
