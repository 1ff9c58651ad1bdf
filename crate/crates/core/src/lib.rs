//! Deciding whether a finite left regular band embeds into a free left
//! regular band, and building the embedding when it does.
//!
//! The pipeline, in order:
//!
//! 1. [`band::Band`] validates a multiplication table.
//! 2. [`tree::AncestorTree`] checks that the Hasse diagram of `x ≤ y ⇔ xy = y`
//!    is a tree (right hereditary bands) and records the ancestor map `α`.
//! 3. [`support::SupportQuotient`] and [`semilattice::nu`] embed the support
//!    semilattice into a free semilattice; [`ssets::SSets`] computes the sets
//!    `S_c`.
//! 4. [`local_order`] searches for a local linear order.
//! 5. [`embed`] builds the homomorphism `h`, refines it by Modification rounds
//!    until it is injective, and verifies the result.
//!
//! [`qvar`] checks the weaker property of embedding into a direct power of the
//! three-element band `H`.

pub mod analysis;
pub mod band;
pub mod census;
pub mod closure;
pub mod document;
pub mod embed;
pub mod enumerate;
pub mod fixtures;
pub mod fuzz;
pub mod iso;
pub mod local_order;
pub mod qvar;
pub mod random;
pub mod semilattice;
pub mod ssets;
pub mod support;
pub mod tree;
pub mod words;

pub use analysis::Analysis;
pub use band::{Band, BandError, Element};
pub use words::{FreeWord, Letter};
