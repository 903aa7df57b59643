//! Twisted conjugacy and equalizers for pairs of endomorphisms of finitely
//! generated nilpotent groups given by consistent polycyclic presentations.
//!
//! The crate is `no_std` and needs only `alloc`. The modules build on each
//! other bottom-up: [`zlinalg`] (exact integer lattices), [`pcgroup`]
//! (collection, subgroups, lower central series), [`morphism`], [`equalizer`],
//! [`twisted`], and the brute-force [`oracle`] for finite groups.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod equalizer;
pub mod error;
pub mod morphism;
pub mod oracle;
pub mod pcgroup;
pub mod twisted;
pub mod zlinalg;

pub use error::{Error, PresentationError};
pub use morphism::GroupMap;
pub use pcgroup::{Element, PcPresentation, PresentationBuilder, RefinedGroup, Subgroup, Word};
pub use twisted::Decision;

/// Default bound on the nilpotency class accepted by the series computation.
pub const DEFAULT_MAX_CLASS: usize = 20;
