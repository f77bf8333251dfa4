#![no_std]
//! Mutation-indexed presentations of the simply-laced Artin braid groups.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function over immutable values; the `bqm` crate adds IO, parallel sweeps,
//! a CLI and an HTTP service on top.

extern crate alloc;

pub mod class;
pub mod dynkin;
pub mod garside;
pub mod ginzburg;
pub mod mutation_iso;
pub mod presentation;
pub mod qp;
pub mod quiver;
pub mod surface;
pub mod weyl;
pub mod word;

pub use class::{mutation_class, ClassError, ClassMember, ClassOptions, MutationClass};
pub use dynkin::{DynkinType, Family, TypeError};
pub use garside::{GarsideNF, GarsideSolver};
pub use presentation::{Presentation, Relator, RelatorKind};
pub use quiver::{ChordlessCycle, ExchangeMatrix, Quiver, QuiverError, Vertex};
pub use weyl::{WeylElement, WeylGroup};
pub use word::{GroupHom, Word, WordError};
