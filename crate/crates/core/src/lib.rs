//! Free Penon structures at low dimension.
//!
//! The crate builds the free strict n-category on a finite globular set
//! ([`pasting`]), the free magma-with-contraction over it ([`penon`]) in both
//! the reflexive and the non-reflexive variant, and the braid groups behind
//! the free braided strict monoidal category on one object ([`braid`]).
//! [`verify`] strings these together into named scenarios with JSON reports,
//! and [`oracle`] holds the brute-force rewrite closures used to cross-check
//! the two decision procedures.

pub mod braid;
pub mod glob;
pub mod oracle;
pub mod pasting;
pub mod penon;
pub mod verify;

pub use glob::{CellRef, Mode, Presentation};
pub use pasting::{Diagram, FreeCategory};
pub use penon::{FreePenonStructure, PenonTerm};
