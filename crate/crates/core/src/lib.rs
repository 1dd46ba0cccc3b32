//! Exact combinatorics of rectangular two-sided cells in the affine
//! symmetric group.

pub mod ambc;
pub mod budget;
pub mod cells;
pub mod components;
pub mod error;
pub mod figures;
pub mod knuth;
pub mod n2;
pub mod perm;
pub mod tabloid;
pub mod verify;

pub use ambc::AmbcTriple;
pub use components::{ComponentLabel, PairRep};
pub use error::{Error, Result};
pub use perm::{AffinePermutation, RectShape};
pub use tabloid::{Partition, Tabloid};
