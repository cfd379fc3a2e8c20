//! Nilpotent-commutativity tools for finite groups: group enumeration,
//! symplectic sequences, presentations of the nil-q colimit groups with a
//! coset enumerator, and bar-complex homology of commutative classifying spaces.

pub mod bqg;
pub mod colimit;
pub mod constructions;
pub mod error;
pub mod group;
pub mod perm;
pub mod symplectic;

pub use constructions::{build, GroupSpec};
pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup, GroupOps};
