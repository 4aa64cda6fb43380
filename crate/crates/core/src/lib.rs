//! Codes in Kneser graphs: exact metric, distance partitions, symmetry
//! certification against permutation groups, and constructors for the
//! standard neighbour-transitive families.

pub mod code;
pub mod error;
pub mod families;
pub mod io;
pub mod metric;
pub mod perm;
pub mod subset;
pub mod suites;

pub use code::Code;
pub use error::{Error, Result};
pub use metric::KneserSpace;
pub use perm::{BlockSystem, PermGroup, Permutation};
pub use subset::{GroundSet, KSubset};
