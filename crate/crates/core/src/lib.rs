//! Exact arithmetic for integral points on complements of plane curves over
//! Q: heights, pencil weights, curve families, explicit constructions,
//! orbits of plane endomorphisms and bounded point searches.

pub mod arith;
pub mod constructions;
pub mod error;
pub mod families;
pub mod forms;
pub mod heights;
pub mod orbits;
pub mod pencils;
pub mod places;
pub mod point;
pub mod search;
pub mod serde_rat;

pub use arith::Rat;
pub use error::{Error, Result};
pub use forms::{ExtMult, FactoredDivisor, Form};
pub use orbits::Endo;
pub use pencils::{Param, Pencil};
pub use places::PlaceSet;
pub use point::{reduce_point, ProjPoint};
