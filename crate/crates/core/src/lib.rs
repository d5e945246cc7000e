pub mod abelian;
pub mod admissible;
pub mod algebra;
pub mod caps;
pub mod complexes;
pub mod cones;
pub mod degen;
pub mod error;
pub mod group;
pub mod linalg;
pub mod repthy;
pub mod root_datum;
pub mod vinberg;

pub use abelian::AbelianGroup;
pub use admissible::{AdmissibleCone, Triple};
pub use algebra::{CharElem, CharRing, RingContext};
pub use caps::Caps;
pub use complexes::{Cocycle, WComplex};
pub use cones::Cone;
pub use degen::{HeightFunction, HeightSystem};
pub use error::{Error, Result};
pub use group::Group;
pub use repthy::{Reps, WeightMap};
pub use root_datum::{IMatrix, PositiveRoot, RootDatum, Weight, WeylGroup};
pub use vinberg::VinbergFiber;
