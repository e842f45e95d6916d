//! Recognition of two-dimensional languages with finite interactive systems.
//!
//! * [`grid`]: rectangular words, composition, bordering and windows.
//! * [`fis`]: finite interactive systems, recognition and bounded enumeration.
//! * [`pcp`]: Post correspondence instances, a bounded solver, and the
//!   compilers that turn an instance into a FIS whose language is nonempty
//!   exactly when the instance is solvable.
//! * [`tiles`]: local languages, tile systems, and conversions in both
//!   directions between tile systems and FISs.
//! * [`analysis`]: bounded emptiness, accessibility and finiteness searches,
//!   and a structural checker for runs of the reduction systems.

pub mod analysis;
pub mod fis;
pub mod grid;
pub mod pcp;
pub mod text;
pub mod tiles;

pub use fis::{ClassName, Fis, Scenario, StateName, Transition};
pub use grid::{Grid, Letter};
pub use text::ParseError;
