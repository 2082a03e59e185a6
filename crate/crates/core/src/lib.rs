//! Compositions of `n` with parts 1 and 2, counted by the number of water
//! cells their bargraphs hold.
//!
//! - [`compositions`]: enumeration, cut/join conjugation, the water-cell statistic
//! - [`watertable`]: the triangle `w(n,k)` by enumeration, recurrences or series
//! - [`genfunc`]: exact rational generating functions and Riordan arrays
//! - [`bijections`]: executable, invertible versions of the counting bijections

pub mod bijections;
pub mod compositions;
pub mod fixtures;
pub mod genfunc;
pub mod watertable;

pub use compositions::{Composition, CutJoinSequence, FamilyKind};
pub use genfunc::{IntPolynomial, RationalGF, RiordanArray};
pub use watertable::{Method, WaterTable};
