//! Earthquake deformations on the Teichmüller space of the once-punctured torus.
//!
//! Points are handled in trace coordinates (x, y, z) = (tr α, tr β, tr αβ) and
//! converted to triangle lengths, Fenchel-Nielsen coordinates, spherical and
//! simplex charts. Earthquakes about the framing curves have closed forms; about
//! any other simple closed curve they are obtained by a change of framing.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod charvar;
pub mod chgcoords;
pub mod coords;
pub mod error;
pub mod f2words;
pub mod families;
pub mod numeric;
pub mod quake;
pub mod rep;

pub use charvar::{CurveName, Sign, TracePoint};
pub use coords::FNPoint;
pub use error::{Error, Result};
pub use f2words::{Slope, TwistWord, Word};
pub use quake::TriangleLengths;
