//! Knuth's binary presemifields, the projective planes they coordinatise,
//! translation hyperovals in those planes, and the symmetric designs,
//! difference sets and bent functions that hyperovals give rise to.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod designs;
pub mod error;
pub mod gf2n;
pub mod ovals;
pub mod plane;
pub mod search;

pub use algebra::{BitMatrix, Derivation, LinearizedPoly, PlaneId, Presemifield};
pub use error::{Error, Result};
pub use gf2n::{Fe, FieldContext};
pub use plane::{Collineation, Plane, PlaneLine, PlanePoint};
