// SPDX-License-Identifier: Apache-2.0

//! Exact complexity measures of Boolean functions, the shift and linear
//! transforms between them, and the communication-matrix bounds they imply.
//!
//! Inputs are truth tables of arity at most [`MAX_ARITY`]; `x1` is the least
//! significant bit of the table index.

pub mod affine;
pub mod bits;
pub mod checks;
pub mod commlb;
mod error;
pub mod families;
pub mod measures;
pub mod par;
pub mod spectrum;
pub mod transforms;
pub mod tt;

pub use affine::AffineMap;
pub use error::{Error, Result};
pub use measures::Limits;
pub use spectrum::{Basis, SpectrumRep};
pub use tt::{Point, Restriction, TruthTable, MAX_ARITY};
