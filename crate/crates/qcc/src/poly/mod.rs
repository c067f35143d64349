//! Exact polynomial arithmetic over F₂ and F₄, plus the cyclotomic-ring
//! operations modulo `Xⁿ−1` that the code constructions are built on.
//!
//! All operations are pure functions on immutable values. Polynomials
//! serialize as lowercase hex of the little-endian coefficient bits,
//! prefixed `f2:` (or `f4:<part0>:<part1>` for F₄); see the descriptor
//! module for the file format that uses them.

mod binary;
mod crt;
mod quart;

pub use binary::{BinaryPoly, PolyError};
pub use crt::{crt_combine_f2, crt_combine_f4};
pub use quart::QuartPoly;
