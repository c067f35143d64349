//! Quantum cyclic stabiliser codes over the binary alphabet.
//!
//! A stabiliser code is cyclic exactly when its totally isotropic
//! subspace S ⊆ F₂ⁿ × F₂ⁿ and the centraliser of S are closed under the
//! simultaneous cyclic shift of both halves. Such subspaces are generated
//! by polynomial triples (g, f, h) in F₂[X]/(Xⁿ−1), which this crate
//! manipulates directly:
//!
//! - [`poly`] — exact F₂/F₄ polynomial arithmetic and the cyclotomic-ring
//!   operations (`ring_mul`, `ring_reverse`, CRT).
//! - [`extfield`] — binary extension fields for root finding and
//!   syndrome arithmetic, with deterministic moduli and generators.
//! - [`cyclotomic`] — coset partitions, factorisation of Xⁿ−1, σ-pairs
//!   of F₄ factors, and BCH distance with an auditable witness.
//! - [`symplectic`] — inner products, centralisers, isotropy, CSS-form
//!   detection and generating-triple extraction (generic over p ∈ {2,3,5}
//!   for property tests).
//! - [`cyclic_code`] — triple validation, spans, centralisers and exact
//!   minimum distance by exhaustive centraliser enumeration.
//! - [`fourm`] — the 4ᵐ+1 construction: σ-transversals, the CRT isotropy
//!   element, and parameter reporting.
//! - [`decoder`] — syndrome-oracle decoding up to the BCH limit via
//!   Berlekamp–Massey, Chien search and Forney's formula over F₄.
//! - [`weyl`] — dense-matrix checks on real Hilbert-space projectors:
//!   cyclicity, Knill–Laflamme distance, pseudo-stabiliser search.
//! - [`descriptor`] — the `qcc/1` code-descriptor file format.

pub mod cyclic_code;
pub mod cyclotomic;
pub mod decoder;
pub mod descriptor;
pub mod extfield;
pub mod field;
pub mod fourm;
pub mod poly;
pub mod symplectic;
pub mod weyl;

pub use cyclic_code::{CyclicStabiliserCode, GeneratingTriple};
pub use descriptor::CodeDescriptor;
pub use field::F4;
pub use fourm::FourMCode;
pub use poly::{BinaryPoly, QuartPoly};
