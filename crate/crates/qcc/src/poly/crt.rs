//! Chinese remaindering for polynomials over F₂ and F₄.
//!
//! Combination is incremental via extended Euclid per modulus pair; no
//! precomputed tables. A non-invertible step surfaces as
//! [`PolyError::NonCoprimeModuli`].

use super::binary::{BinaryPoly, PolyError};
use super::quart::QuartPoly;

/// Unique polynomial of degree < Σ deg(mᵢ) with the given residues.
pub fn crt_combine_f4(residues: &[(QuartPoly, QuartPoly)]) -> Result<QuartPoly, PolyError> {
    let mut acc = QuartPoly::zero();
    let mut modulus = QuartPoly::one();
    for (r, m) in residues {
        // solve acc + modulus·u ≡ r (mod m)
        let inv = modulus
            .rem(m)?
            .inv_mod(m)
            .map_err(|_| PolyError::NonCoprimeModuli)?;
        let diff = r.add(&acc).rem(m)?;
        let u = diff.mul(&inv).rem(m)?;
        acc = acc.add(&modulus.mul(&u));
        modulus = modulus.mul(m);
    }
    Ok(acc)
}

pub fn crt_combine_f2(residues: &[(BinaryPoly, BinaryPoly)]) -> Result<BinaryPoly, PolyError> {
    let lifted: Vec<(QuartPoly, QuartPoly)> = residues
        .iter()
        .map(|(r, m)| (QuartPoly::from_f2(r.clone()), QuartPoly::from_f2(m.clone())))
        .collect();
    let combined = crt_combine_f4(&lifted)?;
    debug_assert!(combined.is_f2());
    Ok(combined.split().0)
}
