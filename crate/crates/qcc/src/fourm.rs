//! The 4ᵐ+1 family of linear cyclic stabiliser codes.
//!
//! A code is fixed by a divisor g of Xⁿ−1 over F₂ (with X−1 | g) and a
//! σ-transversal h(X,η) of the remaining F₄ factors: exactly one of each
//! conjugate pair {r, σ(r)}. The underlying isotropic subspace is the
//! ideal generated by g·h in F₄[X]/(Xⁿ−1); isotropy is witnessed by the
//! Chinese-remainder element a(X) with a ≡ 0 mod g, a ≡ η mod unchosen
//! factors and a ≡ η' mod chosen ones, which lands in F₂[X] and satisfies
//! a² = a + 1 away from g.

use thiserror::Error;

use crate::cyclic_code::{CodeError, CyclicStabiliserCode, GeneratingTriple};
use crate::cyclotomic::{bch_distance, factor_f4, BchBound, CyclotomicError, F4Factors};
use crate::field::F4;
use crate::poly::{crt_combine_f4, BinaryPoly, PolyError, QuartPoly};
use crate::symplectic::{SympPair, SympSubspace};

#[derive(Debug, Error)]
pub enum FourMError {
    #[error("g must divide X^n-1 over F2")]
    GNotDivisible,
    #[error("the self-paired factor X-1 must divide g")]
    SelfPairedFactorOutsideG,
    #[error("h must pick exactly one factor from each remaining conjugate pair: {0}")]
    SigmaConditionViolated(String),
    #[error("m = {0} is out of range: construction is budgeted for 1 <= m <= 4 \
             (the splitting-field search grows exponentially beyond that)")]
    BadM(u32),
    #[error("exhaustive enumeration is budgeted for m <= 3; m = {0} has too many divisors")]
    EnumerationTooLarge(u32),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone)]
pub struct FourMCode {
    pub m: u32,
    pub n: usize,
    pub g: BinaryPoly,
    /// The chosen transversal h(X,η) over F₄.
    pub h: QuartPoly,
    /// Chinese-remainder element witnessing isotropy; σ-fixed, so in F₂[X].
    pub a: BinaryPoly,
    /// Ideal generator g̃ = g·h of the stabiliser subspace.
    pub gtilde: QuartPoly,
    /// Stabiliser dimension, equal to deg g.
    pub k: usize,
    /// BCH bound of h with the witness the decoder reuses.
    pub bch: BchBound,
    /// Correctable weight ⌊(d−1)/2⌋.
    pub t: usize,
    /// Coset leaders of the factors composing h.
    pub h_leaders: Vec<usize>,
}

pub fn code_length(m: u32) -> usize {
    4usize.pow(m) + 1
}

/// Build the code for a divisor g and a transversal given by the coset
/// leaders of the chosen F₄ factors.
pub fn construct(m: u32, g: &BinaryPoly, h_leaders: &[usize]) -> Result<FourMCode, FourMError> {
    if m == 0 || m > 4 {
        return Err(FourMError::BadM(m));
    }
    let n = code_length(m);
    let xn1 = BinaryPoly::xn_minus_one(n);
    if !g.divides(&xn1) {
        return Err(FourMError::GNotDivisible);
    }
    if !BinaryPoly::x_plus_one().divides(g) {
        return Err(FourMError::SelfPairedFactorOutsideG);
    }

    let f4s = factor_f4(n)?;
    let g_q = QuartPoly::from_f2(g.clone());

    // classify the F4 factors: inside g, or remaining
    let mut remaining = Vec::new();
    for (idx, factor) in f4s.factors.iter().enumerate() {
        if !factor.poly.divides(&g_q) {
            remaining.push(idx);
        }
    }
    // the remaining factors must form whole σ-pairs (X−1 | g guarantees
    // the only self-paired factor is out of the way)
    for &idx in &remaining {
        let conj = f4s.sigma_pairing[idx];
        if conj == idx || !remaining.contains(&conj) {
            return Err(FourMError::SigmaConditionViolated(format!(
                "factor with coset leader {} has no free conjugate partner",
                f4s.leader_of(idx)
            )));
        }
    }

    // resolve the chosen transversal
    let mut chosen = Vec::new();
    for &leader in h_leaders {
        let idx = f4s.index_of_leader(leader).ok_or_else(|| {
            FourMError::SigmaConditionViolated(format!("no factor has coset leader {leader}"))
        })?;
        if !remaining.contains(&idx) {
            return Err(FourMError::SigmaConditionViolated(format!(
                "factor with leader {leader} lies inside g"
            )));
        }
        chosen.push(idx);
    }
    chosen.sort_unstable();
    chosen.dedup();
    // exactly one of each remaining pair
    for &idx in &remaining {
        let conj = f4s.sigma_pairing[idx];
        let picked = chosen.contains(&idx) as u8 + chosen.contains(&conj) as u8;
        if picked != 1 {
            return Err(FourMError::SigmaConditionViolated(format!(
                "pair with leaders ({}, {}) must contribute exactly one factor, got {picked}",
                f4s.leader_of(idx),
                f4s.leader_of(conj)
            )));
        }
    }

    let h = chosen
        .iter()
        .fold(QuartPoly::one(), |acc, &i| acc.mul(&f4s.factors[i].poly));

    // g·h·σ(h) must reassemble Xⁿ−1
    let product = g_q.mul(&h).mul(&h.sigma());
    debug_assert_eq!(product, QuartPoly::xn_minus_one(n));

    let a = build_crt_element(&f4s, &g_q, &remaining, &chosen)?;

    // invariants of the construction
    verify_construction(n, g, &h, &a)?;

    let exponents: Vec<usize> = chosen
        .iter()
        .flat_map(|&i| f4s.factors[i].coset.iter().copied())
        .collect();
    let bch = bch_distance(&exponents, n)?;

    Ok(FourMCode {
        m,
        n,
        g: g.clone(),
        gtilde: g_q.mul(&h),
        a,
        k: g.degree().expect("g is nonzero"),
        bch,
        t: (bch.d - 1) / 2,
        h_leaders: chosen.iter().map(|&i| f4s.leader_of(i)).collect(),
        h,
    })
}

fn build_crt_element(
    f4s: &F4Factors,
    g_q: &QuartPoly,
    remaining: &[usize],
    chosen: &[usize],
) -> Result<BinaryPoly, FourMError> {
    let mut residues = Vec::new();
    if g_q.degree() != Some(0) {
        residues.push((QuartPoly::zero(), g_q.clone()));
    }
    for &idx in remaining {
        let value = if chosen.contains(&idx) { F4::ETA_PRIME } else { F4::ETA };
        let mut constant = QuartPoly::zero();
        constant.set_coeff(0, value);
        residues.push((constant, f4s.factors[idx].poly.clone()));
    }
    let a_q = crt_combine_f4(&residues)?;
    assert_eq!(a_q.sigma(), a_q, "CRT element must be fixed by conjugation");
    assert!(a_q.is_f2());
    Ok(a_q.split().0)
}

fn verify_construction(
    n: usize,
    g: &BinaryPoly,
    h: &QuartPoly,
    a: &BinaryPoly,
) -> Result<(), FourMError> {
    let xn1 = BinaryPoly::xn_minus_one(n);
    // a ≡ 0 mod g
    assert!(a.rem(g)?.is_zero() || g.degree() == Some(0));
    // a² ≡ a + 1 mod (Xⁿ−1)/g
    let (cofactor, r) = xn1.div_rem(g)?;
    assert!(r.is_zero());
    if cofactor.degree() != Some(0) {
        let lhs = a.mul(a).rem(&cofactor)?;
        let rhs = a.add(&BinaryPoly::one()).rem(&cofactor)?;
        assert_eq!(lhs, rhs, "a^2 = a + 1 away from g");
    }
    // the isotropy identity g(X)g(X⁻¹)a(X) = g(X)g(X⁻¹)a(X⁻¹)
    assert!(isotropy_equation_holds(n, g, a));
    let _ = h;
    Ok(())
}

/// Direct check of g(X)g(X⁻¹)a(X) ≡ g(X)g(X⁻¹)a(X⁻¹) mod Xⁿ−1.
pub fn isotropy_equation_holds(n: usize, g: &BinaryPoly, a: &BinaryPoly) -> bool {
    let xn1 = BinaryPoly::xn_minus_one(n);
    let g_red = g.rem(&xn1).unwrap();
    let gg = g_red.ring_mul(&g_red.ring_reverse(n), n);
    let a_red = a.rem(&xn1).unwrap();
    gg.ring_mul(&a_red, n) == gg.ring_mul(&a_red.ring_reverse(n), n)
}

impl FourMCode {
    /// Re-verify the residue conditions, σ-fixedness and the isotropy
    /// equation from the stored data.
    pub fn verify_isotropy_equation(&self) -> bool {
        let Ok(f4s) = factor_f4(self.n) else { return false };
        let a_q = QuartPoly::from_f2(self.a.clone());
        for (idx, factor) in f4s.factors.iter().enumerate() {
            let Ok(residue) = a_q.rem(&factor.poly) else { return false };
            let expected = if factor.poly.divides(&QuartPoly::from_f2(self.g.clone())) {
                QuartPoly::zero()
            } else if self.h_leaders.contains(&f4s.leader_of(idx)) {
                let mut c = QuartPoly::zero();
                c.set_coeff(0, F4::ETA_PRIME);
                c.rem(&factor.poly).unwrap()
            } else {
                let mut c = QuartPoly::zero();
                c.set_coeff(0, F4::ETA);
                c.rem(&factor.poly).unwrap()
            };
            if residue != expected {
                return false;
            }
        }
        QuartPoly::from_f2(self.a.clone()).sigma() == QuartPoly::from_f2(self.a.clone())
            && isotropy_equation_holds(self.n, &self.g, &self.a)
    }

    /// The generating triple registered with the cyclic-code machinery:
    /// (g, a·g, h_B) where h_B generates B₀ = {b : (0, b) ∈ S}. For this
    /// family B₀ is always the zero ideal, but h_B is computed from the
    /// materialised span rather than assumed.
    pub fn triple(&self) -> GeneratingTriple {
        let n = self.n;
        let xn1 = BinaryPoly::xn_minus_one(n);
        let f = self.a.ring_mul(&self.g.rem(&xn1).unwrap(), n);
        let extracted = self
            .span()
            .extract_generating_triple()
            .expect("ideal spans are separately cyclic");
        GeneratingTriple::new(n, self.g.clone(), f, extracted.h)
    }

    /// F₂-span of the ideal generated by g̃ under the pair identification.
    pub fn span(&self) -> SympSubspace {
        let n = self.n;
        let mut pairs = Vec::with_capacity(2 * n);
        for i in 0..n {
            let shifted = self.gtilde.ring_mul(&QuartPoly::from_f2(BinaryPoly::monomial(i)), n);
            for scaled in [shifted.clone(), shifted.scale(F4::ETA)] {
                let (a, b) = scaled.split();
                pairs.push(SympPair::from_polys(n, &a, &b));
            }
        }
        SympSubspace::from_pairs(n, 2, &pairs).unwrap()
    }

    pub fn to_cyclic_code(&self) -> Result<CyclicStabiliserCode, CodeError> {
        CyclicStabiliserCode::from_triple(self.triple())
    }
}

/// Every divisor g (containing X−1) crossed with every σ-transversal of
/// the remaining factors, in canonical coset-leader order.
pub fn enumerate_codes(m: u32) -> Result<Vec<FourMCode>, FourMError> {
    if m == 0 || m > 3 {
        // 3^(number of non-trivial F2 factors) codes: 729 at m = 3,
        // tens of millions at m = 4
        return Err(FourMError::EnumerationTooLarge(m));
    }
    let n = code_length(m);
    let f2s = crate::cyclotomic::factor_f2(n)?;
    let f4s = factor_f4(n)?;
    let (pairs, _) = f4s.sigma_pairs();

    // F2 factors other than X−1, in coset-leader order
    let optional: Vec<&crate::cyclotomic::Factor<BinaryPoly>> = f2s
        .factors
        .iter()
        .filter(|f| f.coset[0] != 0)
        .collect();

    let mut out = Vec::new();
    for subset in 0u32..(1 << optional.len()) {
        let mut g = BinaryPoly::x_plus_one();
        for (bit, factor) in optional.iter().enumerate() {
            if subset >> bit & 1 != 0 {
                g = g.mul(&factor.poly);
            }
        }
        let g_q = QuartPoly::from_f2(g.clone());
        let free_pairs: Vec<(usize, usize)> = pairs
            .iter()
            .copied()
            .filter(|&(i, _)| !f4s.factors[i].poly.divides(&g_q))
            .collect();
        for choice in 0u32..(1 << free_pairs.len()) {
            let leaders: Vec<usize> = free_pairs
                .iter()
                .enumerate()
                .map(|(bit, &(i, j))| {
                    f4s.leader_of(if choice >> bit & 1 == 0 { i } else { j })
                })
                .collect();
            out.push(construct(m, &g, &leaders)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laflamme_code_parameters() {
        let code = construct(1, &BinaryPoly::x_plus_one(), &[2]).unwrap();
        assert_eq!(code.n, 5);
        assert_eq!(code.k, 1);
        assert_eq!(code.bch.d, 3);
        assert_eq!(code.t, 1);
        assert!(code.verify_isotropy_equation());
        // g·h·σ(h) checked in construct; triple must validate
        code.triple().validate().unwrap();
    }

    #[test]
    fn both_n5_transversals_reach_bch_3() {
        for leader in [1usize, 2] {
            let code = construct(1, &BinaryPoly::x_plus_one(), &[leader]).unwrap();
            assert_eq!(code.bch.d, 3, "transversal {leader}");
        }
    }

    #[test]
    fn n17_weight_one_transversal() {
        let code = construct(2, &BinaryPoly::x_plus_one(), &[2, 6]).unwrap();
        assert_eq!(code.k, 1);
        assert_eq!(code.bch.d, 7);
        assert_eq!(code.t, 3);
        assert!(code.verify_isotropy_equation());
    }

    #[test]
    fn n17_k9_codes_have_bch_3() {
        let f2s = crate::cyclotomic::factor_f2(17).unwrap();
        for octic in [1usize, 2] {
            let g = BinaryPoly::x_plus_one().mul(&f2s.factors[octic].poly);
            let f4s = factor_f4(17).unwrap();
            let g_q = QuartPoly::from_f2(g.clone());
            let free: Vec<usize> = (0..f4s.factors.len())
                .filter(|&i| i != 0 && !f4s.factors[i].poly.divides(&g_q))
                .collect();
            assert_eq!(free.len(), 2);
            for &pick in &free {
                let code = construct(2, &g, &[f4s.leader_of(pick)]).unwrap();
                assert_eq!(code.k, 9);
                assert_eq!(code.bch.d, 3);
            }
        }
    }

    #[test]
    fn mutated_a_fails_verification() {
        let code = construct(1, &BinaryPoly::x_plus_one(), &[2]).unwrap();
        let mut bad = code.clone();
        let mut a = bad.a.clone();
        a.set_coeff(2, !a.coeff(2));
        bad.a = a;
        assert!(!bad.verify_isotropy_equation());
    }

    #[test]
    fn rejects_bad_inputs() {
        // g without the X−1 factor
        let g = BinaryPoly::parse_expr("x^4+x^3+x^2+x+1").unwrap();
        assert!(matches!(
            construct(1, &g, &[2]),
            Err(FourMError::SelfPairedFactorOutsideG)
        ));
        // g not dividing X^5−1
        let g = BinaryPoly::parse_expr("x^2+x+1").unwrap();
        assert!(matches!(construct(1, &g, &[2]), Err(FourMError::GNotDivisible)));
        // both members of a pair
        assert!(matches!(
            construct(1, &BinaryPoly::x_plus_one(), &[1, 2]),
            Err(FourMError::SigmaConditionViolated(_))
        ));
        // no member of a pair
        assert!(matches!(
            construct(1, &BinaryPoly::x_plus_one(), &[]),
            Err(FourMError::SigmaConditionViolated(_))
        ));
    }

    #[test]
    fn enumerate_m1_gives_three_codes() {
        let codes = enumerate_codes(1).unwrap();
        let mut summary: Vec<(usize, usize)> =
            codes.iter().map(|c| (c.k, c.bch.d)).collect();
        summary.sort_unstable();
        assert_eq!(summary, vec![(1, 3), (1, 3), (5, 1)]);
    }

    #[test]
    fn enumerate_m2_shape() {
        let codes = enumerate_codes(2).unwrap();
        assert_eq!(codes.len(), 9);
        assert!(codes.iter().any(|c| c.k == 1 && c.bch.d == 7));
        assert!(codes.iter().filter(|c| c.k == 9 && c.bch.d == 3).count() == 4);
        assert!(codes.iter().any(|c| c.k == 17 && c.bch.d == 1));
        for code in &codes {
            assert!(code.verify_isotropy_equation());
        }
    }

    #[test]
    fn span_matches_triple_span() {
        for (m, leaders) in [
            (1u32, vec![2usize]),
            (1, vec![1]),
            (2, vec![2, 6]),
            (2, vec![1, 3]),
        ] {
            let code = construct(m, &BinaryPoly::x_plus_one(), &leaders).unwrap();
            let ideal_span = code.span();
            let triple_span = code.triple().span().unwrap();
            assert_eq!(ideal_span, triple_span);
            assert!(ideal_span.is_totally_isotropic());
            assert!(ideal_span.is_separately_cyclic());
            assert_eq!(code.n - ideal_span.dim(), code.k);
        }
    }

    #[test]
    fn m3_smoke_construction() {
        let codes = enumerate_codes(3).unwrap();
        assert_eq!(codes.len(), 729);
        let full = codes.iter().find(|c| c.k == 1).unwrap();
        assert_eq!(full.n, 65);
        assert!(full.verify_isotropy_equation());
    }

    #[test]
    fn budget_caps_are_enforced() {
        assert!(matches!(
            construct(5, &BinaryPoly::x_plus_one(), &[]),
            Err(FourMError::BadM(5))
        ));
        assert!(matches!(
            enumerate_codes(4),
            Err(FourMError::EnumerationTooLarge(4))
        ));
    }
}
