//! Factorisation of Xⁿ−1 over F₂ and F₄ via cyclotomic cosets, together
//! with the σ-pairing of F₄ factors and the BCH distance of an exponent
//! set.
//!
//! Each irreducible factor is built as the minimal polynomial
//! ∏_{j∈coset}(X − βʲ) in the splitting field and then verified to have
//! base-field coefficients; the product of all factors is re-verified to
//! equal Xⁿ−1. Factors are listed in coset-leader order, which makes every
//! output of this module deterministic.

use thiserror::Error;

use crate::extfield::{splitting_field_f2, splitting_field_f4, ExtField, ExtFieldError, Fe};
use crate::poly::{BinaryPoly, QuartPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("n={n} and q={q} must be coprime")]
    NotCoprime { n: usize, q: usize },
    #[error("n must be odd in characteristic 2, got {0}")]
    EvenLength(usize),
    #[error("exponent set must be a nonempty proper subset of Z_n")]
    FullExponentSet,
    #[error(transparent)]
    Field(#[from] ExtFieldError),
}

/// The q-ary cyclotomic cosets modulo n, sorted by leader.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    pub n: usize,
    pub q: usize,
    pub cosets: Vec<Vec<usize>>,
}

pub fn cyclotomic_cosets(n: usize, q: usize) -> Result<CosetPartition, CyclotomicError> {
    if n == 0 || gcd(n, q) != 1 {
        return Err(CyclotomicError::NotCoprime { n, q });
    }
    let mut seen = vec![false; n];
    let mut cosets = Vec::new();
    for leader in 0..n {
        if seen[leader] {
            continue;
        }
        let mut coset = Vec::new();
        let mut s = leader;
        while !seen[s] {
            seen[s] = true;
            coset.push(s);
            s = s * q % n;
        }
        coset.sort_unstable();
        cosets.push(coset);
    }
    Ok(CosetPartition { n, q, cosets })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// One irreducible factor of Xⁿ−1 with its root exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor<P> {
    pub poly: P,
    /// Exponents j with poly(βʲ) = 0; sorted, leader first entry.
    pub coset: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct F2Factors {
    pub n: usize,
    pub factors: Vec<Factor<BinaryPoly>>,
}

#[derive(Debug, Clone)]
pub struct F4Factors {
    pub n: usize,
    pub factors: Vec<Factor<QuartPoly>>,
    /// `sigma_pairing[i] = j` where factors[j] = σ(factors[i]).
    pub sigma_pairing: Vec<usize>,
}

/// Minimal polynomial ∏_{j∈coset}(X − βʲ) as extension-field coefficients.
fn minimal_poly_coeffs(field: &ExtField, beta: Fe, coset: &[usize]) -> Vec<Fe> {
    let mut coeffs = vec![Fe::ONE];
    for &j in coset {
        let root = field.pow(beta, j as i64);
        let mut next = vec![Fe::ZERO; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], c);
            next[i] = field.add(next[i], field.mul(c, root));
        }
        coeffs = next;
    }
    coeffs
}

pub fn factor_f2(n: usize) -> Result<F2Factors, CyclotomicError> {
    use std::collections::HashMap;
    use std::sync::{OnceLock, RwLock};
    static CACHE: OnceLock<RwLock<HashMap<usize, F2Factors>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(found) = cache.read().unwrap().get(&n) {
        return Ok(found.clone());
    }
    let computed = factor_f2_uncached(n)?;
    cache.write().unwrap().insert(n, computed.clone());
    Ok(computed)
}

fn factor_f2_uncached(n: usize) -> Result<F2Factors, CyclotomicError> {
    if n.is_multiple_of(2) {
        return Err(CyclotomicError::EvenLength(n));
    }
    let partition = cyclotomic_cosets(n, 2)?;
    let (field, beta) = splitting_field_f2(n)?;
    let mut factors = Vec::new();
    for coset in &partition.cosets {
        let coeffs = minimal_poly_coeffs(&field, beta, coset);
        let mut poly = BinaryPoly::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            match c {
                Fe::ZERO => {}
                Fe::ONE => poly.set_coeff(i, true),
                _ => unreachable!("minimal polynomial over F2 has F2 coefficients"),
            }
        }
        factors.push(Factor { poly, coset: coset.clone() });
    }
    let product = factors
        .iter()
        .fold(BinaryPoly::one(), |acc, f| acc.mul(&f.poly));
    assert_eq!(product, BinaryPoly::xn_minus_one(n), "factor product check");
    Ok(F2Factors { n, factors })
}

pub fn factor_f4(n: usize) -> Result<F4Factors, CyclotomicError> {
    use std::collections::HashMap;
    use std::sync::{OnceLock, RwLock};
    static CACHE: OnceLock<RwLock<HashMap<usize, F4Factors>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(found) = cache.read().unwrap().get(&n) {
        return Ok(found.clone());
    }
    let computed = factor_f4_uncached(n)?;
    cache.write().unwrap().insert(n, computed.clone());
    Ok(computed)
}

fn factor_f4_uncached(n: usize) -> Result<F4Factors, CyclotomicError> {
    if n.is_multiple_of(2) {
        return Err(CyclotomicError::EvenLength(n));
    }
    let partition = cyclotomic_cosets(n, 4)?;
    let (field, beta) = splitting_field_f4(n)?;
    let mut factors = Vec::new();
    for coset in &partition.cosets {
        let coeffs = minimal_poly_coeffs(&field, beta, coset);
        let mut poly = QuartPoly::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            let f4 = field
                .extract_f4(c)?
                .expect("minimal polynomial over F4 has F4 coefficients");
            poly.set_coeff(i, f4);
        }
        factors.push(Factor { poly, coset: coset.clone() });
    }
    let product = factors
        .iter()
        .fold(QuartPoly::one(), |acc, f| acc.mul(&f.poly));
    assert_eq!(product, QuartPoly::xn_minus_one(n), "factor product check");

    let sigma_pairing = factors
        .iter()
        .map(|f| {
            let conj = f.poly.sigma();
            factors
                .iter()
                .position(|g| g.poly == conj)
                .expect("conjugate of a factor is a factor")
        })
        .collect();
    Ok(F4Factors { n, factors, sigma_pairing })
}

impl F2Factors {
    /// `x^n-1 = (…)(…)` with factors in coset-leader order.
    pub fn display_line(&self) -> String {
        let product: String = self
            .factors
            .iter()
            .map(|f| format!("({})", f.poly))
            .collect();
        format!("x^{}-1 = {}", self.n, product)
    }
}

impl F4Factors {
    /// `x^n-1 = (…)(…)` with factors in coset-leader order.
    pub fn display_line(&self) -> String {
        let product: String = self
            .factors
            .iter()
            .map(|f| format!("({})", f.poly))
            .collect();
        format!("x^{}-1 = {}", self.n, product)
    }

    /// σ-conjugate pairs (by index, i < j) and the σ-fixed factors.
    pub fn sigma_pairs(&self) -> (Vec<(usize, usize)>, Vec<usize>) {
        let mut pairs = Vec::new();
        let mut fixed = Vec::new();
        for (i, &j) in self.sigma_pairing.iter().enumerate() {
            match i.cmp(&j) {
                std::cmp::Ordering::Less => pairs.push((i, j)),
                std::cmp::Ordering::Equal => fixed.push(i),
                std::cmp::Ordering::Greater => {}
            }
        }
        (pairs, fixed)
    }

    pub fn leader_of(&self, idx: usize) -> usize {
        self.factors[idx].coset[0]
    }

    pub fn index_of_leader(&self, leader: usize) -> Option<usize> {
        self.factors.iter().position(|f| f.coset[0] == leader)
    }
}

/// BCH bound data: `d` together with the multiplier/offset pinning the run
/// of consecutive roots used by the decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BchBound {
    pub d: usize,
    /// Unit c such that β^(c·(offset+i)) is a root for i = 0..d−2.
    pub multiplier: usize,
    pub offset: usize,
}

/// BCH distance of an exponent set: 1 + the longest cyclic run of
/// consecutive exponents, maximised over the choice of primitive root
/// (equivalently over unit multiples of the set).
///
/// The returned witness satisfies `(multiplier·(offset+i)) mod n ∈
/// exponents` for `i = 0..d−2`, so syndrome positions can be read straight
/// from it. The empty set yields d = 1. The full set Z_n is rejected.
pub fn bch_distance(exponents: &[usize], n: usize) -> Result<BchBound, CyclotomicError> {
    let mut marked = vec![false; n];
    for &e in exponents {
        marked[e % n] = true;
    }
    if marked.iter().all(|&m| m) {
        return Err(CyclotomicError::FullExponentSet);
    }
    let mut best = BchBound { d: 1, multiplier: 1, offset: 0 };
    for u in 1..n.max(2) {
        if gcd(u, n) != 1 {
            continue;
        }
        // scaled[j] marks whether j ∈ u·E
        let mut scaled = vec![false; n];
        for (e, &m) in marked.iter().enumerate() {
            if m {
                scaled[u * e % n] = true;
            }
        }
        if let Some((start, len)) = longest_cyclic_run(&scaled) {
            if len + 1 > best.d {
                best = BchBound {
                    d: len + 1,
                    multiplier: mod_inverse(u, n),
                    offset: start,
                };
            }
        }
    }
    Ok(best)
}

fn longest_cyclic_run(marked: &[bool]) -> Option<(usize, usize)> {
    let n = marked.len();
    let anchor = marked.iter().position(|&m| !m)?;
    let mut best: Option<(usize, usize)> = None;
    let mut run_start = None;
    for step in 1..=n {
        let idx = (anchor + step) % n;
        if marked[idx] {
            run_start.get_or_insert(idx);
        } else if let Some(start) = run_start.take() {
            let len = (idx + n - start) % n;
            if best.is_none_or(|(_, bl)| len > bl) {
                best = Some((start, len));
            }
        }
    }
    best
}

fn mod_inverse(u: usize, n: usize) -> usize {
    for v in 1..n {
        if u * v % n == 1 {
            return v;
        }
    }
    assert_eq!(n, 1);
    0
}
