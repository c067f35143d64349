//! Cyclic stabiliser codes from generating triples: validation of the
//! polynomial conditions, span and centraliser construction, and exact
//! minimum distance by exhaustive enumeration of the centraliser.
//!
//! Distance enumeration prefers the F₄-ideal route: when both the span
//! and its centraliser are F₄-linear the centraliser is the ideal of a
//! single generator h_C and its elements are exactly the multiples
//! m(X)·h_C(X), which enumerate as packed words. Membership of a
//! candidate in S is a polynomial divisibility test against the span's
//! own generator. The search is chunked into lexicographic blocks (so
//! long runs can checkpoint and resume) and blocks are processed with a
//! commutative min-reduction, which keeps the result independent of
//! thread interleaving.

use rayon::prelude::*;
use thiserror::Error;

use crate::poly::{BinaryPoly, QuartPoly};
use crate::symplectic::{kernel_basis, SympPair, SympSubspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleCondition {
    /// g divides Xⁿ−1 over F₂.
    GDividesXn,
    /// h divides Xⁿ−1 over F₂.
    HDividesXn,
    /// g(X⁻¹)h(X) ≡ g(X)h(X⁻¹) ≡ 0 mod Xⁿ−1.
    CrossAnnihilation,
    /// g(X)f(X⁻¹) ≡ f(X)g(X⁻¹) mod Xⁿ−1.
    SelfIsotropy,
}

impl std::fmt::Display for TripleCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            TripleCondition::GDividesXn => "g | X^n-1",
            TripleCondition::HDividesXn => "h | X^n-1",
            TripleCondition::CrossAnnihilation => "rev(g)*h = g*rev(h) = 0 mod X^n-1",
            TripleCondition::SelfIsotropy => "g*rev(f) = f*rev(g) mod X^n-1",
        };
        write!(f, "{name}")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("invalid generating triple; failed conditions: {}",
            .failed.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidTriple { failed: Vec<TripleCondition> },
    #[error("length must be odd and positive, got {0}")]
    BadLength(usize),
    #[error("centraliser equals the stabiliser span (k = 0); no distance defined")]
    EmptyQuotient,
    #[error("length {0} exceeds the packed enumeration limit of 63")]
    LengthTooLarge(usize),
    #[error(
        "centraliser has {elements} elements, over the budget of {budget}; \
         ascending-weight scan proves d >= {lower_bound}"
    )]
    BudgetExceeded {
        elements: u128,
        budget: u64,
        lower_bound: usize,
    },
}

/// Polynomials (g, f, h) generating a separately cyclic subspace as the
/// pairs (a·g, a·f + b·h). The conventions for degenerate ideals use
/// Xⁿ−1 itself (≡ 0 in the ring) as the generator of the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingTriple {
    pub n: usize,
    pub g: BinaryPoly,
    pub f: BinaryPoly,
    pub h: BinaryPoly,
}

impl GeneratingTriple {
    pub fn new(n: usize, g: BinaryPoly, f: BinaryPoly, h: BinaryPoly) -> Self {
        Self { n, g, f, h }
    }

    /// Which of the defining conditions fail (empty = valid).
    pub fn failed_conditions(&self) -> Vec<TripleCondition> {
        let n = self.n;
        let xn1 = BinaryPoly::xn_minus_one(n);
        let mut failed = Vec::new();
        if !self.g.divides(&xn1) {
            failed.push(TripleCondition::GDividesXn);
        }
        if !self.h.divides(&xn1) {
            failed.push(TripleCondition::HDividesXn);
        }
        let g_red = self.g.rem(&xn1).unwrap();
        let h_red = self.h.rem(&xn1).unwrap();
        let f_red = self.f.rem(&xn1).unwrap();
        let cross_a = g_red.ring_reverse(n).ring_mul(&h_red, n);
        let cross_b = g_red.ring_mul(&h_red.ring_reverse(n), n);
        if !cross_a.is_zero() || !cross_b.is_zero() {
            failed.push(TripleCondition::CrossAnnihilation);
        }
        if g_red.ring_mul(&f_red.ring_reverse(n), n)
            != f_red.ring_mul(&g_red.ring_reverse(n), n)
        {
            failed.push(TripleCondition::SelfIsotropy);
        }
        failed
    }

    pub fn validate(&self) -> Result<(), CodeError> {
        if self.n == 0 || self.n.is_multiple_of(2) {
            return Err(CodeError::BadLength(self.n));
        }
        let failed = self.failed_conditions();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(CodeError::InvalidTriple { failed })
        }
    }

    /// The subspace spanned by all shifts of (g, f) and (0, h), reduced
    /// to echelon form. Requires a valid triple.
    pub fn span(&self) -> Result<SympSubspace, CodeError> {
        self.validate()?;
        Ok(self.span_unchecked())
    }

    pub(crate) fn span_unchecked(&self) -> SympSubspace {
        let n = self.n;
        let g_red = self.g.rem(&BinaryPoly::xn_minus_one(n)).unwrap();
        let f_red = self.f.rem(&BinaryPoly::xn_minus_one(n)).unwrap();
        let h_red = self.h.rem(&BinaryPoly::xn_minus_one(n)).unwrap();
        let mut pairs = Vec::with_capacity(2 * n);
        for i in 0..n {
            let shift = BinaryPoly::monomial(i);
            pairs.push(SympPair::from_polys(
                n,
                &g_red.ring_mul(&shift, n),
                &f_red.ring_mul(&shift, n),
            ));
            pairs.push(SympPair::from_polys(
                n,
                &BinaryPoly::zero(),
                &h_red.ring_mul(&shift, n),
            ));
        }
        SympSubspace::from_pairs(n, 2, &pairs).unwrap()
    }

    /// Centraliser by solving the two linear conditions
    /// c(X)h(X⁻¹) ≡ 0 and g(X)d(X⁻¹) ≡ f(X)c(X⁻¹) over F₂ⁿ × F₂ⁿ.
    pub fn centraliser(&self) -> Result<SympSubspace, CodeError> {
        self.validate()?;
        let n = self.n;
        let xn1 = BinaryPoly::xn_minus_one(n);
        let g = self.g.rem(&xn1).unwrap();
        let f = self.f.rem(&xn1).unwrap();
        let h = self.h.rem(&xn1).unwrap();
        let mut constraints = Vec::with_capacity(2 * n);
        for k in 0..n {
            // coeff_k of c(X)h(X⁻¹): Σ_i h_{(i−k) mod n} c_i
            let mut row = vec![0u8; 2 * n];
            for (i, slot) in row.iter_mut().take(n).enumerate() {
                *slot = h.coeff((i + n - k) % n) as u8;
            }
            constraints.push(row);
            // coeff_k of f(X)c(X⁻¹) + g(X)d(X⁻¹):
            // Σ_j f_{(j+k) mod n} c_j + Σ_j g_{(j+k) mod n} d_j
            let mut row = vec![0u8; 2 * n];
            for j in 0..n {
                row[j] = f.coeff((j + k) % n) as u8;
                row[n + j] = g.coeff((j + k) % n) as u8;
            }
            constraints.push(row);
        }
        let kernel = kernel_basis(constraints, 2 * n, 2);
        let pairs: Vec<SympPair> = kernel
            .into_iter()
            .map(|r| SympPair { a: r[..n].to_vec(), b: r[n..].to_vec() })
            .collect();
        Ok(SympSubspace::from_pairs(n, 2, &pairs).unwrap())
    }
}

#[derive(Debug, Clone)]
pub struct CyclicStabiliserCode {
    pub triple: GeneratingTriple,
    pub span: SympSubspace,
    pub centraliser: SympSubspace,
    /// Stabiliser dimension k = n − dim S.
    pub k: usize,
    /// Exact distance, once computed.
    pub distance: Option<usize>,
}

impl CyclicStabiliserCode {
    pub fn from_triple(triple: GeneratingTriple) -> Result<Self, CodeError> {
        let span = triple.span()?;
        let centraliser = triple.centraliser()?;
        let k = triple.n - span.dim();
        Ok(Self { triple, span, centraliser, k, distance: None })
    }

    pub fn n(&self) -> usize {
        self.triple.n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceRoute {
    /// Centraliser enumerated as multiples of its F₄ ideal generator.
    F4Ideal,
    /// Centraliser enumerated as the F₂ span of its basis.
    F2Span,
}

#[derive(Debug, Clone)]
pub struct DistanceReport {
    pub d: usize,
    /// An arg-min element of C(S) \ S.
    pub witness: (BinaryPoly, BinaryPoly),
    pub enumerated: u64,
    pub route: DistanceRoute,
}

#[derive(Debug, Clone, Copy)]
pub struct DistanceOptions {
    /// Maximum number of centraliser elements to enumerate.
    pub budget: u64,
    /// log2 of the block width used for chunking/checkpointing.
    pub block_bits: u32,
    /// First block to process (resume support).
    pub start_block: u64,
    /// Process at most this many blocks, reporting a partial result.
    pub max_blocks: Option<u64>,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        Self { budget: 1 << 30, block_bits: 6, start_block: 0, max_blocks: None }
    }
}

#[derive(Debug, Clone)]
pub enum DistanceOutcome {
    /// A full-range run (block 0 through the last) finished.
    Complete(DistanceReport),
    /// This run covered only a sub-range of blocks; `min_so_far` is its
    /// best over that range. Resume from `next_block` and take the min
    /// across runs.
    Partial {
        min_so_far: Option<(usize, (BinaryPoly, BinaryPoly))>,
        next_block: u64,
        total_blocks: u64,
        enumerated: u64,
    },
}

/// Exact distance: min joint weight over C(S) \ S, full enumeration.
pub fn exact_distance(
    code: &CyclicStabiliserCode,
    budget: u64,
) -> Result<DistanceReport, CodeError> {
    let opts = DistanceOptions { budget, ..Default::default() };
    match exact_distance_chunked(code, &opts)? {
        DistanceOutcome::Complete(report) => Ok(report),
        DistanceOutcome::Partial { .. } => unreachable!("no block cap was set"),
    }
}

pub fn exact_distance_chunked(
    code: &CyclicStabiliserCode,
    opts: &DistanceOptions,
) -> Result<DistanceOutcome, CodeError> {
    let n = code.n();
    if n > 63 {
        return Err(CodeError::LengthTooLarge(n));
    }
    if code.centraliser.dim() == code.span.dim() {
        return Err(CodeError::EmptyQuotient);
    }
    let f4_route = f4_ideal_generator(&code.centraliser)
        .zip(f4_ideal_generator(&code.span));
    match f4_route {
        Some((h_c, g_s)) => f4_ideal_distance(code, &h_c, &g_s, opts),
        None => f2_span_distance(code, opts),
    }
}

/// If the subspace is F₄-linear, return the monic generator of its ideal.
pub fn f4_ideal_generator(sub: &SympSubspace) -> Option<QuartPoly> {
    let n = sub.n();
    // closure under multiplication by η: (a, b) ↦ (b, a+b)
    for pair in sub.basis() {
        let scaled = SympPair::new(
            pair.b.clone(),
            pair.a.iter().zip(pair.b.iter()).map(|(x, y)| x ^ y).collect(),
        )
        .unwrap();
        if !sub.contains(&scaled) {
            return None;
        }
    }
    let mut gen = QuartPoly::xn_minus_one(n);
    for pair in sub.basis() {
        let (a, b) = pair.to_polys();
        let u = QuartPoly::join(a, b);
        if !u.is_zero() {
            gen = gen.gcd(&u).ok()?;
        }
    }
    // the span must be the whole ideal, not a proper additive subgroup
    let ideal_f2_dim = 2 * (n - gen.degree().unwrap_or(n).min(n));
    (ideal_f2_dim == sub.dim()).then_some(gen)
}

fn poly_to_words(p: &QuartPoly) -> (u64, u64) {
    (p.part0().to_word(), p.part1().to_word())
}

#[inline]
fn clmul_word(a: u64, b: u64) -> u64 {
    let mut out = 0u64;
    let mut bits = b;
    while bits != 0 {
        let s = bits.trailing_zeros();
        bits &= bits - 1;
        out ^= a << s;
    }
    out
}

/// (m0 + ηm1)(h0 + ηh1) over F₄[X], packed.
#[inline]
fn f4_mul_words(m0: u64, m1: u64, h0: u64, h1: u64) -> (u64, u64) {
    let a = clmul_word(m0, h0);
    let b = clmul_word(m0, h1) ^ clmul_word(m1, h0);
    let c = clmul_word(m1, h1);
    (a ^ c, b ^ c)
}

/// Remainder of e modulo the monic divisor d, packed F₄.
#[inline]
fn f4_rem_words(mut e0: u64, mut e1: u64, d0: u64, d1: u64, d_deg: u32) -> (u64, u64) {
    loop {
        let support = e0 | e1;
        if support == 0 {
            return (0, 0);
        }
        let deg = 63 - support.leading_zeros();
        if deg < d_deg {
            return (e0, e1);
        }
        let s = deg - d_deg;
        let c0 = e0 >> deg & 1;
        let c1 = e1 >> deg & 1;
        // scale (d0, d1) by the leading coefficient c0 + ηc1
        let (s0, s1) = match (c0, c1) {
            (1, 0) => (d0, d1),
            (0, 1) => (d1, d0 ^ d1),
            _ => (d0 ^ d1, d0),
        };
        e0 ^= s0 << s;
        e1 ^= s1 << s;
    }
}

fn f4_ideal_distance(
    code: &CyclicStabiliserCode,
    h_c: &QuartPoly,
    g_s: &QuartPoly,
    opts: &DistanceOptions,
) -> Result<DistanceOutcome, CodeError> {
    let n = code.n();
    let deg_h = h_c.degree().unwrap_or(n).min(n);
    let t = n - deg_h; // F4 dimension of the centraliser ideal
    let elements = 1u128 << (2 * t);
    if elements > opts.budget as u128 {
        let lower = ascending_weight_lower_bound(code, opts.budget);
        return Err(CodeError::BudgetExceeded {
            elements,
            budget: opts.budget,
            lower_bound: lower,
        });
    }

    let (h0, h1) = poly_to_words(h_c);
    let g_deg = g_s.degree().unwrap_or(n).min(n) as u32;
    let (gs0, gs1) = if g_s.degree().is_some_and(|d| d < n) {
        poly_to_words(g_s)
    } else {
        // span is the zero ideal; only e = 0 is a member
        (0, 0)
    };
    let span_is_zero = gs0 == 0 && gs1 == 0;

    let m_count = 1u64 << t;
    let block_size = 1u64 << opts.block_bits.min(t as u32);
    let total_blocks = m_count.div_ceil(block_size);
    let end_block = opts
        .max_blocks
        .map_or(total_blocks, |mb| (opts.start_block + mb).min(total_blocks));

    // best = (weight, m1, m0), compared lexicographically so the reduction
    // result does not depend on scheduling
    let mut best: Option<(usize, u64, u64)> = None;
    let mut enumerated: u64 = 0;
    for block in opts.start_block..end_block {
        let lo = block * block_size;
        let hi = (lo + block_size).min(m_count);
        let block_best = (lo..hi)
            .into_par_iter()
            .map(|m1| {
                let mut local: Option<(usize, u64, u64)> = None;
                for m0 in 0..m_count {
                    let (e0, e1) = f4_mul_words(m0, m1, h0, h1);
                    let w = (e0 | e1).count_ones() as usize;
                    if w == 0 || local.is_some_and(|(bw, _, _)| w >= bw) {
                        continue;
                    }
                    let in_span = if span_is_zero {
                        false // e != 0 here
                    } else {
                        f4_rem_words(e0, e1, gs0, gs1, g_deg) == (0, 0)
                    };
                    if !in_span {
                        local = Some((w, m1, m0));
                    }
                }
                local
            })
            .reduce(|| None, |x, y| match (x, y) {
                (None, y) => y,
                (x, None) => x,
                (Some(a), Some(b)) => Some(a.min(b)),
            });
        best = match (best, block_best) {
            (None, b) => b,
            (b, None) => b,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        enumerated += (hi - lo) * m_count;
    }

    if opts.start_block > 0 || end_block < total_blocks {
        return Ok(DistanceOutcome::Partial {
            min_so_far: best.map(|(w, m1, m0)| (w, witness_from_m(m0, m1, h0, h1))),
            next_block: end_block,
            total_blocks,
            enumerated,
        });
    }
    let (w, m1, m0) = best.expect("centraliser strictly contains the span");
    Ok(DistanceOutcome::Complete(DistanceReport {
        d: w,
        witness: witness_from_m(m0, m1, h0, h1),
        enumerated,
        route: DistanceRoute::F4Ideal,
    }))
}

fn witness_from_m(m0: u64, m1: u64, h0: u64, h1: u64) -> (BinaryPoly, BinaryPoly) {
    let (e0, e1) = f4_mul_words(m0, m1, h0, h1);
    (BinaryPoly::from_word(e0), BinaryPoly::from_word(e1))
}

fn f2_span_distance(
    code: &CyclicStabiliserCode,
    opts: &DistanceOptions,
) -> Result<DistanceOutcome, CodeError> {
    let dim = code.centraliser.dim();
    let elements = 1u128 << dim;
    if elements > opts.budget as u128 {
        let lower = ascending_weight_lower_bound(code, opts.budget);
        return Err(CodeError::BudgetExceeded {
            elements,
            budget: opts.budget,
            lower_bound: lower,
        });
    }
    let rows: Vec<(u64, u64)> = code
        .centraliser
        .basis()
        .iter()
        .map(|pair| {
            let (a, b) = pair.to_polys();
            (a.to_word(), b.to_word())
        })
        .collect();
    let span_members: std::collections::HashSet<(u64, u64)> = code
        .span
        .elements()
        .into_iter()
        .map(|pair| {
            let (a, b) = pair.to_polys();
            (a.to_word(), b.to_word())
        })
        .collect();

    let mut best: Option<(usize, u64, u64)> = None;
    for combo in 1u64..(1 << dim) {
        let mut acc = (0u64, 0u64);
        let mut bits = combo;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            acc.0 ^= rows[i].0;
            acc.1 ^= rows[i].1;
        }
        let w = (acc.0 | acc.1).count_ones() as usize;
        if best.is_some_and(|(bw, _, _)| w >= bw) {
            continue;
        }
        if !span_members.contains(&acc) {
            best = Some((w, acc.0, acc.1));
        }
    }
    let (w, a, b) = best.ok_or(CodeError::EmptyQuotient)?;
    Ok(DistanceOutcome::Complete(DistanceReport {
        d: w,
        witness: (BinaryPoly::from_word(a), BinaryPoly::from_word(b)),
        enumerated: (1u64 << dim),
        route: DistanceRoute::F2Span,
    }))
}

/// Scan pairs of ascending joint weight (within budget) to certify a
/// lower bound on d when the full enumeration would be too large.
fn ascending_weight_lower_bound(code: &CyclicStabiliserCode, budget: u64) -> usize {
    let n = code.n();
    let mut remaining = budget;
    for w in 1..=n {
        let count = binomial(n, w).saturating_mul(3u64.saturating_pow(w as u32));
        if count > remaining {
            return w; // weights < w exhausted without a hit
        }
        remaining -= count;
        let mut found = false;
        enumerate_weight_w(n, w, &mut |a, b| {
            let pair = SympPair::from_polys(
                n,
                &BinaryPoly::from_word(a),
                &BinaryPoly::from_word(b),
            );
            if code.centraliser.contains(&pair) && !code.span.contains(&pair) {
                found = true;
            }
        });
        if found {
            return w; // w is in fact the exact distance
        }
    }
    n + 1
}

fn binomial(n: usize, k: usize) -> u64 {
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    acc
}

/// Visit every (a, b) word pair of joint weight exactly w.
fn enumerate_weight_w(n: usize, w: usize, visit: &mut impl FnMut(u64, u64)) {
    let mut positions: Vec<usize> = (0..w).collect();
    loop {
        // 3 patterns per chosen position
        let mut pattern = vec![0u8; w];
        loop {
            let mut a = 0u64;
            let mut b = 0u64;
            for (slot, &pos) in positions.iter().enumerate() {
                match pattern[slot] {
                    0 => a |= 1 << pos,
                    1 => b |= 1 << pos,
                    _ => {
                        a |= 1 << pos;
                        b |= 1 << pos;
                    }
                }
            }
            visit(a, b);
            // increment base-3 counter
            let mut carry = true;
            for digit in pattern.iter_mut() {
                if !carry {
                    break;
                }
                *digit += 1;
                carry = *digit == 3;
                if carry {
                    *digit = 0;
                }
            }
            if carry {
                break;
            }
        }
        // next combination of positions (slot i maxes out at n−w+i)
        let Some(advance) = (0..w).rev().find(|&i| positions[i] != n - w + i) else {
            return;
        };
        positions[advance] += 1;
        for j in advance + 1..w {
            positions[j] = positions[j - 1] + 1;
        }
    }
}
