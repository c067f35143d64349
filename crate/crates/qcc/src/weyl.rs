//! Dense complex-matrix grounding of the algebra: Weyl operators,
//! stabiliser projectors with explicit phases, cyclicity of projectors,
//! Knill–Laflamme error detection, and the character-twisted
//! pseudo-stabiliser search.
//!
//! Everything here is small-scale (2ⁿ×2ⁿ with n ≤ 6 for the searches);
//! all phases are exact powers of ι, so numerical error is pure floating
//! point roundoff and the tolerance 1e-10 is generous.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::symplectic::SympSubspace;

pub const TOL: f64 = 1e-10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeylError {
    #[error("{0} qubits exceed the dense-matrix budget")]
    BudgetExceeded(usize),
    #[error("subspace is not totally isotropic")]
    NotIsotropic,
    #[error("phase assignment produced -I in the group (trace vanished)")]
    MinusIdentityInGroup,
    #[error("dense simulation requires p = 2, got {0}")]
    NotBinary(u8),
}

/// Row-major complex matrix of size 2ⁿ × 2ⁿ.
#[derive(Debug, Clone)]
pub struct DenseOperator {
    pub qubits: usize,
    pub dim: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(qubits: usize) -> Self {
        let dim = 1 << qubits;
        Self { qubits, dim, data: vec![Complex64::ZERO; dim * dim] }
    }

    pub fn identity(qubits: usize) -> Self {
        let mut m = Self::zeros(qubits);
        for i in 0..m.dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let dim = self.dim;
        let mut out = Self::zeros(self.qubits);
        for i in 0..dim {
            for l in 0..dim {
                let a = self[(i, l)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..dim {
                    out[(i, j)] += a * rhs[(l, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(rhs.data.iter()) {
            *o += r;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v *= s;
        }
        out
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.qubits);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Entrywise max-norm of the difference.
    pub fn max_diff(&self, rhs: &Self) -> f64 {
        self.data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, rhs: &Self) -> bool {
        self.dim == rhs.dim && self.max_diff(rhs) <= TOL
    }

    pub fn is_projector(&self) -> bool {
        self.approx_eq(&self.dagger()) && self.mul(self).approx_eq(self)
    }
}

impl std::ops::Index<(usize, usize)> for DenseOperator {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseOperator {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// The Weyl operator U_a V_b on n qubits: U shifts basis labels by a,
/// V applies the phase (−1)^(bᵀx). Positions map to index bits
/// little-endian.
pub fn weyl_op(a: u32, b: u32, qubits: usize) -> Result<DenseOperator, WeylError> {
    if qubits > 12 {
        return Err(WeylError::BudgetExceeded(qubits));
    }
    let mut m = DenseOperator::zeros(qubits);
    for x in 0..m.dim as u32 {
        let row = (x ^ a) as usize;
        let sign = if (b & x).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
        m[(row, x as usize)] = Complex64::new(sign, 0.0);
    }
    Ok(m)
}

fn pair_masks(sub: &SympSubspace) -> Vec<(u32, u32)> {
    sub.basis()
        .iter()
        .map(|pair| {
            let mut a = 0u32;
            let mut b = 0u32;
            for (i, (&x, &y)) in pair.a.iter().zip(pair.b.iter()).enumerate() {
                a |= (x as u32 & 1) << i;
                b |= (y as u32 & 1) << i;
            }
            (a, b)
        })
        .collect()
}

const IOTA: Complex64 = Complex64::new(0.0, 1.0);

fn iota_pow(e: u32) -> Complex64 {
    match e % 4 {
        0 => Complex64::ONE,
        1 => IOTA,
        2 => -Complex64::ONE,
        _ => -IOTA,
    }
}

/// Phase making the signed generator ι^(cᵀd)·U_c V_d an involution.
fn generator_phase(c: u32, d: u32) -> Complex64 {
    iota_pow((c & d).count_ones())
}

/// Projector onto the joint +1 eigenspace of the signed Weyl generators
/// of a totally isotropic subspace: P = ∏ᵢ (I + εᵢWᵢ)/2.
pub fn stabiliser_projector(sub: &SympSubspace) -> Result<DenseOperator, WeylError> {
    projector_with_signs(sub, 0)
}

/// Character-twisted projector: flips the sign of generator i when bit i
/// of `character` is set. The trivial character recovers the stabiliser
/// projector.
pub fn char_projector(sub: &SympSubspace, character: u32) -> Result<DenseOperator, WeylError> {
    projector_with_signs(sub, character)
}

fn projector_with_signs(sub: &SympSubspace, character: u32) -> Result<DenseOperator, WeylError> {
    if sub.p() != 2 {
        return Err(WeylError::NotBinary(sub.p()));
    }
    let n = sub.n();
    if n > 10 {
        return Err(WeylError::BudgetExceeded(n));
    }
    if !sub.is_totally_isotropic() {
        return Err(WeylError::NotIsotropic);
    }
    let masks = pair_masks(sub);
    let half = Complex64::new(0.5, 0.0);
    let mut p = DenseOperator::identity(n);
    for (i, &(c, d)) in masks.iter().enumerate() {
        let mut eps = generator_phase(c, d);
        if character >> i & 1 != 0 {
            eps = -eps;
        }
        let w = weyl_op(c, d, n)?.scale(eps);
        p = p.mul(&DenseOperator::identity(n).add(&w)).scale(half);
    }
    // a vanishing trace would mean −I slipped into the signed group,
    // which cannot happen for an isotropic subspace with these phases
    let expected_rank = (1u64 << (n - sub.dim())) as f64;
    if (p.trace().re - expected_rank).abs() > TOL * p.dim as f64 || p.trace().im.abs() > TOL {
        return Err(WeylError::MinusIdentityInGroup);
    }
    debug_assert!(p.is_projector());
    Ok(p)
}

/// The cyclic shift unitary 𝒩: |u⟩ ↦ |Nu⟩ with N the right shift.
pub fn shift_operator(qubits: usize) -> DenseOperator {
    let mut m = DenseOperator::zeros(qubits);
    let mask = (1u32 << qubits) - 1;
    for x in 0..=mask {
        let shifted = ((x << 1) | (x >> (qubits - 1))) & mask;
        m[(shifted as usize, x as usize)] = Complex64::ONE;
    }
    m
}

/// ‖𝒩†P𝒩 − P‖_max ≤ τ.
pub fn check_cyclic(p: &DenseOperator) -> bool {
    let n_op = shift_operator(p.qubits);
    n_op.dagger().mul(p).mul(&n_op).approx_eq(p)
}

/// Visit every (a, b) mask pair of joint weight exactly w.
fn for_each_error(n: usize, w: usize, visit: &mut impl FnMut(u32, u32)) {
    fn rec(n: usize, w: usize, start: usize, a: u32, b: u32, visit: &mut impl FnMut(u32, u32)) {
        if w == 0 {
            visit(a, b);
            return;
        }
        for pos in start..=n - w {
            let bit = 1u32 << pos;
            rec(n, w - 1, pos + 1, a | bit, b, visit);
            rec(n, w - 1, pos + 1, a, b | bit, visit);
            rec(n, w - 1, pos + 1, a | bit, b | bit, visit);
        }
    }
    rec(n, w, 0, 0, 0, visit);
}

/// Largest d ≤ max_check+1 such that every Weyl error of weight < d
/// satisfies PEP = λ_E·P within tolerance.
pub fn kl_distance(p: &DenseOperator, max_check: usize) -> usize {
    let n = p.qubits;
    assert!(n <= 6, "Knill-Laflamme scan is budgeted for n <= 6");
    let trace = p.trace().re;
    for w in 1..=max_check.min(n) {
        let mut detected = true;
        for_each_error(n, w, &mut |a, b| {
            if !detected {
                return;
            }
            let e = weyl_op(a, b, n).unwrap();
            let pep = p.mul(&e).mul(p);
            let lambda = pep.trace() / trace;
            if !pep.approx_eq(&p.scale(lambda)) {
                detected = false;
            }
        });
        if !detected {
            return w;
        }
    }
    max_check + 1
}

/// Scan all 3-subsets of the 2^(n−k) characters of the stabiliser group
/// for summed projectors of trace 6 that detect one error and stay
/// cyclic. For the 5-qubit code this comes up empty: the shift permutes
/// the 16 characters in orbits of sizes 1+5+5+5, so no 3-subset is even
/// shift-closed (see [`search_562_maximal`] for the variant that does
/// reproduce a ((5,6,2)) code).
pub fn search_562(sub: &SympSubspace) -> Result<Vec<[u32; 3]>, WeylError> {
    let n_chars = 1u32 << sub.dim();
    let projectors: Vec<DenseOperator> = (0..n_chars)
        .map(|chi| char_projector(sub, chi))
        .collect::<Result<_, _>>()?;
    let mut triples = Vec::new();
    for i in 0..n_chars {
        for j in i + 1..n_chars {
            for k in j + 1..n_chars {
                triples.push([i, j, k]);
            }
        }
    }
    let found: Vec<[u32; 3]> = triples
        .into_par_iter()
        .filter(|&[i, j, k]| {
            let a = projectors[i as usize]
                .add(&projectors[j as usize])
                .add(&projectors[k as usize]);
            (a.trace().re - 6.0).abs() <= TOL
                && a.trace().im.abs() <= TOL
                && a.is_projector()
                && kl_distance(&a, 1) >= 2
                && check_cyclic(&a)
        })
        .collect();
    Ok(found)
}

/// The permutation the shift conjugation induces on the characters:
/// 𝒩†P_χ𝒩 = P_(π(χ)). Errors if some conjugate fails to land back in
/// the character family (the group is then not normalised by 𝒩).
pub fn character_shift_permutation(sub: &SympSubspace) -> Result<Vec<u32>, WeylError> {
    let n_chars = 1u32 << sub.dim();
    let projectors: Vec<DenseOperator> = (0..n_chars)
        .map(|chi| char_projector(sub, chi))
        .collect::<Result<_, _>>()?;
    let n_op = shift_operator(sub.n());
    let mut perm = Vec::with_capacity(n_chars as usize);
    for p in &projectors {
        let conj = n_op.dagger().mul(p).mul(&n_op);
        let image = projectors
            .iter()
            .position(|q| q.approx_eq(&conj))
            .ok_or(WeylError::MinusIdentityInGroup)?;
        perm.push(image as u32);
    }
    Ok(perm)
}

/// A found pseudo-stabiliser code: the characters summed and the
/// verified parameters of the projector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoCode {
    pub characters: Vec<u32>,
    pub dimension: usize,
    pub kl_distance: usize,
}

/// The ((5,6,2)) search over a maximal separately cyclic isotropic
/// subspace (rank n, rank-1 character projectors): every trace-6 sum of
/// six character projectors that is cyclic and detects one error.
///
/// Because distinct character projectors are orthogonal, a summed
/// projector is 𝒩-invariant exactly when its character set is closed
/// under the shift permutation, so only closed 6-subsets (a fixed
/// character plus a 5-orbit) need full verification; the matrix-level
/// cyclicity and Knill–Laflamme checks still run on each candidate.
pub fn search_562_maximal(sub: &SympSubspace) -> Result<Vec<PseudoCode>, WeylError> {
    let n = sub.n();
    let perm = character_shift_permutation(sub)?;
    let n_chars = 1u32 << sub.dim();

    let mut seen = vec![false; n_chars as usize];
    let mut fixed = Vec::new();
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    for start in 0..n_chars {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = start;
        while !seen[x as usize] {
            seen[x as usize] = true;
            orbit.push(x);
            x = perm[x as usize];
        }
        if orbit.len() == 1 {
            fixed.push(start);
        } else {
            orbits.push(orbit);
        }
    }

    let mut candidates: Vec<Vec<u32>> = Vec::new();
    for &f in &fixed {
        for orbit in orbits.iter().filter(|o| o.len() == 5) {
            let mut set = vec![f];
            set.extend_from_slice(orbit);
            set.sort_unstable();
            candidates.push(set);
        }
    }

    let mut found = Vec::new();
    for set in candidates {
        let mut a = DenseOperator::zeros(n);
        for &chi in &set {
            a = a.add(&char_projector(sub, chi)?);
        }
        if (a.trace().re - 6.0).abs() <= TOL
            && a.trace().im.abs() <= TOL
            && a.is_projector()
            && check_cyclic(&a)
        {
            let d = kl_distance(&a, 2);
            if d >= 2 {
                found.push(PseudoCode { characters: set, dimension: 6, kl_distance: d });
            }
        }
    }
    Ok(found)
}
