//! Binary extension fields F₂ᵏ for root finding and syndrome arithmetic.
//!
//! Elements are bit-packed residues modulo a fixed irreducible polynomial
//! of degree k. The modulus is chosen deterministically as the
//! lexicographically smallest irreducible polynomial of degree k, with
//! coefficient sequences compared low-degree-first, so every run of the
//! library sees the same primitive roots and the same syndrome values.

use thiserror::Error;

use crate::field::F4;
use crate::poly::{BinaryPoly, QuartPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtFieldError {
    #[error("no primitive {n}-th root in F_2^{k}: {n} does not divide 2^{k}-1")]
    NoSuchRoot { n: usize, k: usize },
    #[error("inverse of zero requested")]
    ZeroInverse,
    #[error("F4 does not embed in F_2^{k} (k odd)")]
    NoF4Subfield { k: usize },
    #[error("field degree {0} exceeds the supported limit of 31")]
    DegreeTooLarge(usize),
}

/// An element of an [`ExtField`], packed as coefficient bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fe(pub u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone)]
pub struct ExtField {
    k: usize,
    modulus: u64,
    order: u64, // 2^k - 1
    gamma: u64, // least primitive element in encoding order
}

impl ExtField {
    /// Field of degree `k` over F₂ with the canonical modulus. Built
    /// fields are cached behind a reader-writer lock; construction is
    /// deterministic so the cache cannot change any result.
    pub fn new(k: usize) -> Result<Self, ExtFieldError> {
        use std::collections::HashMap;
        use std::sync::{OnceLock, RwLock};
        static CACHE: OnceLock<RwLock<HashMap<usize, ExtField>>> = OnceLock::new();

        if k == 0 || k > 31 {
            return Err(ExtFieldError::DegreeTooLarge(k));
        }
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(found) = cache.read().unwrap().get(&k) {
            return Ok(found.clone());
        }
        let modulus = canonical_modulus(k);
        let order = (1u64 << k) - 1;
        let mut field = Self { k, modulus, order, gamma: 0 };
        field.gamma = field.find_least_primitive();
        cache.write().unwrap().insert(k, field.clone());
        Ok(field)
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> BinaryPoly {
        BinaryPoly::from_word(self.modulus)
    }

    /// Order of the multiplicative group, 2ᵏ − 1.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The least primitive element under the encoding order.
    pub fn generator(&self) -> Fe {
        Fe(self.gamma)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(a.0 ^ b.0)
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.reduce(clmul(a.0, b.0)))
    }

    fn reduce(&self, mut x: u128) -> u64 {
        let k = self.k as u32;
        let m = self.modulus as u128;
        while x >> k != 0 {
            let top = 127 - x.leading_zeros();
            x ^= m << (top - k);
        }
        x as u64
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, ExtFieldError> {
        if a.is_zero() {
            return Err(ExtFieldError::ZeroInverse);
        }
        Ok(self.pow(a, self.order as i64 - 1))
    }

    /// Exponentiation; negative exponents reduce via the group order and
    /// require a nonzero base.
    pub fn pow(&self, a: Fe, e: i64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        let exp = if e < 0 {
            assert!(!a.is_zero(), "negative power of zero");
            let m = self.order as i64;
            (e % m + m) % m
        } else {
            e
        } as u64;
        let mut base = a;
        let mut acc = Fe::ONE;
        let mut rem = exp;
        while rem != 0 {
            if rem & 1 != 0 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            rem >>= 1;
        }
        acc
    }

    fn multiplicative_order(&self, a: Fe) -> u64 {
        let mut ord = self.order;
        for p in prime_factors(self.order) {
            while ord.is_multiple_of(p) && self.pow(a, (ord / p) as i64) == Fe::ONE {
                ord /= p;
            }
        }
        ord
    }

    fn find_least_primitive(&self) -> u64 {
        for v in 2..=self.order {
            if self.multiplicative_order(Fe(v)) == self.order {
                return v;
            }
        }
        1 // only for F2 itself (order 1)
    }

    /// Deterministic primitive n-th root: γ^((2ᵏ−1)/n).
    pub fn nth_root(&self, n: usize) -> Result<Fe, ExtFieldError> {
        if n == 0 || !self.order.is_multiple_of(n as u64) {
            return Err(ExtFieldError::NoSuchRoot { n, k: self.k });
        }
        Ok(self.pow(self.generator(), (self.order / n as u64) as i64))
    }

    /// Image of η under the canonical embedding F₄ ↪ F₂ᵏ (k even).
    pub fn eta(&self) -> Result<Fe, ExtFieldError> {
        if !self.order.is_multiple_of(3) {
            return Err(ExtFieldError::NoF4Subfield { k: self.k });
        }
        let eta = self.pow(self.generator(), (self.order / 3) as i64);
        debug_assert_eq!(self.mul(eta, eta), self.add(eta, Fe::ONE));
        Ok(eta)
    }

    pub fn embed_f4(&self, c: F4) -> Result<Fe, ExtFieldError> {
        let eta = self.eta()?;
        let mut out = Fe::ZERO;
        if c.bit0() {
            out = self.add(out, Fe::ONE);
        }
        if c.bit1() {
            out = self.add(out, eta);
        }
        Ok(out)
    }

    /// Pull an element back into F₄ if it lies in the subfield.
    pub fn extract_f4(&self, x: Fe) -> Result<Option<F4>, ExtFieldError> {
        let eta = self.eta()?;
        let found = match x {
            Fe::ZERO => Some(F4::ZERO),
            Fe::ONE => Some(F4::ONE),
            _ if x == eta => Some(F4::ETA),
            _ if x == self.add(eta, Fe::ONE) => Some(F4::ETA_PRIME),
            _ => None,
        };
        Ok(found)
    }

    /// Horner evaluation of an F₂ polynomial.
    pub fn eval_f2(&self, p: &BinaryPoly, x: Fe) -> Fe {
        let deg = match p.degree() {
            None => return Fe::ZERO,
            Some(d) => d,
        };
        let mut acc = Fe::ZERO;
        for i in (0..=deg).rev() {
            acc = self.mul(acc, x);
            if p.coeff(i) {
                acc = self.add(acc, Fe::ONE);
            }
        }
        acc
    }

    /// Horner evaluation of an F₄ polynomial via the canonical embedding.
    pub fn eval_f4(&self, p: &QuartPoly, x: Fe) -> Result<Fe, ExtFieldError> {
        let deg = match p.degree() {
            None => return Ok(Fe::ZERO),
            Some(d) => d,
        };
        let eta = self.eta()?;
        let mut acc = Fe::ZERO;
        for i in (0..=deg).rev() {
            acc = self.mul(acc, x);
            let c = p.coeff(i);
            if c.bit0() {
                acc = self.add(acc, Fe::ONE);
            }
            if c.bit1() {
                acc = self.add(acc, eta);
            }
        }
        Ok(acc)
    }
}

/// Splitting field of Xⁿ−1 over F₂ (minimal k with n | 2ᵏ−1) and its
/// deterministic primitive n-th root.
pub fn splitting_field_f2(n: usize) -> Result<(ExtField, Fe), ExtFieldError> {
    let k = multiplicative_order(2, n);
    let field = ExtField::new(k)?;
    let beta = field.nth_root(n)?;
    Ok((field, beta))
}

/// Splitting field of Xⁿ−1 over F₄, presented as F₂^(2t); contains F₄.
pub fn splitting_field_f4(n: usize) -> Result<(ExtField, Fe), ExtFieldError> {
    let t = multiplicative_order(4, n);
    let k2 = multiplicative_order(2, n);
    // F_4^t = F_2^(2t); when the F2 splitting degree is already even the
    // two towers coincide and so do the roots.
    let k = if k2.is_multiple_of(2) { k2 } else { 2 * t };
    debug_assert_eq!(k % 2, 0);
    let field = ExtField::new(k)?;
    let beta = field.nth_root(n)?;
    Ok((field, beta))
}

/// Multiplicative order of `q` modulo `n` (requires gcd(q, n) = 1).
pub fn multiplicative_order(q: u64, n: usize) -> usize {
    assert!(n >= 1);
    if n == 1 {
        return 1;
    }
    let n = n as u64;
    let mut acc = q % n;
    let mut ord = 1;
    while acc != 1 {
        acc = acc * q % n;
        ord += 1;
        assert!(ord <= n, "q is not a unit mod n");
    }
    ord as usize
}

fn clmul(a: u64, b: u64) -> u128 {
    let mut out = 0u128;
    let wide = a as u128;
    let mut bits = b;
    while bits != 0 {
        let s = bits.trailing_zeros();
        bits &= bits - 1;
        out ^= wide << s;
    }
    out
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility over F₂ by trial division up to half the degree.
fn is_irreducible(poly: u64) -> bool {
    let deg = 63 - poly.leading_zeros();
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 2..(1u64 << (deg / 2 + 1)) {
        if poly_rem_u64(poly, d) == 0 {
            return false;
        }
    }
    true
}

fn poly_rem_u64(mut a: u64, m: u64) -> u64 {
    let dm = 63 - m.leading_zeros();
    while a != 0 {
        let da = 63 - a.leading_zeros();
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

/// Lexicographically smallest irreducible polynomial of degree k
/// (coefficient sequences compared low-degree-first).
fn canonical_modulus(k: usize) -> u64 {
    let mut best: Option<(u64, u64)> = None; // (reversed key, poly)
    for low in 0..(1u64 << k) {
        let poly = low | 1 << k;
        if !is_irreducible(poly) {
            continue;
        }
        let key = poly.reverse_bits() >> (63 - k);
        if best.is_none_or(|(bk, _)| key < bk) {
            best = Some((key, poly));
        }
    }
    best.expect("an irreducible polynomial exists for every degree").1
}
