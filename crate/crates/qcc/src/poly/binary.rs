//! Dense polynomials over F₂, bit-packed little-endian.
//!
//! Bit `i` of limb `j` is the coefficient of `X^(64j+i)`. The limb vector
//! never has a zero top limb, so the zero polynomial is the empty vector
//! and `degree()` returns `None` for it rather than an integer sentinel.
//!
//! Besides plain F₂[X] arithmetic this type carries the cyclotomic-ring
//! operations modulo `Xⁿ−1`: `ring_mul` and `ring_reverse` (substitution
//! of `X⁻¹` for `X`).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("element is not invertible modulo the given modulus (gcd != 1)")]
    NonInvertible,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("CRT moduli are not pairwise coprime")]
    NonCoprimeModuli,
    #[error("malformed polynomial encoding: {0}")]
    BadEncoding(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryPoly {
    limbs: Vec<u64>,
}

impl BinaryPoly {
    pub fn zero() -> Self {
        Self { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { limbs: vec![1] }
    }

    /// The monomial `X^d`.
    pub fn monomial(d: usize) -> Self {
        let mut p = Self::zero();
        p.set_coeff(d, true);
        p
    }

    /// `X + 1` (equal to `X − 1` in characteristic 2).
    pub fn x_plus_one() -> Self {
        Self { limbs: vec![0b11] }
    }

    /// `Xⁿ − 1`, i.e. `Xⁿ + 1`.
    pub fn xn_minus_one(n: usize) -> Self {
        let mut p = Self::monomial(n);
        p.set_coeff(0, true);
        p
    }

    /// Lowest 64 coefficients packed in a word (degree ≤ 63 polynomials).
    pub fn from_word(bits: u64) -> Self {
        let mut p = Self { limbs: vec![bits] };
        p.normalize();
        p
    }

    /// Packed low word; panics if the degree exceeds 63.
    pub fn to_word(&self) -> u64 {
        assert!(self.limbs.len() <= 1, "polynomial does not fit in one word");
        self.limbs.first().copied().unwrap_or(0)
    }

    pub fn from_support(exponents: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exponents {
            p.set_coeff(e, !p.coeff(e));
        }
        p
    }

    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (j, &w) in self.limbs.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                out.push(64 * j + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = self.limbs.last()?;
        Some(64 * (self.limbs.len() - 1) + (63 - top.leading_zeros() as usize))
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs
            .get(i / 64)
            .is_some_and(|w| w >> (i % 64) & 1 != 0)
    }

    pub fn set_coeff(&mut self, i: usize, value: bool) {
        let (limb, bit) = (i / 64, i % 64);
        if value {
            if self.limbs.len() <= limb {
                self.limbs.resize(limb + 1, 0);
            }
            self.limbs[limb] |= 1 << bit;
        } else if self.limbs.len() > limb {
            self.limbs[limb] &= !(1 << bit);
            self.normalize();
        }
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut limbs = vec![0u64; self.limbs.len().max(rhs.limbs.len())];
        for (i, slot) in limbs.iter_mut().enumerate() {
            *slot = self.limbs.get(i).copied().unwrap_or(0)
                ^ rhs.limbs.get(i).copied().unwrap_or(0);
        }
        let mut out = Self { limbs };
        out.normalize();
        out
    }

    /// `self · X^s`.
    pub fn shl(&self, s: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (limb_shift, bit_shift) = (s / 64, s % 64);
        let mut limbs = vec![0u64; self.limbs.len() + limb_shift + 1];
        for (i, &w) in self.limbs.iter().enumerate() {
            limbs[i + limb_shift] ^= w << bit_shift;
            if bit_shift != 0 {
                limbs[i + limb_shift + 1] ^= w >> (64 - bit_shift);
            }
        }
        let mut out = Self { limbs };
        out.normalize();
        out
    }

    /// Carry-less product in F₂[X].
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut limbs = vec![0u64; self.limbs.len() + rhs.limbs.len()];
        for (j, &w) in self.limbs.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let s = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let shift = 64 * j + s;
                let (ls, bs) = (shift / 64, shift % 64);
                for (i, &r) in rhs.limbs.iter().enumerate() {
                    limbs[i + ls] ^= r << bs;
                    if bs != 0 {
                        limbs[i + ls + 1] ^= r >> (64 - bs);
                    }
                }
            }
        }
        let mut out = Self { limbs };
        out.normalize();
        out
    }

    /// Long division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let s = dr - dd;
            q.set_coeff(s, true);
            r = r.add(&divisor.shl(s));
        }
        Ok((q, r))
    }

    pub fn rem(&self, modulus: &Self) -> Result<Self, PolyError> {
        Ok(self.div_rem(modulus)?.1)
    }

    pub fn divides(&self, other: &Self) -> bool {
        match other.rem(self) {
            Ok(r) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic greatest common divisor. Errors if both inputs are zero.
    pub fn gcd(&self, rhs: &Self) -> Result<Self, PolyError> {
        if self.is_zero() && rhs.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a) // nonzero F2 polynomials are monic
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·self + t·rhs = g = gcd`.
    pub fn ext_gcd(&self, rhs: &Self) -> Result<(Self, Self, Self), PolyError> {
        if self.is_zero() && rhs.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            (r0, r1) = (r1, r);
            (s0, s1) = (s1.clone(), s0.add(&q.mul(&s1)));
            (t0, t1) = (t1.clone(), t0.add(&q.mul(&t1)));
        }
        Ok((r0, s0, t0))
    }

    /// Inverse of `self` modulo `m`; errors when `gcd(self, m) ≠ 1`.
    pub fn inv_mod(&self, m: &Self) -> Result<Self, PolyError> {
        let (g, s, _) = self.ext_gcd(m)?;
        if !g.is_one() {
            return Err(PolyError::NonInvertible);
        }
        s.rem(m)
    }

    /// Product in the cyclotomic ring F₂[X]/(Xⁿ−1): exponents fold mod n.
    pub fn ring_mul(&self, rhs: &Self, n: usize) -> Self {
        debug_assert!(self.degree().is_none_or(|d| d < n));
        debug_assert!(rhs.degree().is_none_or(|d| d < n));
        let prod = self.mul(rhs);
        let mut out = Self::zero();
        for e in prod.support() {
            let t = e % n;
            out.set_coeff(t, !out.coeff(t));
        }
        out
    }

    /// Substitute `X⁻¹` for `X` modulo `Xⁿ−1`: the coefficient of `X^i`
    /// moves to `X^((n−i) mod n)`.
    pub fn ring_reverse(&self, n: usize) -> Self {
        let mut out = Self::zero();
        for e in self.support() {
            let t = (n - e % n) % n;
            out.set_coeff(t, !out.coeff(t));
        }
        out
    }

    /// Compare coefficient sequences low-degree-first (c₀ first).
    pub fn cmp_lex_low_first(&self, rhs: &Self) -> std::cmp::Ordering {
        let top = self.degree().max(rhs.degree()).map_or(0, |d| d + 1);
        for i in 0..top {
            match (self.coeff(i), rhs.coeff(i)) {
                (false, true) => return std::cmp::Ordering::Less,
                (true, false) => return std::cmp::Ordering::Greater,
                _ => {}
            }
        }
        std::cmp::Ordering::Equal
    }

    /// Value order on the packed little-endian bit string.
    pub fn cmp_value(&self, rhs: &Self) -> std::cmp::Ordering {
        self.limbs
            .len()
            .cmp(&rhs.limbs.len())
            .then_with(|| self.limbs.iter().rev().cmp(rhs.limbs.iter().rev()))
    }

    /// Hex encoding of the little-endian coefficient bytes: bit `i` of byte
    /// `j` is the coefficient of `X^(8j+i)`. Zero encodes as the empty
    /// string.
    pub fn to_hex(&self) -> String {
        let deg = match self.degree() {
            None => return String::new(),
            Some(d) => d,
        };
        let nbytes = deg / 8 + 1;
        let mut s = String::with_capacity(2 * nbytes);
        for j in 0..nbytes {
            let byte = (self.limbs[j / 8] >> (8 * (j % 8))) as u8;
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }

    pub fn from_hex(s: &str) -> Result<Self, PolyError> {
        if !s.len().is_multiple_of(2) {
            return Err(PolyError::BadEncoding(format!(
                "odd hex length in {s:?}"
            )));
        }
        let mut p = Self::zero();
        for (j, chunk) in s.as_bytes().chunks(2).enumerate() {
            let text = std::str::from_utf8(chunk)
                .map_err(|_| PolyError::BadEncoding(s.to_string()))?;
            let byte = u8::from_str_radix(text, 16)
                .map_err(|_| PolyError::BadEncoding(s.to_string()))?;
            for i in 0..8 {
                if byte >> i & 1 != 0 {
                    p.set_coeff(8 * j + i, true);
                }
            }
        }
        Ok(p)
    }

    /// Parse a human-readable sum of monomials, e.g. `x^4+x+1` or `x-1`
    /// (minus and plus coincide over F₂).
    pub fn parse_expr(s: &str) -> Result<Self, PolyError> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(PolyError::BadEncoding("empty polynomial".into()));
        }
        let mut p = Self::zero();
        for term in cleaned.replace('-', "+").split('+') {
            let e = if term == "1" {
                0
            } else if term == "x" || term == "X" {
                1
            } else if let Some(rest) = term.strip_prefix("x^").or(term.strip_prefix("X^")) {
                rest.parse::<usize>()
                    .map_err(|_| PolyError::BadEncoding(s.to_string()))?
            } else if term == "0" {
                continue;
            } else {
                return Err(PolyError::BadEncoding(s.to_string()));
            };
            p.set_coeff(e, !p.coeff(e));
        }
        Ok(p)
    }
}

impl fmt::Display for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = self.support();
        terms.reverse();
        let rendered: Vec<String> = terms
            .iter()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect();
        write!(f, "{}", rendered.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(expr: &str) -> BinaryPoly {
        BinaryPoly::parse_expr(expr).unwrap()
    }

    #[test]
    fn degree_and_zero_sentinel() {
        assert_eq!(BinaryPoly::zero().degree(), None);
        assert_eq!(BinaryPoly::one().degree(), Some(0));
        assert_eq!(BinaryPoly::monomial(70).degree(), Some(70));
    }

    #[test]
    fn self_plus_self_is_zero() {
        let p = poly("x^5+x^2+1");
        assert!(p.add(&p).is_zero());
    }

    #[test]
    fn ring_mul_wraps_x5() {
        // X⁴ · X ≡ 1 mod X⁵−1
        let r = BinaryPoly::monomial(4).ring_mul(&BinaryPoly::monomial(1), 5);
        assert!(r.is_one());
    }

    #[test]
    fn ring_mul_identity() {
        let v = poly("x^3+x+1");
        assert_eq!(BinaryPoly::one().ring_mul(&v, 5), v);
    }

    #[test]
    fn ring_mul_full_product_vanishes() {
        // (X+1)(X⁴+X³+X²+X+1) = X⁵−1 ≡ 0 mod X⁵−1
        let r = poly("x+1").ring_mul(&poly("x^4+x^3+x^2+x+1"), 5);
        assert!(r.is_zero());
    }

    #[test]
    fn ring_reverse_examples() {
        assert_eq!(BinaryPoly::monomial(2).ring_reverse(5), BinaryPoly::monomial(3));
        assert!(BinaryPoly::one().ring_reverse(7).is_one());
    }

    #[test]
    fn gcd_examples() {
        let xn1 = BinaryPoly::xn_minus_one(5);
        assert_eq!(xn1.gcd(&poly("x+1")).unwrap(), poly("x+1"));
        assert!(poly("x^3+x+1").gcd(&BinaryPoly::one()).unwrap().is_one());
        assert_eq!(
            BinaryPoly::zero().gcd(&BinaryPoly::zero()),
            Err(PolyError::GcdOfZeros)
        );
    }

    #[test]
    fn inv_mod_examples() {
        let m = BinaryPoly::xn_minus_one(5);
        // X · X⁴ = X⁵ ≡ 1
        assert_eq!(
            BinaryPoly::monomial(1).inv_mod(&m).unwrap(),
            BinaryPoly::monomial(4)
        );
        assert!(BinaryPoly::one().inv_mod(&m).unwrap().is_one());
        // X+1 divides X⁵−1, so it is not invertible there
        assert_eq!(poly("x+1").inv_mod(&m), Err(PolyError::NonInvertible));
    }

    #[test]
    fn hex_round_trip_and_zero() {
        let p = poly("x^9+x^3+1");
        assert_eq!(BinaryPoly::from_hex(&p.to_hex()).unwrap(), p);
        assert_eq!(BinaryPoly::zero().to_hex(), "");
        assert!(BinaryPoly::from_hex("").unwrap().is_zero());
        assert_eq!(poly("x+1").to_hex(), "03");
    }

    #[test]
    fn display_matches_convention() {
        assert_eq!(poly("x^4+x^3+x^2+x+1").to_string(), "x^4+x^3+x^2+x+1");
        assert_eq!(poly("x-1").to_string(), "x+1");
        assert_eq!(BinaryPoly::zero().to_string(), "0");
        assert_eq!(BinaryPoly::one().to_string(), "1");
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = BinaryPoly> {
        proptest::collection::vec(any::<bool>(), 0..=max_deg)
            .prop_map(|bits| {
                let mut p = BinaryPoly::zero();
                for (i, b) in bits.into_iter().enumerate() {
                    p.set_coeff(i, b);
                }
                p
            })
    }

    proptest! {
        #[test]
        fn div_rem_reconstructs(a in arb_poly(40), b in arb_poly(20)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a);
            if let Some(dr) = r.degree() {
                prop_assert!(dr < b.degree().unwrap());
            }
        }

        #[test]
        fn reverse_is_ring_involution(a in arb_poly(16)) {
            for n in [3usize, 5, 7, 17] {
                let reduced = a.rem(&BinaryPoly::xn_minus_one(n)).unwrap();
                prop_assert_eq!(reduced.ring_reverse(n).ring_reverse(n), reduced);
            }
        }

        #[test]
        fn reverse_is_ring_homomorphism(a in arb_poly(16), b in arb_poly(16)) {
            for n in [3usize, 5, 7, 17] {
                let xn = BinaryPoly::xn_minus_one(n);
                let u = a.rem(&xn).unwrap();
                let v = b.rem(&xn).unwrap();
                prop_assert_eq!(
                    u.ring_mul(&v, n).ring_reverse(n),
                    u.ring_reverse(n).ring_mul(&v.ring_reverse(n), n)
                );
            }
        }

        #[test]
        fn inverse_multiplies_back(a in arb_poly(12), m in arb_poly(12)) {
            prop_assume!(m.degree().is_some_and(|d| d >= 1));
            let red = a.rem(&m).unwrap();
            if let Ok(inv) = red.inv_mod(&m) {
                prop_assert!(red.mul(&inv).rem(&m).unwrap().is_one());
            }
        }

        // Coefficient of X^k in u(X)·v(X⁻¹) equals the inner product uᵀNᵏv
        // where N is the right cyclic shift.
        #[test]
        fn product_coefficients_are_shift_dots(a in arb_poly(16), b in arb_poly(16)) {
            for n in [3usize, 5, 7, 17] {
                let xn = BinaryPoly::xn_minus_one(n);
                let u = a.rem(&xn).unwrap();
                let v = b.rem(&xn).unwrap();
                let prod = u.ring_mul(&v.ring_reverse(n), n);
                for k in 0..n {
                    let mut dot = false;
                    for j in 0..n {
                        dot ^= u.coeff((j + k) % n) & v.coeff(j);
                    }
                    prop_assert_eq!(prod.coeff(k), dot);
                }
            }
        }
    }
}
