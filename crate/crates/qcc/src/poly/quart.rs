//! Dense polynomials over F₄, stored as a pair of F₂ polynomials:
//! `p = part0(X) + η·part1(X)`.
//!
//! The pair identification `(a, b) ↔ a + ηb` is the bridge between
//! symplectic pairs over F₂ and single polynomials over F₄; `join` and
//! `split` realise the bijection. Conjugation acts coefficientwise:
//! `sigma(p0 + ηp1) = (p0 + p1) + ηp1`.

use std::fmt;

use crate::field::F4;

use super::binary::{BinaryPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuartPoly {
    part0: BinaryPoly,
    part1: BinaryPoly,
}

impl QuartPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self { part0: BinaryPoly::one(), part1: BinaryPoly::zero() }
    }

    /// The constant η.
    pub fn eta() -> Self {
        Self { part0: BinaryPoly::zero(), part1: BinaryPoly::one() }
    }

    pub fn xn_minus_one(n: usize) -> Self {
        Self::from_f2(BinaryPoly::xn_minus_one(n))
    }

    /// Embed an F₂ polynomial.
    pub fn from_f2(p: BinaryPoly) -> Self {
        Self { part0: p, part1: BinaryPoly::zero() }
    }

    /// The pair identification `(a, b) ↦ a + ηb`.
    pub fn join(a: BinaryPoly, b: BinaryPoly) -> Self {
        Self { part0: a, part1: b }
    }

    /// Inverse of `join`.
    pub fn split(self) -> (BinaryPoly, BinaryPoly) {
        (self.part0, self.part1)
    }

    pub fn part0(&self) -> &BinaryPoly {
        &self.part0
    }

    pub fn part1(&self) -> &BinaryPoly {
        &self.part1
    }

    pub fn is_zero(&self) -> bool {
        self.part0.is_zero() && self.part1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.part0.is_one() && self.part1.is_zero()
    }

    /// `true` when every coefficient lies in F₂.
    pub fn is_f2(&self) -> bool {
        self.part1.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.part0.degree().max(self.part1.degree())
    }

    pub fn coeff(&self, i: usize) -> F4 {
        F4::from_bits(self.part0.coeff(i), self.part1.coeff(i))
    }

    pub fn set_coeff(&mut self, i: usize, c: F4) {
        self.part0.set_coeff(i, c.bit0());
        self.part1.set_coeff(i, c.bit1());
    }

    /// Number of nonzero F₄ coefficients; equals the joint weight of the
    /// split pair.
    pub fn weight(&self) -> usize {
        self.part0.add(&self.part1).support().len()
            + self
                .part0
                .support()
                .iter()
                .filter(|&&e| self.part1.coeff(e))
                .count()
    }

    /// Coefficientwise Frobenius conjugation (swaps η and η').
    pub fn sigma(&self) -> Self {
        Self {
            part0: self.part0.add(&self.part1),
            part1: self.part1.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            part0: self.part0.add(&rhs.part0),
            part1: self.part1.add(&rhs.part1),
        }
    }

    pub fn scale(&self, c: F4) -> Self {
        match c {
            F4::ZERO => Self::zero(),
            F4::ONE => self.clone(),
            F4::ETA => Self {
                // η(p0 + ηp1) = p1 + η(p0 + p1)
                part0: self.part1.clone(),
                part1: self.part0.add(&self.part1),
            },
            _ => Self {
                // η'(p0 + ηp1) = (p0 + p1) + ηp0
                part0: self.part0.add(&self.part1),
                part1: self.part0.clone(),
            },
        }
    }

    pub fn shl(&self, s: usize) -> Self {
        Self { part0: self.part0.shl(s), part1: self.part1.shl(s) }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // (a0 + ηa1)(b0 + ηb1) = (a0b0 + a1b1) + η(a0b1 + a1b0 + a1b1)
        let a0b0 = self.part0.mul(&rhs.part0);
        let a0b1 = self.part0.mul(&rhs.part1);
        let a1b0 = self.part1.mul(&rhs.part0);
        let a1b1 = self.part1.mul(&rhs.part1);
        Self {
            part0: a0b0.add(&a1b1),
            part1: a0b1.add(&a1b0).add(&a1b1),
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = divisor.coeff(dd).inverse().expect("leading coeff nonzero");
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let c = r.coeff(dr) * lead_inv;
            q.set_coeff(dr - dd, c);
            r = r.add(&divisor.scale(c).shl(dr - dd));
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

    /// Rescale so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.degree() {
            None => Self::zero(),
            Some(d) => self.scale(self.coeff(d).inverse().unwrap()),
        }
    }

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
        Ok(a.monic())
    }

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

    pub fn inv_mod(&self, m: &Self) -> Result<Self, PolyError> {
        let (g, s, _) = self.ext_gcd(m)?;
        if g.degree() != Some(0) {
            return Err(PolyError::NonInvertible);
        }
        // normalise gcd to 1 before using the cofactor
        let c = g.coeff(0).inverse().unwrap();
        s.scale(c).rem(m)
    }

    pub fn ring_mul(&self, rhs: &Self, n: usize) -> Self {
        let prod = self.mul(rhs);
        let mut out = Self::zero();
        for i in 0..=prod.degree().map_or(0, |d| d) {
            let c = prod.coeff(i);
            if !c.is_zero() {
                let t = i % n;
                out.set_coeff(t, out.coeff(t) + c);
            }
        }
        out
    }

    pub fn ring_reverse(&self, n: usize) -> Self {
        Self {
            part0: self.part0.ring_reverse(n),
            part1: self.part1.ring_reverse(n),
        }
    }

    /// `f4:<part0-hex>:<part1-hex>` encoding.
    pub fn to_hex_parts(&self) -> (String, String) {
        (self.part0.to_hex(), self.part1.to_hex())
    }
}

impl fmt::Display for QuartPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let deg = self.degree().unwrap();
        let mut terms = Vec::new();
        for e in (0..=deg).rev() {
            let c = self.coeff(e);
            if c.is_zero() {
                continue;
            }
            let coeff_str = match c {
                F4::ONE => String::new(),
                other => other.to_string(),
            };
            let var = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            terms.push(match (coeff_str.is_empty(), var.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => var,
                (false, true) => coeff_str,
                (false, false) => format!("{coeff_str}{var}"),
            });
        }
        write!(f, "{}", terms.join("+"))
    }
}
