//! The four-element field F₄ = F₂(η) where η² = η + 1.
//!
//! Elements are encoded in two bits as `b0 + η·b1`:
//!
//! | code | element |
//! |------|---------|
//! | 0b00 | 0       |
//! | 0b01 | 1       |
//! | 0b10 | η       |
//! | 0b11 | η' = η+1|
//!
//! Addition is XOR of the codes. The conjugation `sigma` swaps η and η'
//! and fixes the prime subfield.

use std::fmt;
use std::ops::{Add, Mul};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct F4(u8);

impl F4 {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);
    pub const ETA: Self = Self(2);
    pub const ETA_PRIME: Self = Self(3);

    /// Build from a two-bit code (masked).
    pub const fn new(code: u8) -> Self {
        Self(code & 0b11)
    }

    /// Build from the (b0, b1) pair of `b0 + η·b1`.
    pub const fn from_bits(b0: bool, b1: bool) -> Self {
        Self((b0 as u8) | ((b1 as u8) << 1))
    }

    pub const fn code(self) -> u8 {
        self.0
    }

    /// Coefficient of 1 in the `b0 + η·b1` decomposition.
    pub const fn bit0(self) -> bool {
        self.0 & 1 != 0
    }

    /// Coefficient of η.
    pub const fn bit1(self) -> bool {
        self.0 & 2 != 0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Frobenius conjugation: swaps η ↔ η', fixes 0 and 1.
    pub const fn sigma(self) -> Self {
        if self.0 & 2 != 0 {
            Self(self.0 ^ 1)
        } else {
            self
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub const fn inverse(self) -> Option<Self> {
        match self.0 {
            0 => None,
            1 => Some(Self::ONE),
            2 => Some(Self::ETA_PRIME), // η·η' = 1
            _ => Some(Self::ETA),
        }
    }
}

impl Add for F4 {
    type Output = F4;

    // field addition in characteristic 2 is XOR of the codes
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: F4) -> F4 {
        F4(self.0 ^ rhs.0)
    }
}

impl Mul for F4 {
    type Output = F4;

    fn mul(self, rhs: F4) -> F4 {
        // η·η = η+1, η·η' = 1, η'·η' = η
        const MUL: [[u8; 4]; 4] = [
            [0, 0, 0, 0],
            [0, 1, 2, 3],
            [0, 2, 3, 1],
            [0, 3, 1, 2],
        ];
        F4(MUL[self.0 as usize][rhs.0 as usize])
    }
}

impl fmt::Display for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "0"),
            1 => write!(f, "1"),
            2 => write!(f, "η"),
            _ => write!(f, "η'"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relations() {
        // η² = η + 1
        assert_eq!(F4::ETA * F4::ETA, F4::ETA + F4::ONE);
        // η·η' = 1
        assert_eq!(F4::ETA * F4::ETA_PRIME, F4::ONE);
        // η + η' = 1
        assert_eq!(F4::ETA + F4::ETA_PRIME, F4::ONE);
    }

    #[test]
    fn sigma_is_involution_and_fixes_f2() {
        for code in 0..4 {
            let x = F4::new(code);
            assert_eq!(x.sigma().sigma(), x);
        }
        assert_eq!(F4::ZERO.sigma(), F4::ZERO);
        assert_eq!(F4::ONE.sigma(), F4::ONE);
        assert_eq!(F4::ETA.sigma(), F4::ETA_PRIME);
    }

    #[test]
    fn sigma_is_field_automorphism() {
        for a in 0..4 {
            for b in 0..4 {
                let (x, y) = (F4::new(a), F4::new(b));
                assert_eq!((x + y).sigma(), x.sigma() + y.sigma());
                assert_eq!((x * y).sigma(), x.sigma() * y.sigma());
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(F4::ZERO.inverse(), None);
        for code in 1..4 {
            let x = F4::new(code);
            assert_eq!(x * x.inverse().unwrap(), F4::ONE);
        }
    }

    #[test]
    fn characteristic_two() {
        for code in 0..4 {
            let x = F4::new(code);
            assert_eq!(x + x, F4::ZERO);
        }
    }
}
