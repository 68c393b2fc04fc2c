//! Exact arithmetic in `Z/2^m` for `1 <= m <= 64`.
//!
//! A residue is stored as its canonical representative in `[0, 2^m)`.
//! Reduction is a single mask, so for `m = 64` every operation is plain
//! wrapping machine arithmetic.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported modulus exponent.
pub const MAX_BITS: u32 = 64;

/// Bit mask `2^m - 1`.
#[inline]
pub fn mask(m: u32) -> u64 {
    debug_assert!((1..=MAX_BITS).contains(&m));
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

pub(crate) fn check_bits(m: u32) -> Result<()> {
    if (1..=MAX_BITS).contains(&m) {
        Ok(())
    } else {
        Err(Error::Param(format!(
            "modulus exponent m = {m} outside [1, 64]"
        )))
    }
}

/// Inverse of an odd `a` modulo `2^m`, on raw words.
///
/// Newton iteration `b <- b(2 - ab)` starting from `b = a`, which is already
/// correct to 3 bits because every odd square is 1 mod 8.
#[inline]
pub fn inv_odd_word(a: u64, m: u32) -> Option<u64> {
    if a & 1 == 0 {
        return None;
    }
    let mut b = a;
    let mut bits = 3;
    while bits < m {
        b = b.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(b)));
        bits *= 2;
    }
    Some(b & mask(m))
}

/// An element of `Z/2^m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    bits: u32,
}

impl Residue {
    /// Reduces `value` mod `2^m`.
    pub fn new(value: u64, m: u32) -> Result<Self> {
        check_bits(m)?;
        Ok(Self {
            value: value & mask(m),
            bits: m,
        })
    }

    pub(crate) fn from_canonical(value: u64, m: u32) -> Self {
        debug_assert_eq!(value & mask(m), value);
        Self { value, bits: m }
    }

    pub fn zero(m: u32) -> Result<Self> {
        Self::new(0, m)
    }

    pub fn one(m: u32) -> Result<Self> {
        Self::new(1, m)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    /// The modulus exponent `m`.
    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn is_unit(self) -> bool {
        self.value & 1 == 1
    }

    fn same_ring(self, rhs: Self) -> Result<()> {
        if self.bits == rhs.bits {
            Ok(())
        } else {
            Err(Error::Param(format!(
                "residues modulo 2^{} and 2^{} cannot be combined",
                self.bits, rhs.bits
            )))
        }
    }

    pub fn try_add(self, rhs: Self) -> Result<Self> {
        self.same_ring(rhs)?;
        Ok(Self::from_canonical(
            self.value.wrapping_add(rhs.value) & mask(self.bits),
            self.bits,
        ))
    }

    pub fn try_sub(self, rhs: Self) -> Result<Self> {
        self.try_add(-rhs)
    }

    pub fn try_mul(self, rhs: Self) -> Result<Self> {
        self.same_ring(rhs)?;
        Ok(Self::from_canonical(
            self.value.wrapping_mul(rhs.value) & mask(self.bits),
            self.bits,
        ))
    }

    /// Multiplicative inverse of an odd residue.
    pub fn inv_odd(self) -> Result<Self> {
        inv_odd_word(self.value, self.bits)
            .map(|v| Self::from_canonical(v, self.bits))
            .ok_or(Error::NotAUnit)
    }
}

macro_rules! residue_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for Residue {
            type Output = Residue;

            /// Panics if the operands live in different rings; use the
            /// `try_*` form to get an error instead.
            fn $method(self, rhs: Residue) -> Residue {
                self.$checked(rhs).expect("residue modulus mismatch")
            }
        }
    };
}

residue_op!(Add, add, try_add);
residue_op!(Sub, sub, try_sub);
residue_op!(Mul, mul, try_mul);

impl std::ops::Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue::from_canonical(self.value.wrapping_neg() & mask(self.bits), self.bits)
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod 2^{})", self.value, self.bits)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
