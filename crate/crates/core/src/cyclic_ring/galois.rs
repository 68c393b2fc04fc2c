use std::fmt;

use crate::cyclic_ring::{gf2, CyclicPoly, RingParams};
use crate::error::{Error, Result};
use crate::residue::Residue;

/// An element of `R(2^m, p)`: a cyclic polynomial whose coefficients sum to
/// zero mod `2^m`.
///
/// The subring is closed under the ambient `+` and `*`, but its identity is
/// [`RingParams::one`], not the constant `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaloisElement(CyclicPoly);

impl GaloisElement {
    pub fn new(poly: CyclicPoly) -> Result<Self> {
        if poly.eval_at_one().value() != 0 {
            return Err(Error::Param(format!(
                "{poly:?} is not in R(2^m, p): coefficient sum is {}",
                poly.eval_at_one()
            )));
        }
        Ok(Self(poly))
    }

    pub(crate) fn from_poly_unchecked(poly: CyclicPoly) -> Self {
        debug_assert_eq!(poly.eval_at_one().value(), 0);
        Self(poly)
    }

    pub fn as_poly(&self) -> &CyclicPoly {
        &self.0
    }

    pub fn into_poly(self) -> CyclicPoly {
        self.0
    }

    pub fn coeffs(&self) -> &[u64] {
        self.0.coeffs()
    }

    pub fn p(&self) -> usize {
        self.0.p()
    }

    pub fn m(&self) -> u32 {
        self.0.m()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.0.try_add(&rhs.0).map(Self)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.0.try_sub(&rhs.0).map(Self)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.0.try_mul(&rhs.0).map(Self)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.neg())
    }

    /// Multiplication by `s^t`, as a rotation.
    pub fn shift(&self, t: i64) -> Self {
        Self(self.0.cyclic_shift(t))
    }

    /// `self^n` with `self^0` equal to the identity of `R(2^m, p)`.
    pub fn pow(&self, n: u64, params: &RingParams) -> Self {
        let mut acc = params.one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// A unit iff its `M_p` coordinate is nonzero mod 2; `M_p` is irreducible
    /// over GF(2), so every nonzero residue there is invertible.
    pub fn is_unit(&self) -> bool {
        RingParams::v_bits(&self.0.phi().v) != 0
    }

    /// Inverse relative to [`RingParams::one`].
    ///
    /// The `M_p` coordinate is inverted mod 2 by extended Euclid over GF(2),
    /// mapped back into the ring, then Hensel-lifted with
    /// `b <- b (2e - a b)`, which doubles the 2-adic precision each round.
    pub fn inverse(&self, params: &RingParams) -> Result<Self> {
        if self.p() != params.p() || self.m() != params.m() {
            return Err(Error::Param(
                "element does not belong to these parameters".into(),
            ));
        }
        let v = RingParams::v_bits(&self.0.phi().v);
        let seed = gf2::inverse_mod(v, params.m_p_bits()).ok_or(Error::NotAUnit)?;
        let seed_v: Vec<u64> = (0..params.p() - 1).map(|i| (seed >> i) & 1).collect();
        let zero = Residue::from_canonical(0, params.m());
        let mut b = Self::from_poly_unchecked(params.phi_inverse(zero, &seed_v)?);

        let one = params.one();
        let two_e = &one + &one;
        let mut precision = 1;
        while precision < params.m() {
            b = &b * &(&two_e - &(self * &b));
            precision *= 2;
        }
        if self * &b != one {
            return Err(Error::NotAUnit);
        }
        Ok(b)
    }
}

macro_rules! galois_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &GaloisElement {
            type Output = GaloisElement;
            fn $method(self, rhs: &GaloisElement) -> GaloisElement {
                self.$checked(rhs).expect("ring element shape mismatch")
            }
        }
    };
}

galois_op!(Add, add, try_add);
galois_op!(Sub, sub, try_sub);
galois_op!(Mul, mul, try_mul);

impl fmt::Debug for GaloisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GaloisElement({:?} mod 2^{})",
            self.0.coeffs(),
            self.0.m()
        )
    }
}

impl fmt::Display for GaloisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r43() -> RingParams {
        RingParams::new(3, 2).unwrap()
    }

    fn d(s: &str) -> GaloisElement {
        GaloisElement::new(CyclicPoly::from_digits(s, 2).unwrap()).unwrap()
    }

    #[test]
    fn membership() {
        assert!(GaloisElement::new(CyclicPoly::from_digits("111", 2).unwrap()).is_err());
        assert!(GaloisElement::new(CyclicPoly::from_digits("112", 2).unwrap()).is_ok());
    }

    #[test]
    fn identity_and_shift() {
        let r = r43();
        assert_eq!(r.one(), d("112"));
        assert_eq!(r.shift_generator(), d("121"));
        assert_eq!(&d("121") * &d("112"), d("121"));

        let r58 = RingParams::new(5, 8).unwrap();
        assert_eq!(r58.shift_generator().coeffs(), &[51, 52, 51, 51, 51]);
        let e = r58.one();
        assert_eq!(&e * &e, e);
    }

    #[test]
    fn units() {
        let r = r43();
        assert!(r.one().is_unit());
        assert!(!d("022").is_unit());
        assert!(r.shift_generator().is_unit());
        assert!(matches!(d("022").inverse(&r), Err(Error::NotAUnit)));
        assert!(matches!(d("000").inverse(&r), Err(Error::NotAUnit)));
    }

    #[test]
    fn inverses_from_table() {
        let r = r43();
        assert_eq!(r.one().inverse(&r).unwrap(), r.one());
        assert_eq!(d("013").inverse(&r).unwrap(), d("301"));
        assert_eq!(d("310").inverse(&r).unwrap(), d("310"));
    }

    #[test]
    fn pow_zero_is_ring_identity() {
        let r = RingParams::new(5, 8).unwrap();
        let s = r.shift_generator();
        assert_eq!(s.pow(0, &r), r.one());
        assert_eq!(s.pow(5, &r), r.one());
        assert_eq!(s.pow(3, &r), r.shift_power(3));
        assert_eq!(r.shift_power(-1), s.pow(4, &r));
    }

    #[test]
    fn inverse_m1_and_m64() {
        for m in [1, 3, 64] {
            let r = RingParams::new(13, m).unwrap();
            let s = r.shift_generator();
            let a = &s - &r.one();
            let inv = a.inverse(&r).unwrap();
            assert_eq!(&a * &inv, r.one(), "m = {m}");
        }
    }
}
