use std::fmt;

use crate::error::{Error, Result};
use crate::residue::{self, Residue};

/// An element of `Z/2^m[x]/(x^p - 1)`; `coeffs[i]` is the coefficient of `x^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicPoly {
    coeffs: Vec<u64>,
    m: u32,
}

/// Image of a polynomial under the CRT map: `u = a(1)` and `v = a mod M_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtPair {
    pub u: Residue,
    /// `p - 1` coefficients, low degree first.
    pub v: Vec<u64>,
}

impl CyclicPoly {
    /// Reduces every coefficient mod `2^m`. The length is `p`.
    pub fn new(mut coeffs: Vec<u64>, m: u32) -> Result<Self> {
        residue::check_bits(m)?;
        if coeffs.is_empty() {
            return Err(Error::Param(
                "a cyclic polynomial needs at least one coefficient".into(),
            ));
        }
        let mask = residue::mask(m);
        coeffs.iter_mut().for_each(|c| *c &= mask);
        Ok(Self { coeffs, m })
    }

    pub fn from_residues(coeffs: &[Residue]) -> Result<Self> {
        let m = coeffs
            .first()
            .ok_or_else(|| Error::Param("empty coefficient list".into()))?
            .bits();
        if coeffs.iter().any(|c| c.bits() != m) {
            return Err(Error::Param("coefficients with mixed moduli".into()));
        }
        Self::new(coeffs.iter().map(|c| c.value()).collect(), m)
    }

    pub(crate) fn from_canonical(coeffs: Vec<u64>, m: u32) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c <= residue::mask(m)));
        Self { coeffs, m }
    }

    /// Parses the digit form `a_{p-1} ... a_1 a_0` used by the
    /// multiplication table, e.g. `"112"` for `x^2 + x + 2`. Only for
    /// moduli `2^m <= 10`.
    pub fn from_digits(s: &str, m: u32) -> Result<Self> {
        residue::check_bits(m)?;
        if m > 3 {
            return Err(Error::Param("digit strings need 2^m <= 10".into()));
        }
        let coeffs = s
            .chars()
            .rev()
            .map(|ch| {
                ch.to_digit(10)
                    .map(u64::from)
                    .filter(|&d| d <= residue::mask(m))
                    .ok_or_else(|| Error::Param(format!("bad digit {ch:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs, m)
    }

    /// Inverse of [`from_digits`](Self::from_digits). Coefficients above 9
    /// are written in decimal and separated by dots.
    pub fn to_digits(&self) -> String {
        let sep = if self.m <= 3 { "" } else { "." };
        self.coeffs
            .iter()
            .rev()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(sep)
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Residue {
        Residue::from_canonical(self.coeffs[i], self.m)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    #[inline]
    fn mask(&self) -> u64 {
        residue::mask(self.m)
    }

    /// `a(1) mod 2^m`.
    pub fn eval_at_one(&self) -> Residue {
        let s = self.coeffs.iter().fold(0u64, |acc, &c| acc.wrapping_add(c));
        Residue::from_canonical(s & self.mask(), self.m)
    }

    fn check_same(&self, rhs: &Self) -> Result<()> {
        if self.p() != rhs.p() || self.m != rhs.m {
            return Err(Error::Param(format!(
                "length/modulus mismatch: ({}, 2^{}) vs ({}, 2^{})",
                self.p(),
                self.m,
                rhs.p(),
                rhs.m
            )));
        }
        Ok(())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(u64, u64) -> u64) -> Result<Self> {
        self.check_same(rhs)?;
        let mask = self.mask();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| f(a, b) & mask)
            .collect();
        Ok(Self::from_canonical(coeffs, self.m))
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, u64::wrapping_add)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, u64::wrapping_sub)
    }

    /// Cyclic convolution, `a(x) b(x) mod (x^p - 1)`.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let p = self.p();
        let mut out = vec![0u64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            // Add a * rhs rotated up by i.
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let k = if i + j >= p { i + j - p } else { i + j };
                out[k] = out[k].wrapping_add(a.wrapping_mul(b));
            }
        }
        let mask = self.mask();
        out.iter_mut().for_each(|c| *c &= mask);
        Ok(Self::from_canonical(out, self.m))
    }

    pub fn neg(&self) -> Self {
        let mask = self.mask();
        Self::from_canonical(
            self.coeffs
                .iter()
                .map(|&c| c.wrapping_neg() & mask)
                .collect(),
            self.m,
        )
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, c: Residue) -> Result<Self> {
        if c.bits() != self.m {
            return Err(Error::Param("scalar has the wrong modulus".into()));
        }
        let mask = self.mask();
        Ok(Self::from_canonical(
            self.coeffs
                .iter()
                .map(|&a| a.wrapping_mul(c.value()) & mask)
                .collect(),
            self.m,
        ))
    }

    /// Square-and-multiply; `a^0` is the ambient identity `1`.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut one = vec![0; self.p()];
        one[0] = 1;
        let mut acc = Self::from_canonical(one, self.m);
        let mut base = self.clone();
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

    /// Moves the coefficient of `x^i` to `x^{(i + t) mod p}`; negative `t`
    /// rotates down.
    pub fn cyclic_shift(&self, t: i64) -> Self {
        let p = self.p();
        let t = t.rem_euclid(p as i64) as usize;
        let mut coeffs = self.coeffs.clone();
        coeffs.rotate_right(t);
        Self::from_canonical(coeffs, self.m)
    }

    /// `Phi(a)`: `u = a(1)`, and `v = a mod M_p` obtained by substituting
    /// `x^{p-1} = -(x^{p-2} + ... + 1)`.
    pub fn phi(&self) -> CrtPair {
        let p = self.p();
        let mask = self.mask();
        let top = self.coeffs[p - 1];
        let v = self.coeffs[..p - 1]
            .iter()
            .map(|&c| c.wrapping_sub(top) & mask)
            .collect();
        CrtPair {
            u: self.eval_at_one(),
            v,
        }
    }
}

macro_rules! poly_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &CyclicPoly {
            type Output = CyclicPoly;
            fn $method(self, rhs: &CyclicPoly) -> CyclicPoly {
                self.$checked(rhs)
                    .expect("cyclic polynomial shape mismatch")
            }
        }
    };
}

poly_op!(Add, add, try_add);
poly_op!(Sub, sub, try_sub);
poly_op!(Mul, mul, try_mul);

impl fmt::Debug for CyclicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicPoly({:?} mod 2^{})", self.coeffs, self.m)
    }
}

impl fmt::Display for CyclicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digits())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> CyclicPoly {
        CyclicPoly::from_digits(s, 2).unwrap()
    }

    #[test]
    fn digit_strings() {
        let e = d("112");
        assert_eq!(e.coeffs(), &[2, 1, 1]);
        assert_eq!(e.to_digits(), "112");
        assert!(CyclicPoly::from_digits("4", 2).is_err());
        assert!(CyclicPoly::from_digits("1a", 2).is_err());
        let wide = CyclicPoly::new(vec![51, 52, 51], 8).unwrap();
        assert_eq!(wide.to_digits(), "51.52.51");
    }

    #[test]
    fn add_sub() {
        assert_eq!(&d("112") + &d("000"), d("112"));
        // x^2 + 2x + 1 - (x^2 + x + 2) = x + 3, checked coefficientwise mod 4
        let expect: Vec<u64> = [1i64 - 2, 2 - 1, 1 - 1]
            .iter()
            .map(|c| c.rem_euclid(4) as u64)
            .collect();
        assert_eq!((&d("121") - &d("112")).coeffs(), expect.as_slice());
        assert_eq!(&d("121") - &d("112"), d("013"));
        assert!(d("12").try_add(&d("112")).is_err());
        let other_m = CyclicPoly::new(vec![0, 0, 0], 8).unwrap();
        assert!(d("112").try_mul(&other_m).is_err());
    }

    #[test]
    fn table_products() {
        assert_eq!(&d("310") * &d("130"), d("332"));
        assert_eq!(&d("022") * &d("022"), d("000"));
        assert_eq!(d("121").pow(2), d("211"));
        assert_eq!(d("121").pow(1), d("121"));
        assert_eq!(d("121").pow(0), d("001"));
    }

    #[test]
    fn shifts() {
        assert_eq!(d("112").cyclic_shift(1), d("121"));
        assert_eq!(d("112").cyclic_shift(0), d("112"));
        assert_eq!(d("112").cyclic_shift(3), d("112"));
        assert_eq!(d("112").cyclic_shift(-1), d("211"));
    }

    #[test]
    fn phi_basics() {
        let z = d("000").phi();
        assert_eq!((z.u.value(), z.v), (0, vec![0, 0]));
        let mp = CyclicPoly::new(vec![1; 5], 8).unwrap().phi();
        assert_eq!((mp.u.value(), mp.v), (5, vec![0; 4]));
        let e = d("112").phi();
        assert_eq!((e.u.value(), e.v), (0, vec![1, 0]));
    }
}
