use crate::cyclic_ring::{CrtPair, CyclicPoly, GaloisElement};
use crate::error::{Error, Result};
use crate::residue::{self, Residue};

/// Largest `p` accepted: `M_p` must fit one 64-bit GF(2) word, and 61 is the
/// largest prime below 64 with primitive root 2.
pub const MAX_P: usize = 61;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative order of 2 modulo an odd `p > 1`.
pub fn order_of_two(p: u64) -> u64 {
    let mut x = 2 % p;
    let mut k = 1;
    while x != 1 {
        x = x * 2 % p;
        k += 1;
    }
    k
}

pub fn has_primitive_root_two(p: u64) -> bool {
    p > 2 && is_prime(p) && order_of_two(p) == p - 1
}

/// Validated `(p, m)` with the constants needed for the CRT maps.
///
/// Defines `Z/2^m[x]/(x^p - 1)` and its subring `R(2^m, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingParams {
    p: usize,
    m: u32,
    mask: u64,
    p_inv: u64,
    /// `(x - 1)(x^{p-2} + 2x^{p-3} + ... + (p-1))`, which equals `M_p(x) - p`.
    cofactor: Vec<u64>,
}

impl RingParams {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        residue::check_bits(m)?;
        if !is_prime(p) {
            return Err(Error::Param(format!("p = {p} is not prime")));
        }
        if p == 2 {
            return Err(Error::Param("p must be odd".into()));
        }
        if p as usize > MAX_P {
            return Err(Error::Param(format!(
                "p = {p} exceeds the supported maximum {MAX_P}"
            )));
        }
        let ord = order_of_two(p);
        if ord != p - 1 {
            return Err(Error::Param(format!(
                "2 has order {ord} modulo {p}, not {}; M_p is reducible mod 2",
                p - 1
            )));
        }
        let mask = residue::mask(m);
        let p_inv = residue::inv_odd_word(p, m).expect("odd p");

        // Expand (x - 1) * sum_{j=0}^{p-2} (p-1-j) x^j directly.
        let ramp: Vec<u64> = (0..p - 1).map(|j| p - 1 - j).collect();
        let mut cofactor = vec![0u64; p as usize];
        for (j, &c) in ramp.iter().enumerate() {
            cofactor[j + 1] = cofactor[j + 1].wrapping_add(c);
            cofactor[j] = cofactor[j].wrapping_sub(c);
        }
        cofactor.iter_mut().for_each(|c| *c &= mask);

        Ok(Self {
            p: p as usize,
            m,
            mask,
            p_inv,
            cofactor,
        })
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// `p^{-1}` in `Z/2^m`; this is also `beta(x)` in the Bezout identity.
    pub fn p_inv(&self) -> Residue {
        Residue::from_canonical(self.p_inv, self.m)
    }

    pub fn cofactor(&self) -> &[u64] {
        &self.cofactor
    }

    /// `alpha(x) = -p^{-1}(x^{p-2} + 2x^{p-3} + ... + (p-1))`, low degree first.
    ///
    /// Together with `beta = p^{-1}` it satisfies
    /// `(x - 1) alpha(x) + M_p(x) beta = 1` in `Z/2^m[x]`.
    pub fn alpha(&self) -> Vec<u64> {
        let neg_inv = self.p_inv.wrapping_neg();
        (0..self.p - 1)
            .map(|j| ((self.p - 1 - j) as u64).wrapping_mul(neg_inv) & self.mask)
            .collect()
    }

    /// `M_p(x) = x^{p-1} + ... + x + 1` as an ambient element.
    pub fn m_p(&self) -> CyclicPoly {
        CyclicPoly::from_canonical(vec![1; self.p], self.m)
    }

    /// `M_p` reduced mod 2, bit-packed.
    pub(crate) fn m_p_bits(&self) -> u64 {
        (1u64 << self.p) - 1
    }

    pub fn zero(&self) -> CyclicPoly {
        CyclicPoly::from_canonical(vec![0; self.p], self.m)
    }

    /// The ambient identity, the constant polynomial 1.
    pub fn ambient_one(&self) -> CyclicPoly {
        let mut c = vec![0; self.p];
        c[0] = 1;
        CyclicPoly::from_canonical(c, self.m)
    }

    pub fn poly(&self, coeffs: Vec<u64>) -> Result<CyclicPoly> {
        if coeffs.len() != self.p {
            return Err(Error::Param(format!(
                "expected {} coefficients, got {}",
                self.p,
                coeffs.len()
            )));
        }
        CyclicPoly::new(coeffs, self.m)
    }

    pub fn element(&self, coeffs: Vec<u64>) -> Result<GaloisElement> {
        GaloisElement::new(self.poly(coeffs)?)
    }

    fn check_poly(&self, a: &CyclicPoly) -> Result<()> {
        if a.p() == self.p && a.m() == self.m {
            Ok(())
        } else {
            Err(Error::Param(format!(
                "polynomial of length {} mod 2^{} does not belong to p = {}, m = {}",
                a.p(),
                a.m(),
                self.p,
                self.m
            )))
        }
    }

    /// `Phi(a) = (a mod (x - 1), a mod M_p)`.
    pub fn phi(&self, a: &CyclicPoly) -> Result<CrtPair> {
        self.check_poly(a)?;
        Ok(a.phi())
    }

    /// `Phi^{-1}(u, v) = p^{-1} [u M_p(x) - v(x) (x - 1)(x^{p-2} + ... + (p-1))]`.
    ///
    /// `v` may be shorter than `p - 1`; missing high coefficients are zero.
    pub fn phi_inverse(&self, u: Residue, v: &[u64]) -> Result<CyclicPoly> {
        if u.bits() != self.m {
            return Err(Error::Param("u has the wrong modulus".into()));
        }
        if v.len() > self.p - 1 {
            return Err(Error::Param(format!(
                "v must have degree <= p - 2 = {}, got {} coefficients",
                self.p - 2,
                v.len()
            )));
        }
        let mask = self.mask;
        let mut acc = vec![u.value(); self.p];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (j, &cj) in self.cofactor.iter().enumerate() {
                let k = (i + j) % self.p;
                acc[k] = acc[k].wrapping_sub(vi.wrapping_mul(cj));
            }
        }
        for c in &mut acc {
            *c = c.wrapping_mul(self.p_inv) & mask;
        }
        Ok(CyclicPoly::from_canonical(acc, self.m))
    }

    /// Identity of `R(2^m, p)`, `Phi^{-1}(0, 1)`.
    pub fn one(&self) -> GaloisElement {
        let zero = Residue::from_canonical(0, self.m);
        let e = self.phi_inverse(zero, &[1]).expect("valid CRT pair");
        GaloisElement::from_poly_unchecked(e)
    }

    /// `s(x) = Phi^{-1}(0, x)`; multiplying by it rotates coefficients up
    /// by one place.
    pub fn shift_generator(&self) -> GaloisElement {
        let zero = Residue::from_canonical(0, self.m);
        let s = self.phi_inverse(zero, &[0, 1]).expect("valid CRT pair");
        GaloisElement::from_poly_unchecked(s)
    }

    /// `s^d` for any integer `d`, reduced mod `p` (the order of `s`).
    pub fn shift_power(&self, d: i64) -> GaloisElement {
        GaloisElement::from_poly_unchecked(self.one().as_poly().cyclic_shift(d))
    }

    /// Bit-packed reduction mod 2 of the `M_p` coordinate of an element.
    pub(crate) fn v_bits(v: &[u64]) -> u64 {
        v.iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | ((c & 1) << i))
    }
}
