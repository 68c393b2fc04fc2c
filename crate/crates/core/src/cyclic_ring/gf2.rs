//! Bit-packed polynomials over GF(2): bit `i` is the coefficient of `x^i`.
//!
//! Only what unit testing and inversion seeding in `R(2^m, p)` need. Every
//! modulus used here has degree at most 60, so operands always fit a word.

#[inline]
pub(crate) fn degree(a: u64) -> Option<u32> {
    (a != 0).then(|| 63 - a.leading_zeros())
}

/// Carry-less product.
pub(crate) fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= (a as u128) << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

/// Quotient and remainder of `a / b`, `b != 0`.
pub(crate) fn divmod(mut a: u128, b: u64) -> (u128, u64) {
    let db = degree(b).expect("division by the zero polynomial");
    let b = b as u128;
    let mut q = 0u128;
    while a != 0 {
        let da = 127 - a.leading_zeros();
        if da < db {
            break;
        }
        let s = da - db;
        q |= 1 << s;
        a ^= b << s;
    }
    (q, a as u64)
}

#[cfg(test)]
pub(crate) fn mul_mod(a: u64, b: u64, modulus: u64) -> u64 {
    divmod(clmul(a, b), modulus).1
}

/// Inverse of `a` modulo `modulus`, by the extended Euclidean algorithm.
/// `None` when `gcd(a, modulus) != 1`.
pub(crate) fn inverse_mod(a: u64, modulus: u64) -> Option<u64> {
    let (mut r0, mut r1) = (modulus, divmod(a as u128, modulus).1);
    // t_i * a == r_i (mod modulus)
    let (mut t0, mut t1) = (0u64, 1u64);
    while r1 != 0 {
        let (q, r) = divmod(r0 as u128, r1);
        let t = t0 ^ divmod(clmul(q as u64, t1), modulus).1;
        (r0, r1) = (r1, r);
        (t0, t1) = (t1, t);
    }
    (r0 == 1).then_some(t0)
}
