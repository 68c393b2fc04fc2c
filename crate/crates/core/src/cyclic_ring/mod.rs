//! The ring `Z/2^m[x]/(x^p - 1)` and its subring `R(2^m, p)`.
//!
//! For a prime `p` with primitive root 2, `x^p - 1 = (x - 1) M_p(x)` with
//! coprime factors, so the CRT map
//!
//! ```text
//! Phi : Z/2^m[x]/(x^p - 1)  ->  Z/2^m  (+)  Z/2^m[x]/(M_p)
//! ```
//!
//! is a ring isomorphism. Elements with first coordinate zero form
//! `R(2^m, p)`, a copy of the Galois ring `GR(2^m, p - 1)` in which
//! multiplication is cyclic convolution and multiplication by the element
//! `s = Phi^{-1}(0, x)` is a rotation of coefficients.

mod galois;
mod gf2;
mod params;
mod poly;

pub use galois::GaloisElement;
pub use params::{has_primitive_root_two, is_prime, order_of_two, RingParams, MAX_P};
pub use poly::{CrtPair, CyclicPoly};

/// Product of two plain (non-cyclic) polynomials in `Z/2^m[x]`.
pub fn poly_mul_plain(a: &[u64], b: &[u64], m: u32) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mask = crate::residue::mask(m);
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = out[i + j].wrapping_add(x.wrapping_mul(y));
        }
    }
    out.iter_mut().for_each(|c| *c &= mask);
    out
}
