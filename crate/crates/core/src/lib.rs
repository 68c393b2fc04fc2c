//! Galois-ring arithmetic realized as cyclic convolution over `Z/2^m`, and
//! a two-parity MDS array code built on it.
//!
//! For a prime `p` with primitive root 2, the ring `R(2^m, p)` of length-`p`
//! coefficient vectors over `Z/2^m` that sum to zero is a Galois ring of
//! size `2^{m(p-1)}`. Its addition is coefficient-wise wrapping addition and
//! its multiplication is cyclic convolution; multiplying by powers of the
//! shift generator is just a rotation. That makes it cheap to build codes
//! out of byte (or word) rotations and integer adds.
//!
//! ```
//! use grac::cyclic_ring::RingParams;
//!
//! let ring = RingParams::new(5, 8).unwrap();
//! let s = ring.shift_generator();
//! assert_eq!(s.coeffs(), &[51, 52, 51, 51, 51]);
//!
//! let a = ring.element(vec![1, 2, 3, 4, 246]).unwrap();
//! assert_eq!((&s * &a).coeffs(), &[246, 1, 2, 3, 4]);
//! ```
//!
//! Modules:
//!
//! * [`residue`]: `Z/2^m` for `m <= 64`.
//! * [`cyclic_ring`]: `Z/2^m[x]/(x^p - 1)`, the CRT maps, `R(2^m, p)`,
//!   unit tests and inversion.
//! * [`array_code`]: `k` data + 2 parity columns, any two erasures.
//! * [`network_demo`]: a multi-source network solved over `Z/2^m`.
//! * [`shard`]: shard files, reconstruction and verification.
//! * [`table`], [`bench`]: multiplication tables and throughput.

pub mod array_code;
pub mod bench;
pub mod cyclic_ring;
mod error;
pub mod network_demo;
pub mod residue;
pub mod shard;
pub mod table;

pub use array_code::{CodeParams, DataColumn, EncodedStripe, ErasurePattern, StripeCoder};
pub use cyclic_ring::{CyclicPoly, GaloisElement, RingParams};
pub use error::{Error, Result};
pub use residue::Residue;
