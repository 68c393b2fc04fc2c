//! Symbol-level model of a three-source, four-sink network that has no
//! linear solution over any field of characteristic 2, coded over `Z/2^m`.
//!
//! Sources 1, 2, 3 emit `a`, `b`, `c`. Coding nodes 4, 6, 7, 8 emit
//!
//! ```text
//! z = a + b + c,  w = a + b,  x = a + c,  y = b + c   (mod 2^m)
//! ```
//!
//! Sinks 12, 13, 14 each subtract one symbol from `z`; sink 15 only sees
//! `w, x, y` and uses `x + y - w = 2c`. Halving is exact because sources
//! are restricted to `[0, 2^{m-1})`, which costs one bit per symbol.

use crate::error::{Error, Result};
use crate::residue::{self, Residue};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSymbols {
    pub a: Residue,
    pub b: Residue,
    pub c: Residue,
}

impl SourceSymbols {
    /// Each symbol must be below `2^{m-1}`.
    pub fn new(a: u64, b: u64, c: u64, m: u32) -> Result<Self> {
        residue::check_bits(m)?;
        let limit = 1u64 << (m - 1);
        for (name, v) in [("a", a), ("b", b), ("c", c)] {
            if v >= limit {
                return Err(Error::Param(format!(
                    "source symbol {name} = {v} outside [0, 2^{})",
                    m - 1
                )));
            }
        }
        Ok(Self {
            a: Residue::from_canonical(a, m),
            b: Residue::from_canonical(b, m),
            c: Residue::from_canonical(c, m),
        })
    }

    pub fn m(&self) -> u32 {
        self.a.bits()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeSymbols {
    /// Node 4.
    pub z: Residue,
    /// Node 6.
    pub w: Residue,
    /// Node 7.
    pub x: Residue,
    /// Node 8.
    pub y: Residue,
}

pub fn encode_network(src: &SourceSymbols) -> EdgeSymbols {
    let SourceSymbols { a, b, c } = *src;
    EdgeSymbols {
        z: a + b + c,
        w: a + b,
        x: a + c,
        y: b + c,
    }
}

/// The sinks that decode by subtracting one coded symbol from `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubtractiveSink {
    /// Recovers `c` as `z - w`.
    Node12,
    /// Recovers `b` as `z - x`.
    Node13,
    /// Recovers `a` as `z - y`.
    Node14,
}

impl SubtractiveSink {
    pub fn from_node(node: u32) -> Result<Self> {
        match node {
            12 => Ok(Self::Node12),
            13 => Ok(Self::Node13),
            14 => Ok(Self::Node14),
            _ => Err(Error::Param(format!(
                "node {node} is not a subtractive sink"
            ))),
        }
    }

    /// The coded symbol this sink receives besides `z`.
    pub fn other_input(self, edges: &EdgeSymbols) -> Residue {
        match self {
            Self::Node12 => edges.w,
            Self::Node13 => edges.x,
            Self::Node14 => edges.y,
        }
    }
}

/// `z - other`; the sink only fixes which symbol `other` is.
pub fn decode_subtractive(_sink: SubtractiveSink, z: Residue, other: Residue) -> Result<Residue> {
    z.try_sub(other)
}

/// Sink 15: `c = (x + y - w) / 2`.
pub fn decode_sink15(w: Residue, x: Residue, y: Residue) -> Result<Residue> {
    let t = x.try_add(y)?.try_sub(w)?;
    if t.value() & 1 == 1 {
        return Err(Error::Inconsistent(format!(
            "x + y - w = {} is odd; symbols do not come from in-range sources",
            t.value()
        )));
    }
    Ok(Residue::from_canonical(t.value() >> 1, t.bits()))
}

/// Output of all four sinks, in node order 12, 13, 14, 15.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SinkOutputs {
    pub node12_c: Residue,
    pub node13_b: Residue,
    pub node14_a: Residue,
    pub node15_c: Residue,
}

pub fn decode_all(edges: &EdgeSymbols) -> Result<SinkOutputs> {
    let sub = |sink: SubtractiveSink| decode_subtractive(sink, edges.z, sink.other_input(edges));
    Ok(SinkOutputs {
        node12_c: sub(SubtractiveSink::Node12)?,
        node13_b: sub(SubtractiveSink::Node13)?,
        node14_a: sub(SubtractiveSink::Node14)?,
        node15_c: decode_sink15(edges.w, edges.x, edges.y)?,
    })
}

/// Coefficients of `(w, x, y)` in terms of `(a, b, c)`.
pub const SINK15_MATRIX: [[i64; 3]; 3] = [[1, 1, 0], [1, 0, 1], [0, 1, 1]];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Infeasibility {
    /// Determinant over the integers.
    pub determinant: i64,
    /// Rank over GF(2).
    pub gf2_rank: usize,
    /// Rank over the rationals.
    pub rational_rank: usize,
}

/// Why sink 15 fails in characteristic 2: the determinant is `-2`, so the
/// matrix drops to rank 2 mod 2 and `c` is left undetermined.
pub fn infeasibility_checks() -> Infeasibility {
    let m = SINK15_MATRIX;
    let determinant = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);

    let rows: Vec<u8> = m
        .iter()
        .map(|r| {
            r.iter()
                .fold(0u8, |acc, &v| (acc << 1) | (v.rem_euclid(2) as u8))
        })
        .collect();

    let rational: Vec<Vec<f64>> = m
        .iter()
        .map(|r| r.iter().map(|&v| v as f64).collect())
        .collect();

    Infeasibility {
        determinant,
        gf2_rank: gf2_rank(rows),
        rational_rank: rational_rank(rational),
    }
}

fn gf2_rank(mut rows: Vec<u8>) -> usize {
    let mut rank = 0;
    for bit in (0..8).rev() {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r] >> bit & 1 == 1 {
                rows[r] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

fn rational_rank(mut rows: Vec<Vec<f64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col].abs() > 1e-9) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank {
                let factor = rows[r][col] / rows[rank][col];
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot_row) {
                    *x -= factor * y;
                }
            }
        }
        rank += 1;
    }
    rank
}
