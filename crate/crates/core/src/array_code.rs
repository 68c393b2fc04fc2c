//! Two-parity MDS array code over `R(2^m, p)`.
//!
//! A stripe holds `k` data columns and two parity columns. Each column is an
//! element of `R(2^m, p)` of which only the first `p - 1` coefficients are
//! stored; the last one is implied because every column sums to zero
//! mod `2^m`.
//!
//! With `sigma = s^{-1}` the parities are
//!
//! ```text
//! e = a_0 + a_1 + ... + a_{k-1}
//! f = a_0 + sigma a_1 + sigma^2 a_2 + ... + sigma^{k-1} a_{k-1}
//! ```
//!
//! and since multiplying by `sigma^t` rotates a column down by `t` places,
//! stored coefficient `i` of `f` is `sum_t a_t[(i + t) mod p]`. Encoding is
//! therefore only rotations and wrapping adds. For `(p, m, k) = (5, 8, 4)`
//! this is exactly the 4 x 6 layout with rows `a_0 + b_1 + c_2 + d_3`, ...
//!
//! Any two erased columns can be rebuilt because `sigma^d - e` is a unit of
//! the ring for every `d` in `1..p`.

use crate::cyclic_ring::{GaloisElement, RingParams};
use crate::error::{Error, Result};

/// Number of parity columns.
pub const PARITY_COLUMNS: usize = 2;

/// Ring parameters plus the number of data columns.
#[derive(Clone, Debug)]
pub struct CodeParams {
    ring: RingParams,
    k: usize,
    /// `(sigma^d - e)^{-1}` for `d` in `1..k`, index `d - 1`.
    pair_inverses: Vec<GaloisElement>,
}

impl CodeParams {
    pub fn new(ring: RingParams, k: usize) -> Result<Self> {
        if k < 2 || k > ring.p() {
            return Err(Error::Param(format!(
                "k = {k} data columns needs 2 <= k <= p = {}",
                ring.p()
            )));
        }
        let one = ring.one();
        let pair_inverses = (1..k)
            .map(|d| (&ring.shift_power(-(d as i64)) - &one).inverse(&ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            ring,
            k,
            pair_inverses,
        })
    }

    /// `(p, m, k)` in one call.
    pub fn with(p: u64, m: u32, k: usize) -> Result<Self> {
        Self::new(RingParams::new(p, m)?, k)
    }

    pub fn ring(&self) -> &RingParams {
        &self.ring
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Total column count `k + 2`.
    pub fn n(&self) -> usize {
        self.k + PARITY_COLUMNS
    }

    /// Stored symbols per column, `p - 1`.
    pub fn column_len(&self) -> usize {
        self.ring.p() - 1
    }

    /// `sigma = s^{p-1}`, the weight step between data columns in `f`.
    pub fn column_rotator(&self) -> GaloisElement {
        self.ring.shift_power(-1)
    }

    /// Index of the horizontal parity column `e`.
    pub fn e_index(&self) -> usize {
        self.k
    }

    /// Index of the rotated parity column `f`.
    pub fn f_index(&self) -> usize {
        self.k + 1
    }

    fn check_column(&self, col: &[u64]) -> Result<()> {
        if col.len() != self.column_len() {
            return Err(Error::Param(format!(
                "column has {} symbols, expected {}",
                col.len(),
                self.column_len()
            )));
        }
        Ok(())
    }

    /// Computes both parities for one stripe. See [`StripeCoder::encode`];
    /// use a coder directly when processing many stripes.
    pub fn encode_raw(&self, data: &[u64], parity: &mut [u64]) {
        self.coder().encode(data, parity)
    }

    /// Rebuilds erased data columns of one stripe in place. See
    /// [`StripeCoder::decode`].
    pub fn decode_raw(&self, columns: &mut [u64], erased: &ErasurePattern) -> Result<()> {
        self.coder().decode(columns, erased)
    }

    /// A reusable encoder/decoder with scratch space for one stripe.
    pub fn coder(&self) -> StripeCoder<'_> {
        let p = self.ring.p();
        StripeCoder {
            params: self,
            p1: vec![0; p],
            p2: vec![0; p],
            rhs: vec![0; p],
            prod: vec![0; p],
        }
    }

    pub fn encode_stripe(&self, data: &[DataColumn]) -> Result<EncodedStripe> {
        if data.len() != self.k {
            return Err(Error::Param(format!(
                "expected {} data columns, got {}",
                self.k,
                data.len()
            )));
        }
        let w = self.column_len();
        let mut flat = Vec::with_capacity(self.k * w);
        for c in data {
            self.check_column(&c.0)?;
            flat.extend_from_slice(&c.0);
        }
        let mut parity = vec![0; PARITY_COLUMNS * w];
        self.encode_raw(&flat, &mut parity);
        let mut columns = data.to_vec();
        columns.extend(parity.chunks_exact(w).map(|c| DataColumn(c.to_vec())));
        Ok(EncodedStripe { columns })
    }

    /// Recovers the `k` data columns from a stripe with at most two columns
    /// missing (`None`).
    pub fn decode_stripe(&self, present: &[Option<DataColumn>]) -> Result<Vec<DataColumn>> {
        if present.len() != self.n() {
            return Err(Error::Param(format!(
                "expected {} column slots, got {}",
                self.n(),
                present.len()
            )));
        }
        let pattern = ErasurePattern::new(
            present
                .iter()
                .enumerate()
                .filter_map(|(i, c)| c.is_none().then_some(i)),
            self.n(),
        )?;
        let w = self.column_len();
        let mut flat = vec![0u64; self.n() * w];
        for (i, c) in present.iter().enumerate() {
            if let Some(c) = c {
                self.check_column(&c.0)?;
                flat[i * w..(i + 1) * w].copy_from_slice(&c.0);
            }
        }
        self.decode_raw(&mut flat, &pattern)?;
        Ok(flat
            .chunks_exact(w)
            .take(self.k)
            .map(|c| DataColumn(c.to_vec()))
            .collect())
    }

    /// Solves `(sigma - e) a = q` in `R(256, 5)` with the closed-form
    /// elimination of the 4 x 4 system whose determinant is 5:
    ///
    /// ```text
    /// a_2 = 5^{-1} (q_0 + 2 q_1 - 2 q_2 - q_3)
    /// a_3 = q_2 + a_2,  a_1 = a_2 - q_1,  a_0 = a_1 - q_0
    /// ```
    ///
    /// `a_3` comes from the third row of the system, `q_2 = a_3 - a_2`.
    ///
    /// Only defined for `p = 5, m = 8`. Independent of [`GaloisElement::inverse`].
    pub fn solve_shift_system_explicit(&self, q: &GaloisElement) -> Result<GaloisElement> {
        if self.ring.p() != 5 || self.ring.m() != 8 {
            return Err(Error::Param(
                "the explicit shift solve is only defined for p = 5, m = 8".into(),
            ));
        }
        if q.p() != 5 || q.m() != 8 {
            return Err(Error::Param("q does not belong to R(256, 5)".into()));
        }
        const INV5: u8 = 205;
        let q: Vec<u8> = q.coeffs().iter().map(|&c| c as u8).collect();
        let a2 = INV5.wrapping_mul(
            q[0].wrapping_add(q[1].wrapping_mul(2))
                .wrapping_sub(q[2].wrapping_mul(2))
                .wrapping_sub(q[3]),
        );
        let a3 = q[2].wrapping_add(a2);
        let a1 = a2.wrapping_sub(q[1]);
        let a0 = a1.wrapping_sub(q[0]);
        let stored = [a0, a1, a2, a3].map(u64::from);
        lift_column(&stored, &self.ring)
    }
}

fn auxiliary(stored: &[u64], mask: u64) -> u64 {
    stored.iter().fold(0u64, |acc, &c| acc.wrapping_sub(c)) & mask
}

/// Stripe-at-a-time encoder and decoder over flat symbol buffers.
///
/// Holds its own scratch space so that the per-stripe paths do not allocate.
#[derive(Clone, Debug)]
pub struct StripeCoder<'a> {
    params: &'a CodeParams,
    p1: Vec<u64>,
    p2: Vec<u64>,
    rhs: Vec<u64>,
    prod: Vec<u64>,
}

impl StripeCoder<'_> {
    /// Computes both parities for one stripe.
    ///
    /// `data` holds the `k` stored columns back to back (`k * (p - 1)`
    /// symbols, column-major); `parity` receives `e` then `f`. Symbols must
    /// already be reduced mod `2^m`.
    pub fn encode(&mut self, data: &[u64], parity: &mut [u64]) {
        let c = self.params;
        let w = c.column_len();
        let mask = c.ring.mask();
        assert_eq!(data.len(), c.k * w, "data length");
        assert_eq!(parity.len(), PARITY_COLUMNS * w, "parity length");
        let (e, f) = parity.split_at_mut(w);
        e.fill(0);
        f.fill(0);
        for (t, col) in data.chunks_exact(w).enumerate() {
            for (ei, &a) in e.iter_mut().zip(col) {
                *ei = ei.wrapping_add(a);
            }
            rotate_into(f, col, auxiliary(col, mask), t, u64::wrapping_add);
        }
        for x in parity.iter_mut() {
            *x &= mask;
        }
    }

    /// Rebuilds erased data columns in place.
    ///
    /// `columns` holds all `k + 2` stored columns back to back; the contents
    /// of erased columns are ignored on input. Erased parity columns are not
    /// rewritten.
    pub fn decode(&mut self, columns: &mut [u64], erased: &ErasurePattern) -> Result<()> {
        let c = self.params;
        let w = c.column_len();
        let p = c.ring.p();
        let mask = c.ring.mask();
        if columns.len() != c.n() * w {
            return Err(Error::Param(format!(
                "stripe has {} symbols, expected {}",
                columns.len(),
                c.n() * w
            )));
        }
        erased.check(c.n())?;

        let e_ok = !erased.contains(c.e_index());
        let f_ok = !erased.contains(c.f_index());
        let mut missing = erased.iter().filter(|&i| i < c.k);

        match (missing.next(), missing.next()) {
            (None, _) => {}
            (Some(i), None) if e_ok => {
                // a_i = e - sum of the other data columns
                let acc = &mut self.p1[..w];
                acc.copy_from_slice(&columns[c.e_index() * w..][..w]);
                for t in (0..c.k).filter(|&t| t != i) {
                    for (a, &x) in acc.iter_mut().zip(&columns[t * w..(t + 1) * w]) {
                        *a = a.wrapping_sub(x);
                    }
                }
                write_column(columns, i, w, acc, mask);
            }
            (Some(i), None) if f_ok => {
                // sigma^i a_i = f - sum_{t != i} sigma^t a_t
                let g = &mut self.p2;
                lift_into(&columns[c.f_index() * w..][..w], mask, g);
                for t in (0..c.k).filter(|&t| t != i) {
                    let col = &columns[t * w..(t + 1) * w];
                    rotate_into(g, col, auxiliary(col, mask), t, u64::wrapping_sub);
                }
                // undo the rotation: a_i[j] = g[(j - i) mod p]
                let a = &mut self.prod[..w];
                a.fill(0);
                rotate_into(a, &g[..w], g[w], (p - i) % p, u64::wrapping_add);
                write_column(columns, i, w, a, mask);
            }
            (Some(i), Some(j)) if e_ok && f_ok => {
                self.partial_parities(columns, i, j);
                // sigma^{-i} p2 = a_i + sigma^{j-i} a_j, so
                // (sigma^{j-i} - e) a_j = sigma^{-i} p2 - p1.
                self.rhs
                    .iter_mut()
                    .zip(&self.p1)
                    .for_each(|(r, &y)| *r = y.wrapping_neg());
                rotate_into(
                    &mut self.rhs,
                    &self.p2[..w],
                    self.p2[w],
                    (p - i) % p,
                    u64::wrapping_add,
                );
                let inv = c.pair_inverses[j - i - 1].coeffs();
                cyclic_mul(inv, &self.rhs, &mut self.prod);
                write_column(columns, j, w, &self.prod, mask);
                for (a, &y) in self.p1.iter_mut().zip(&self.prod) {
                    *a = a.wrapping_sub(y);
                }
                write_column(columns, i, w, &self.p1, mask);
            }
            _ => {
                return Err(Error::Unrecoverable(format!(
                    "erasure pattern {:?} leaves too few columns",
                    erased.missing
                )))
            }
        }
        Ok(())
    }

    /// Sets `p1 = e - sum of known data` and `p2 = f - sum of sigma^t *
    /// known data`, lifted, with data columns `i` and `j` unknown.
    fn partial_parities(&mut self, columns: &[u64], i: usize, j: usize) {
        let c = self.params;
        let w = c.column_len();
        let mask = c.ring.mask();
        let stored = |i: usize| &columns[i * w..(i + 1) * w];
        lift_into(stored(c.e_index()), mask, &mut self.p1);
        lift_into(stored(c.f_index()), mask, &mut self.p2);
        for t in (0..c.k).filter(|&t| t != i && t != j) {
            let col = stored(t);
            let aux = auxiliary(col, mask);
            rotate_into(&mut self.p1, col, aux, 0, u64::wrapping_sub);
            rotate_into(&mut self.p2, col, aux, t, u64::wrapping_sub);
        }
    }
}

fn lift_into(stored: &[u64], mask: u64, out: &mut [u64]) {
    let (head, last) = out.split_at_mut(stored.len());
    head.copy_from_slice(stored);
    last[0] = auxiliary(stored, mask);
}

/// `acc[x] = op(acc[x], lifted[(x + t) mod p])` for `x < acc.len() <= p`,
/// where `lifted` is `stored` followed by `aux`.
#[inline]
fn rotate_into(acc: &mut [u64], stored: &[u64], aux: u64, t: usize, op: impl Fn(u64, u64) -> u64) {
    let split = (stored.len() - t).min(acc.len());
    let (lo, hi) = acc.split_at_mut(split);
    for (a, &x) in lo.iter_mut().zip(&stored[t..]) {
        *a = op(*a, x);
    }
    if let Some((first, rest)) = hi.split_first_mut() {
        *first = op(*first, aux);
        for (a, &x) in rest.iter_mut().zip(stored) {
            *a = op(*a, x);
        }
    }
}

fn write_column(columns: &mut [u64], i: usize, w: usize, value: &[u64], mask: u64) {
    for (dst, &src) in columns[i * w..(i + 1) * w].iter_mut().zip(value) {
        *dst = src & mask;
    }
}

/// Cyclic product of two length-`p` coefficient vectors, unreduced.
fn cyclic_mul(a: &[u64], b: &[u64], out: &mut [u64]) {
    let p = a.len();
    out.fill(0);
    for (i, &x) in a.iter().enumerate() {
        let (head, tail) = b.split_at(p - i);
        for (o, &y) in out[i..].iter_mut().zip(head) {
            *o = o.wrapping_add(x.wrapping_mul(y));
        }
        for (o, &y) in out[..i].iter_mut().zip(tail) {
            *o = o.wrapping_add(x.wrapping_mul(y));
        }
    }
}

/// Appends the implied coefficient `-(sum of stored) mod 2^m`.
pub fn lift_column(stored: &[u64], ring: &RingParams) -> Result<GaloisElement> {
    if stored.len() != ring.p() - 1 {
        return Err(Error::Param(format!(
            "column has {} symbols, expected {}",
            stored.len(),
            ring.p() - 1
        )));
    }
    let mask = ring.mask();
    let mut coeffs: Vec<u64> = stored.iter().map(|&c| c & mask).collect();
    coeffs.push(auxiliary(&coeffs, mask));
    ring.element(coeffs)
}

/// The stored part of one column: `p - 1` symbols, auxiliary coefficient
/// omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DataColumn(Vec<u64>);

impl DataColumn {
    pub fn new(stored: Vec<u64>, ring: &RingParams) -> Result<Self> {
        if stored.len() != ring.p() - 1 {
            return Err(Error::Param(format!(
                "column has {} symbols, expected {}",
                stored.len(),
                ring.p() - 1
            )));
        }
        let mask = ring.mask();
        Ok(Self(stored.into_iter().map(|c| c & mask).collect()))
    }

    pub fn from_element(e: &GaloisElement) -> Self {
        let c = e.coeffs();
        Self(c[..c.len() - 1].to_vec())
    }

    pub fn stored(&self) -> &[u64] {
        &self.0
    }

    pub fn lift(&self, ring: &RingParams) -> Result<GaloisElement> {
        lift_column(&self.0, ring)
    }
}

/// `k` data columns followed by parities `e` and `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedStripe {
    columns: Vec<DataColumn>,
}

impl EncodedStripe {
    pub fn columns(&self) -> &[DataColumn] {
        &self.columns
    }

    pub fn data(&self) -> &[DataColumn] {
        &self.columns[..self.columns.len() - PARITY_COLUMNS]
    }

    pub fn parity_e(&self) -> &DataColumn {
        &self.columns[self.columns.len() - 2]
    }

    pub fn parity_f(&self) -> &DataColumn {
        &self.columns[self.columns.len() - 1]
    }

    /// Every column as `Some`, ready to have entries knocked out.
    pub fn to_present(&self) -> Vec<Option<DataColumn>> {
        self.columns.iter().cloned().map(Some).collect()
    }
}

/// Sorted, distinct set of at most two erased column indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ErasurePattern {
    missing: Vec<usize>,
}

impl ErasurePattern {
    pub fn new(missing: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        let mut missing: Vec<usize> = missing.into_iter().collect();
        missing.sort_unstable();
        let len = missing.len();
        missing.dedup();
        if missing.len() != len {
            return Err(Error::Param("duplicate erased column".into()));
        }
        let pattern = Self { missing };
        pattern.check(n)?;
        Ok(pattern)
    }

    pub fn none() -> Self {
        Self::default()
    }

    fn check(&self, n: usize) -> Result<()> {
        if let Some(&i) = self.missing.iter().find(|&&i| i >= n) {
            return Err(Error::Param(format!(
                "column {i} out of range for {n} columns"
            )));
        }
        if self.missing.len() > PARITY_COLUMNS {
            return Err(Error::Unrecoverable(format!(
                "{} columns erased, at most {PARITY_COLUMNS} can be rebuilt",
                self.missing.len()
            )));
        }
        Ok(())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.missing.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.missing.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.missing.len()
    }

    pub fn is_empty(&self) -> bool {
        self.missing.is_empty()
    }

    /// All patterns of size 0, 1 and 2 over `n` columns.
    pub fn all_recoverable(n: usize) -> Vec<Self> {
        let mut out = vec![Self::none()];
        out.extend((0..n).map(|i| Self { missing: vec![i] }));
        for i in 0..n {
            for j in i + 1..n {
                out.push(Self {
                    missing: vec![i, j],
                });
            }
        }
        out
    }
}

pub fn encode_stripe(data: &[DataColumn], params: &CodeParams) -> Result<EncodedStripe> {
    params.encode_stripe(data)
}

pub fn decode_stripe(
    present: &[Option<DataColumn>],
    params: &CodeParams,
) -> Result<Vec<DataColumn>> {
    params.decode_stripe(present)
}
