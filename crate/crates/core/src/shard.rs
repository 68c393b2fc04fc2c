//! On-disk shard files for the array code.
//!
//! A file is cut into stripes of `k` columns of `p - 1` symbols, each symbol
//! `m / 8` little-endian bytes, column-major inside a stripe (column 0's
//! symbols, then column 1's, ...). The last stripe is zero-padded. Column
//! `i` of every stripe goes to shard `i`; shards `k` and `k + 1` hold the
//! parities. Every shard file is a fixed 32-byte header plus its payload.
//!
//! ```text
//! off  len  field
//!   0    4  magic "GRAC"
//!   4    1  version (1)
//!   5    1  p
//!   6    1  m (8, 16, 32 or 64)
//!   7    1  k
//!   8    1  r (2)
//!   9    1  shard index in [0, k + 1]
//!  10    2  reserved, zero
//!  12    8  original length, LE
//!  20    8  stripe count, LE
//!  28    4  CRC-32 (IEEE) of the payload, LE
//! ```

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::array_code::{CodeParams, ErasurePattern, PARITY_COLUMNS};
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"GRAC";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 32;

/// Stripes handed to one rayon task.
const STRIPES_PER_TASK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShardHeader {
    pub p: u8,
    pub m: u8,
    pub k: u8,
    pub r: u8,
    pub shard_index: u8,
    pub original_length: u64,
    pub stripe_count: u64,
    pub payload_checksum: u32,
}

impl ShardHeader {
    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut b = [0u8; HEADER_LEN];
        b[0..4].copy_from_slice(&MAGIC);
        b[4] = VERSION;
        b[5] = self.p;
        b[6] = self.m;
        b[7] = self.k;
        b[8] = self.r;
        b[9] = self.shard_index;
        b[12..20].copy_from_slice(&self.original_length.to_le_bytes());
        b[20..28].copy_from_slice(&self.stripe_count.to_le_bytes());
        b[28..32].copy_from_slice(&self.payload_checksum.to_le_bytes());
        b
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::Format(format!(
                "{} bytes is shorter than the {HEADER_LEN}-byte header",
                bytes.len()
            )));
        }
        if bytes[0..4] != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        if bytes[4] != VERSION {
            return Err(Error::Format(format!("unsupported version {}", bytes[4])));
        }
        if bytes[10..12] != [0, 0] {
            return Err(Error::Format("reserved bytes are not zero".into()));
        }
        let u64_at = |o: usize| u64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
        let h = Self {
            p: bytes[5],
            m: bytes[6],
            k: bytes[7],
            r: bytes[8],
            shard_index: bytes[9],
            original_length: u64_at(12),
            stripe_count: u64_at(20),
            payload_checksum: u32::from_le_bytes(bytes[28..32].try_into().unwrap()),
        };
        if h.r as usize != PARITY_COLUMNS {
            return Err(Error::Format(format!(
                "r = {} (only 2 parities supported)",
                h.r
            )));
        }
        if h.shard_index as usize >= h.k as usize + PARITY_COLUMNS {
            return Err(Error::Format(format!(
                "shard index {} out of range for k = {}",
                h.shard_index, h.k
            )));
        }
        Ok(h)
    }

    /// Fields that must agree across sibling shards.
    fn set_key(&self) -> (u8, u8, u8, u8, u64, u64) {
        (
            self.p,
            self.m,
            self.k,
            self.r,
            self.original_length,
            self.stripe_count,
        )
    }

    pub fn code_params(&self) -> Result<CodeParams> {
        check_file_m(self.m as u32)?;
        CodeParams::with(self.p as u64, self.m as u32, self.k as usize)
    }

    pub fn payload_len(&self) -> u64 {
        self.stripe_count * (self.p as u64 - 1) * (self.m as u64 / 8)
    }
}

fn check_file_m(m: u32) -> Result<()> {
    if matches!(m, 8 | 16 | 32 | 64) {
        Ok(())
    } else {
        Err(Error::Param(format!(
            "m = {m}; shard files need m in {{8, 16, 32, 64}}"
        )))
    }
}

pub fn checksum(payload: &[u8]) -> u32 {
    crc32fast::hash(payload)
}

/// `<file name>.shard<N>`.
pub fn shard_file_name(stem: &str, index: usize) -> String {
    format!("{stem}.shard{index}")
}

fn parse_shard_name(path: &Path) -> Option<(String, usize)> {
    let name = path.file_name()?.to_str()?;
    let (stem, idx) = name.rsplit_once(".shard")?;
    if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some((stem.to_string(), idx.parse().ok()?))
}

/// Bytes of one column of one stripe.
fn column_bytes(params: &CodeParams) -> usize {
    params.column_len() * (params.ring().m() as usize / 8)
}

pub fn stripe_bytes(params: &CodeParams) -> usize {
    params.k() * column_bytes(params)
}

pub fn stripe_count(len: u64, params: &CodeParams) -> u64 {
    len.div_ceil(stripe_bytes(params) as u64)
}

fn read_symbols(bytes: &[u8], width: usize, out: &mut [u64]) {
    match width {
        1 => out.iter_mut().zip(bytes).for_each(|(d, &b)| *d = b as u64),
        2 => read_words::<2>(bytes, out, |c| u16::from_le_bytes(c) as u64),
        4 => read_words::<4>(bytes, out, |c| u32::from_le_bytes(c) as u64),
        8 => read_words::<8>(bytes, out, u64::from_le_bytes),
        _ => unreachable!("symbol width {width}"),
    }
}

fn read_words<const W: usize>(bytes: &[u8], out: &mut [u64], f: impl Fn([u8; W]) -> u64) {
    for (d, c) in out.iter_mut().zip(bytes.chunks_exact(W)) {
        *d = f(c.try_into().unwrap());
    }
}

fn write_symbols(symbols: &[u64], width: usize, out: &mut [u8]) {
    match width {
        1 => out.iter_mut().zip(symbols).for_each(|(b, &s)| *b = s as u8),
        2 => write_words(symbols, out, |s| (s as u16).to_le_bytes()),
        4 => write_words(symbols, out, |s| (s as u32).to_le_bytes()),
        8 => write_words(symbols, out, u64::to_le_bytes),
        _ => unreachable!("symbol width {width}"),
    }
}

fn write_words<const W: usize>(symbols: &[u64], out: &mut [u8], f: impl Fn(u64) -> [u8; W]) {
    for (c, &s) in out.chunks_exact_mut(W).zip(symbols) {
        c.copy_from_slice(&f(s));
    }
}

/// Splits each shard buffer into per-task chunks of `STRIPES_PER_TASK`
/// stripes and regroups them by task.
fn chunks_by_task(shards: &mut [Vec<u8>], col_bytes: usize) -> Vec<Vec<&mut [u8]>> {
    let chunk = STRIPES_PER_TASK * col_bytes;
    let mut tasks: Vec<Vec<&mut [u8]>> = Vec::new();
    for shard in shards.iter_mut() {
        for (t, c) in shard.chunks_mut(chunk).enumerate() {
            if t == tasks.len() {
                tasks.push(Vec::new());
            }
            tasks[t].push(c);
        }
    }
    tasks
}

/// Encodes `data` into `k + 2` shard payloads (no headers).
pub fn encode_payloads(data: &[u8], params: &CodeParams) -> Vec<Vec<u8>> {
    let width = params.ring().m() as usize / 8;
    let w = params.column_len();
    let k = params.k();
    let col_bytes = column_bytes(params);
    let sbytes = stripe_bytes(params);
    let stripes = data.len().div_ceil(sbytes);

    let mut shards = vec![vec![0u8; stripes * col_bytes]; params.n()];
    chunks_by_task(&mut shards, col_bytes)
        .into_par_iter()
        .enumerate()
        .for_each(|(task, mut outs)| {
            let first = task * STRIPES_PER_TASK;
            let mut padded = vec![0u8; sbytes];
            let mut symbols = vec![0u64; k * w];
            let mut parity = vec![0u64; PARITY_COLUMNS * w];
            let mut coder = params.coder();
            for local in 0..outs[0].len() / col_bytes {
                let start = (first + local) * sbytes;
                let raw = match data.get(start..start + sbytes) {
                    Some(full) => full,
                    None => {
                        padded[..data.len() - start].copy_from_slice(&data[start..]);
                        &padded
                    }
                };
                read_symbols(raw, width, &mut symbols);
                coder.encode(&symbols, &mut parity);
                let at = local * col_bytes;
                for (t, out) in outs.iter_mut().enumerate().take(k) {
                    out[at..at + col_bytes]
                        .copy_from_slice(&raw[t * col_bytes..(t + 1) * col_bytes]);
                }
                for (col, out) in parity.chunks_exact(w).zip(&mut outs[k..]) {
                    write_symbols(col, width, &mut out[at..at + col_bytes]);
                }
            }
        });
    shards
}

/// Reassembles the original bytes from shard payloads; `None` marks an
/// erased shard.
pub fn decode_payloads(
    shards: &[Option<Vec<u8>>],
    params: &CodeParams,
    stripe_count: u64,
    original_length: u64,
) -> Result<Vec<u8>> {
    let n = params.n();
    if shards.len() != n {
        return Err(Error::Param(format!(
            "expected {n} shard slots, got {}",
            shards.len()
        )));
    }
    let erased = ErasurePattern::new(
        shards
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.is_none().then_some(i)),
        n,
    )?;
    let width = params.ring().m() as usize / 8;
    let w = params.column_len();
    let k = params.k();
    let col_bytes = column_bytes(params);
    let sbytes = stripe_bytes(params);
    let stripes = stripe_count as usize;
    for s in shards.iter().flatten() {
        if s.len() != stripes * col_bytes {
            return Err(Error::Format(format!(
                "payload of {} bytes, expected {}",
                s.len(),
                stripes * col_bytes
            )));
        }
    }
    if original_length > (stripes * sbytes) as u64 {
        return Err(Error::Format(
            "original length exceeds the stripe capacity".into(),
        ));
    }

    let mut out = vec![0u8; stripes * sbytes];
    out.par_chunks_mut(STRIPES_PER_TASK * sbytes)
        .enumerate()
        .try_for_each(|(task, out)| -> Result<()> {
            let first = task * STRIPES_PER_TASK;
            let mut columns = vec![0u64; n * w];
            let mut coder = params.coder();
            for (local, dst) in out.chunks_exact_mut(sbytes).enumerate() {
                let at = (first + local) * col_bytes;
                if erased.is_empty() {
                    for (t, shard) in shards[..k].iter().flatten().enumerate() {
                        dst[t * col_bytes..(t + 1) * col_bytes]
                            .copy_from_slice(&shard[at..at + col_bytes]);
                    }
                    continue;
                }
                for (i, shard) in shards.iter().enumerate() {
                    if let Some(shard) = shard {
                        read_symbols(
                            &shard[at..at + col_bytes],
                            width,
                            &mut columns[i * w..(i + 1) * w],
                        );
                    }
                }
                coder.decode(&mut columns, &erased)?;
                write_symbols(&columns[..k * w], width, dst);
            }
            Ok(())
        })?;
    out.truncate(original_length as usize);
    Ok(out)
}

/// Writes `k + 2` shard files for `input` into `out_dir`.
pub fn encode_file(input: &Path, out_dir: &Path, params: &CodeParams) -> Result<Vec<PathBuf>> {
    check_file_m(params.ring().m())?;
    let data = fs::read(input)?;
    let stem = input
        .file_name()
        .and_then(|s| s.to_str())
        .unwrap_or("data")
        .to_string();
    fs::create_dir_all(out_dir)?;
    let payloads = encode_payloads(&data, params);
    let stripe_count = stripe_count(data.len() as u64, params);
    let mut paths = Vec::with_capacity(payloads.len());
    for (i, payload) in payloads.iter().enumerate() {
        let header = ShardHeader {
            p: params.ring().p() as u8,
            m: params.ring().m() as u8,
            k: params.k() as u8,
            r: PARITY_COLUMNS as u8,
            shard_index: i as u8,
            original_length: data.len() as u64,
            stripe_count,
            payload_checksum: checksum(payload),
        };
        let path = out_dir.join(shard_file_name(&stem, i));
        let mut bytes = Vec::with_capacity(HEADER_LEN + payload.len());
        bytes.extend_from_slice(&header.to_bytes());
        bytes.extend_from_slice(payload);
        fs::write(&path, bytes)?;
        paths.push(path);
    }
    Ok(paths)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShardHealth {
    Ok,
    ChecksumMismatch,
    /// Header unreadable, or it disagrees with the sibling shards.
    BadHeader(String),
    Missing,
}

#[derive(Clone, Debug)]
pub struct ShardStatus {
    pub index: usize,
    pub path: Option<PathBuf>,
    pub health: ShardHealth,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub header: Option<ShardHeader>,
    pub shards: Vec<ShardStatus>,
    /// Shards that failed to parse and could not be placed by index.
    pub unplaced: Vec<(PathBuf, String)>,
}

impl VerifyReport {
    pub fn healthy(&self) -> usize {
        self.shards
            .iter()
            .filter(|s| s.health == ShardHealth::Ok)
            .count()
    }

    pub fn recoverable(&self) -> bool {
        self.header.is_some_and(|h| self.healthy() >= h.k as usize)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(h) = &self.header {
            writeln!(
                f,
                "p={} m={} k={} r={} length={} stripes={}",
                h.p, h.m, h.k, h.r, h.original_length, h.stripe_count
            )?;
        }
        for s in &self.shards {
            let status = match &s.health {
                ShardHealth::Ok => "OK".to_string(),
                ShardHealth::ChecksumMismatch => "CHECKSUM MISMATCH".to_string(),
                ShardHealth::BadHeader(why) => format!("BAD HEADER ({why})"),
                ShardHealth::Missing => "MISSING".to_string(),
            };
            match &s.path {
                Some(path) => writeln!(f, "shard {}: {status} {}", s.index, path.display())?,
                None => writeln!(f, "shard {}: {status}", s.index)?,
            }
        }
        for (path, why) in &self.unplaced {
            writeln!(f, "unreadable {}: {why}", path.display())?;
        }
        let verdict = if self.recoverable() {
            "recoverable"
        } else {
            "UNRECOVERABLE"
        };
        write!(f, "{} healthy shard(s): {verdict}", self.healthy())
    }
}

struct ShardSet {
    report: VerifyReport,
    payloads: Vec<Option<Vec<u8>>>,
}

fn load(dir: &Path) -> Result<ShardSet> {
    let mut found: Vec<(String, usize, PathBuf)> = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if let Some((stem, idx)) = parse_shard_name(&path) {
            found.push((stem, idx, path));
        }
    }
    found.sort();
    let mut stems: Vec<&str> = found.iter().map(|f| f.0.as_str()).collect();
    stems.dedup();
    if stems.len() > 1 {
        return Err(Error::Format(format!(
            "{} holds shards of several files: {stems:?}",
            dir.display()
        )));
    }

    let mut parsed = Vec::new();
    let mut unplaced = Vec::new();
    for (_, idx, path) in found {
        let bytes = fs::read(&path)?;
        match ShardHeader::parse(&bytes) {
            Ok(h) if h.shard_index as usize == idx => parsed.push((h, path, bytes)),
            Ok(h) => unplaced.push((
                path,
                format!("file name says shard {idx}, header says {}", h.shard_index),
            )),
            Err(e) => unplaced.push((path, e.to_string())),
        }
    }

    // The set's parameters are the ones most shards agree on.
    let mut keys: Vec<_> = parsed.iter().map(|(h, _, _)| h.set_key()).collect();
    keys.sort();
    let reference = keys
        .chunk_by(|a, b| a == b)
        .max_by_key(|run| run.len())
        .map(|run| run[0]);
    let Some(reference) = reference else {
        return Err(Error::Unrecoverable(format!(
            "no readable shards in {}",
            dir.display()
        )));
    };
    let header = parsed
        .iter()
        .find(|(h, _, _)| h.set_key() == reference)
        .map(|(h, _, _)| *h)
        .unwrap();
    let params = header
        .code_params()
        .map_err(|e| Error::Format(e.to_string()))?;
    let n = params.n();

    let mut shards: Vec<ShardStatus> = (0..n)
        .map(|index| ShardStatus {
            index,
            path: None,
            health: ShardHealth::Missing,
        })
        .collect();
    let mut payloads: Vec<Option<Vec<u8>>> = vec![None; n];
    for (h, path, bytes) in parsed {
        let i = h.shard_index as usize;
        if i >= n {
            unplaced.push((path, format!("shard index {i} outside 0..{n}")));
            continue;
        }
        let health = if h.set_key() != reference {
            ShardHealth::BadHeader("parameters disagree with sibling shards".into())
        } else if bytes.len() as u64 != HEADER_LEN as u64 + h.payload_len() {
            ShardHealth::BadHeader(format!(
                "payload is {} bytes, header implies {}",
                bytes.len() - HEADER_LEN,
                h.payload_len()
            ))
        } else if checksum(&bytes[HEADER_LEN..]) != h.payload_checksum {
            ShardHealth::ChecksumMismatch
        } else {
            ShardHealth::Ok
        };
        if health == ShardHealth::Ok {
            payloads[i] = Some(bytes[HEADER_LEN..].to_vec());
        }
        shards[i] = ShardStatus {
            index: i,
            path: Some(path),
            health,
        };
    }

    Ok(ShardSet {
        report: VerifyReport {
            header: Some(header),
            shards,
            unplaced,
        },
        payloads,
    })
}

/// Inspects a shard directory without reconstructing anything.
pub fn verify(dir: &Path) -> Result<VerifyReport> {
    load(dir).map(|s| s.report)
}

/// Rebuilds the original file from a shard directory.
///
/// Shards with a bad payload checksum, or whose header cannot be parsed at
/// all, are treated as erased. A parsable header that disagrees with the
/// other shards is a format error.
pub fn decode_file(dir: &Path, output: &Path) -> Result<VerifyReport> {
    let ShardSet { report, payloads } = load(dir)?;
    let header = report.header.expect("load always sets the header");
    let params = header.code_params()?;
    if let Some(bad) = report
        .shards
        .iter()
        .find(|s| matches!(s.health, ShardHealth::BadHeader(_)))
    {
        return Err(Error::Format(format!(
            "shard {} header is inconsistent with its siblings",
            bad.index
        )));
    }
    if !report.recoverable() {
        return Err(Error::Unrecoverable(format!(
            "only {} healthy shard(s), need {}",
            report.healthy(),
            params.k()
        )));
    }
    let data = decode_payloads(
        &payloads,
        &params,
        header.stripe_count,
        header.original_length,
    )?;
    fs::write(output, data)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout() {
        let h = ShardHeader {
            p: 5,
            m: 8,
            k: 4,
            r: 2,
            shard_index: 3,
            original_length: 17,
            stripe_count: 2,
            payload_checksum: 0xdead_beef,
        };
        let b = h.to_bytes();
        assert_eq!(&b[..4], b"GRAC");
        assert_eq!(b[4..12], [1, 5, 8, 4, 2, 3, 0, 0]);
        assert_eq!(b[12..20], 17u64.to_le_bytes());
        assert_eq!(b[20..28], 2u64.to_le_bytes());
        assert_eq!(b[28..32], [0xef, 0xbe, 0xad, 0xde]);
        assert_eq!(ShardHeader::parse(&b).unwrap(), h);

        let mut bad = b;
        bad[0] = b'X';
        assert!(ShardHeader::parse(&bad).is_err());
        let mut bad = b;
        bad[10] = 1;
        assert!(ShardHeader::parse(&bad).is_err());
        assert!(ShardHeader::parse(&b[..31]).is_err());
    }

    #[test]
    fn crc_is_ieee() {
        assert_eq!(checksum(b"123456789"), 0xcbf4_3926);
    }

    #[test]
    fn names() {
        assert_eq!(shard_file_name("a.bin", 5), "a.bin.shard5");
        assert_eq!(
            parse_shard_name(Path::new("/x/a.bin.shard12")),
            Some(("a.bin".into(), 12))
        );
        assert_eq!(parse_shard_name(Path::new("a.bin.shard")), None);
        assert_eq!(parse_shard_name(Path::new("a.bin")), None);
    }

    #[test]
    fn payload_round_trip_all_widths() {
        for m in [8, 16, 32, 64] {
            let params = CodeParams::with(5, m, 4).unwrap();
            let data: Vec<u8> = (0..1000u32).map(|i| (i * 37 % 251) as u8).collect();
            let shards = encode_payloads(&data, &params);
            let stripes = stripe_count(data.len() as u64, &params);
            for pattern in ErasurePattern::all_recoverable(params.n()) {
                let mut present: Vec<Option<Vec<u8>>> = shards.iter().cloned().map(Some).collect();
                for i in pattern.iter() {
                    present[i] = None;
                }
                let back = decode_payloads(&present, &params, stripes, data.len() as u64).unwrap();
                assert_eq!(back, data, "m = {m}, {pattern:?}");
            }
        }
    }

    #[test]
    fn table_layout_sixteen_bytes() {
        let params = CodeParams::with(5, 8, 4).unwrap();
        let data: Vec<u8> = (1..=16).collect();
        let shards = encode_payloads(&data, &params);
        assert_eq!(shards[0], vec![1, 2, 3, 4]);
        assert_eq!(shards[3], vec![13, 14, 15, 16]);
        assert!(shards.iter().all(|s| s.len() == 4));
    }
}
