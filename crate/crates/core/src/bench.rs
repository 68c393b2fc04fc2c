//! In-memory throughput measurement for the file layer.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::array_code::CodeParams;
use crate::error::{Error, Result};
use crate::shard;

const SEED: u64 = 0x4752_4143;

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub size: u64,
    pub stripes: u64,
    pub encode_time: Duration,
    pub decode_time: Duration,
    /// Data columns rebuilt in the decode run.
    pub erased: [usize; 2],
    /// CRC-32 of all shard payloads, to check determinism across runs.
    pub shard_digest: u32,
}

fn mb_per_s(bytes: u64, t: Duration) -> f64 {
    let secs = t.as_secs_f64();
    if secs == 0.0 {
        0.0
    } else {
        bytes as f64 / 1e6 / secs
    }
}

impl BenchReport {
    pub fn encode_mb_s(&self) -> f64 {
        mb_per_s(self.size, self.encode_time)
    }

    pub fn decode_mb_s(&self) -> f64 {
        mb_per_s(self.size, self.decode_time)
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "size      {} bytes, {} stripes", self.size, self.stripes)?;
        writeln!(
            f,
            "encode    {:>10.3} ms  {:>9.1} MB/s",
            self.encode_time.as_secs_f64() * 1e3,
            self.encode_mb_s()
        )?;
        writeln!(
            f,
            "decode    {:>10.3} ms  {:>9.1} MB/s  (columns {} and {} erased)",
            self.decode_time.as_secs_f64() * 1e3,
            self.decode_mb_s(),
            self.erased[0],
            self.erased[1]
        )?;
        write!(f, "digest    {:08x}", self.shard_digest)
    }
}

/// Encodes `size` seeded random bytes, then decodes with the first two data
/// columns erased. The input is the same for every run.
pub fn run(size: u64, params: &CodeParams) -> Result<BenchReport> {
    let mut data = vec![0u8; size as usize];
    ChaCha8Rng::seed_from_u64(SEED).fill_bytes(&mut data);

    let start = Instant::now();
    let shards = shard::encode_payloads(&data, params);
    let encode_time = start.elapsed();

    let mut hasher = crc32fast::Hasher::new();
    for s in &shards {
        hasher.update(s);
    }
    let shard_digest = hasher.finalize();

    let stripes = shard::stripe_count(size, params);
    let erased = [0, 1];
    let present: Vec<Option<Vec<u8>>> = shards
        .into_iter()
        .enumerate()
        .map(|(i, s)| (!erased.contains(&i)).then_some(s))
        .collect();
    let start = Instant::now();
    let back = shard::decode_payloads(&present, params, stripes, size)?;
    let decode_time = start.elapsed();
    if back != data {
        return Err(Error::Inconsistent("benchmark round trip mismatch".into()));
    }

    Ok(BenchReport {
        size,
        stripes,
        encode_time,
        decode_time,
        erased,
        shard_digest,
    })
}
