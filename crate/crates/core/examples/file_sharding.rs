// Shards a file to disk, deletes and corrupts shards, verifies and rebuilds.
//
//     cargo run --example file_sharding

use std::fs;

use grac::{shard, CodeParams};

pub fn run_example() -> grac::Result<()> {
    let dir = std::env::temp_dir().join(format!("grac-example-{}", std::process::id()));
    let shards = dir.join("shards");
    fs::create_dir_all(&dir)?;

    let input = dir.join("notes.txt");
    let body: Vec<u8> = (0..10_000u32)
        .flat_map(|i| format!("line {i}\n").into_bytes())
        .collect();
    fs::write(&input, &body)?;

    let code = CodeParams::with(5, 8, 4)?;
    let paths = shard::encode_file(&input, &shards, &code)?;
    println!("wrote {} shards", paths.len());

    // Lose one data shard and flip a byte in a parity shard.
    fs::remove_file(&paths[1])?;
    let mut bytes = fs::read(&paths[5])?;
    bytes[shard::HEADER_LEN + 7] ^= 0x40;
    fs::write(&paths[5], bytes)?;

    let report = shard::verify(&shards)?;
    println!("{report}");

    let output = dir.join("notes.out");
    shard::decode_file(&shards, &output)?;
    assert_eq!(fs::read(&output)?, body);
    println!("rebuilt {} bytes", body.len());

    fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> grac::Result<()> {
    run_example()
}
