// In-memory encode / two-erasure decode throughput.
//
//     cargo run --release --example throughput -- 67108864

use grac::{bench, CodeParams};

pub fn run_with(size: u64) -> grac::Result<()> {
    for (p, m, k) in [(5, 8, 4), (13, 16, 10), (29, 64, 16)] {
        let code = CodeParams::with(p, m, k)?;
        println!("p={p} m={m} k={k}");
        println!("{}\n", bench::run(size, &code)?);
    }
    Ok(())
}

pub fn run_example() -> grac::Result<()> {
    run_with(1 << 20)
}

#[allow(dead_code)]
fn main() -> grac::Result<()> {
    match std::env::args().nth(1).and_then(|a| a.parse().ok()) {
        Some(size) => run_with(size),
        None => run_example(),
    }
}
