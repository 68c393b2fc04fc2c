use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use grac::network_demo::{self, SourceSymbols};
use grac::{bench, shard, table, CodeParams, Error};

#[derive(Parser)]
#[command(
    name = "grac",
    version,
    about = "Galois-ring array code: shard, rebuild, inspect"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split a file into k data shards and two parity shards.
    Encode {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = 8)]
        m: u32,
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    /// Rebuild a file from a shard directory.
    Decode {
        #[arg(long)]
        shards: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Check shard headers and checksums.
    Verify {
        #[arg(long)]
        shards: PathBuf,
    },
    /// Print the multiplication table of the nonzero elements of R(2^m, p).
    Table {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
    },
    /// Run the three-source network example over Z/2^m.
    DemoNetwork {
        #[arg(long, default_value_t = 8)]
        m: u32,
        #[arg(long, requires_all = ["b", "c"])]
        a: Option<u64>,
        #[arg(long, requires_all = ["a", "c"])]
        b: Option<u64>,
        #[arg(long, requires_all = ["a", "b"])]
        c: Option<u64>,
    },
    /// Measure encode and two-erasure decode throughput in memory.
    Bench {
        #[arg(long)]
        size: u64,
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = 8)]
        m: u32,
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Unrecoverable(_) => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Encode {
            input,
            out_dir,
            p,
            m,
            k,
        } => {
            let params = CodeParams::with(p, m, k)?;
            for path in shard::encode_file(&input, &out_dir, &params)? {
                println!("{}", path.display());
            }
        }
        Command::Decode { shards, output } => {
            let report = shard::decode_file(&shards, &output)?;
            eprintln!("{report}");
        }
        Command::Verify { shards } => {
            let report = shard::verify(&shards)?;
            println!("{report}");
            if !report.recoverable() {
                return Ok(1);
            }
        }
        Command::Table { p, m } => print!("{}", table::print_table(p, m)?),
        Command::DemoNetwork { m, a, b, c } => {
            let (a, b, c) = match (a, b, c) {
                (Some(a), Some(b), Some(c)) => (a, b, c),
                _ => (10, 20, 30),
            };
            let src = SourceSymbols::new(a, b, c, m)?;
            let edges = network_demo::encode_network(&src);
            let out = network_demo::decode_all(&edges)?;
            println!("sources   a={} b={} c={}  (mod 2^{m})", src.a, src.b, src.c);
            println!("node 4    z = a+b+c = {}", edges.z);
            println!("node 6    w = a+b   = {}", edges.w);
            println!("node 7    x = a+c   = {}", edges.x);
            println!("node 8    y = b+c   = {}", edges.y);
            println!("node 12   c = z-w   = {}", out.node12_c);
            println!("node 13   b = z-x   = {}", out.node13_b);
            println!("node 14   a = z-y   = {}", out.node14_a);
            println!("node 15   c = (x+y-w)/2 = {}", out.node15_c);
            let inf = network_demo::infeasibility_checks();
            println!(
                "sink-15 matrix: det = {}, rank over Q = {}, rank over GF(2) = {}",
                inf.determinant, inf.rational_rank, inf.gf2_rank
            );
        }
        Command::Bench { size, p, m, k } => {
            let params = CodeParams::with(p, m, k)?;
            println!("{}", bench::run(size, &params)?);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
