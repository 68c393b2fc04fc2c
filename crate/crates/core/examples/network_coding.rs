// Three sources, four sinks, no solution in characteristic 2, but a
// one-bit-overhead solution over Z/2^m.
//
//     cargo run --example network_coding

use grac::network_demo::{decode_all, encode_network, infeasibility_checks, SourceSymbols};

pub fn run_example() -> grac::Result<()> {
    let m = 8;
    let src = SourceSymbols::new(100, 27, 127, m)?;
    let edges = encode_network(&src);
    let out = decode_all(&edges)?;
    println!("a={} b={} c={}", src.a, src.b, src.c);
    println!("z={} w={} x={} y={}", edges.z, edges.w, edges.x, edges.y);
    println!(
        "sinks: 12 -> c={}, 13 -> b={}, 14 -> a={}, 15 -> c={}",
        out.node12_c, out.node13_b, out.node14_a, out.node15_c
    );
    assert_eq!(
        (out.node12_c, out.node13_b, out.node14_a, out.node15_c),
        (src.c, src.b, src.a, src.c)
    );

    let inf = infeasibility_checks();
    println!(
        "sink 15 matrix: det {}, rank {} over Q but {} over GF(2)",
        inf.determinant, inf.rational_rank, inf.gf2_rank
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> grac::Result<()> {
    run_example()
}
