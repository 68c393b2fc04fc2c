// Prints the product table of the nonzero elements of a small R(2^m, p).
//
//     cargo run --example multiplication_table -- 3 2

use grac::table;

pub fn run_example() -> grac::Result<()> {
    print!("{}", table::print_table(3, 2)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> grac::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    match args.as_slice() {
        [p, m] => print!("{}", table::print_table(*p, *m as u32)?),
        _ => run_example()?,
    }
    Ok(())
}
