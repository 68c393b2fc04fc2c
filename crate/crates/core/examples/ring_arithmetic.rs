// Arithmetic in R(2^m, p): cyclic convolution, the CRT coordinates, the
// shift generator and unit inversion.
//
//     cargo run --example ring_arithmetic

use grac::cyclic_ring::{CyclicPoly, GaloisElement, RingParams};
use grac::Residue;

pub fn run_example() -> grac::Result<()> {
    // R(4, 3): coefficient vectors (a0, a1, a2) over Z/4 with a0 + a1 + a2 = 0.
    let r = RingParams::new(3, 2)?;
    let e = r.one();
    let s = r.shift_generator();
    println!("R(4,3): identity {e}, shift generator {s}");

    let a = GaloisElement::new(CyclicPoly::from_digits("310", 2)?)?;
    let b = GaloisElement::new(CyclicPoly::from_digits("130", 2)?)?;
    println!("{a} + {b} = {}", &a + &b);
    println!("{a} * {b} = {}", &a * &b);
    println!("{s} * {a} = {}  (rotation)", &s * &a);

    let crt = r.phi(a.as_poly())?;
    println!("Phi({a}) = (u = {}, v = {:?})", crt.u, crt.v);
    let back = r.phi_inverse(crt.u, &crt.v)?;
    assert_eq!(&back, a.as_poly());

    let inv = a.inverse(&r)?;
    println!("{a}^-1 = {inv}, check {}", &a * &inv);
    let z = GaloisElement::new(CyclicPoly::from_digits("022", 2)?)?;
    println!("{z} is a unit: {}", z.is_unit());

    // The byte-sized ring behind the array code.
    let r = RingParams::new(5, 8)?;
    println!(
        "R(256,5): p^-1 = {}, s = {:?}",
        r.p_inv(),
        r.shift_generator().coeffs()
    );
    let step = &r.shift_generator() - &r.one();
    let step_inv = step.inverse(&r)?;
    println!("(s - e)^-1 = {:?}", step_inv.coeffs());
    assert_eq!(&step * &step_inv, r.one());
    assert_eq!((Residue::new(5, 8)? * r.p_inv()).value(), 1);
    Ok(())
}

#[allow(dead_code)]
fn main() -> grac::Result<()> {
    run_example()
}
