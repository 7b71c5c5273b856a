//! Builds GF(2)(a)(b) and does some arithmetic in it.

use matpw::field::{find_irreducible, FieldOps, FieldSpec};

fn main() -> matpw::Result<()> {
    let gf2 = FieldSpec::prime(2)?;
    let p1 = find_irreducible(&gf2, 2);
    let gf4 = gf2.extend(&p1)?;
    let p2 = find_irreducible(&gf4, 3);
    let gf64 = gf4.extend(&p2)?;
    println!("level 1 modulus: {p1}");
    println!("level 2 modulus: {p2}");
    println!("order {:?}, absolute degree {}", gf64.order(), gf64.absolute_degree());

    let a = gf64.generator(1);
    let b = gf64.generator(2);
    let ab = gf64.mul(&a, &b);
    let inv = gf64.inv(&ab).expect("nonzero");
    println!("a*b = {ab}");
    println!("(a*b)^-1 = {inv}");
    assert!(gf64.is_one(&gf64.mul(&ab, &inv)));

    // a^3 = 1 in GF(4)
    let a3 = gf64.mul(&gf64.mul(&a, &a), &a);
    println!("a^3 = {a3}");
    Ok(())
}
