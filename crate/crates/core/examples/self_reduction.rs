//! Recovers optimal orderings with both gadget variants and prints the
//! per-iteration trace.

use matpw::pathwidth::pathwidth_exact;
use matpw::propcheck::{random_linear, Named};
use matpw::selfreduce::{
    decompose_connected_abstract, decompose_connected_linear, decompose_full, gadget_oracle, Method,
};

fn main() -> matpw::Result<()> {
    let oracle = gadget_oracle();
    let c5 = Named::Cycle(5).build()?;
    let (pd, trace) = decompose_connected_linear(&c5, 1, &oracle)?;
    println!("M(C5) linear: order {:?} width {}", pd.order, pd.width);
    print!("{trace}");

    let u24 = Named::U24.build()?;
    let (pd, trace) = decompose_connected_abstract(&u24, 2, &oracle)?;
    println!("U(2,4) abstract: order {:?} width {}", pd.order, pd.width);
    print!("{trace}");

    let m = random_linear(4, 8, 3, 42)?;
    for method in [Method::SelfLinear, Method::SelfAbstract, Method::Dp] {
        let d = decompose_full(&m, method, &oracle)?;
        println!(
            "{method:?}: width {} order {:?} calls {} queries {}",
            d.width,
            d.decomposition.order,
            d.oracle_calls(),
            d.rank_queries()
        );
    }
    println!("exact: {}", pathwidth_exact(&m)?.0);
    Ok(())
}
