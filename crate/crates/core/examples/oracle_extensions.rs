//! Stacks coloops and free placements on U(2,4) using rank queries only.

use matpw::extension::StackedOracle;
use matpw::matroid::{ElementId, ElementSet, MatroidExt, RankOracle, UniformMatroid};

fn main() -> matpw::Result<()> {
    let u = UniformMatroid::new(2, 4);
    let mut stack = StackedOracle::new(&u);
    let a = stack.add_coloop(ElementId::gadget(0))?;
    let pair = ElementSet::singleton(0).with(1);
    let b = stack.add_free_in_closure(pair.with(a), ElementId::gadget(1))?;
    let x = ElementSet::singleton(0).with(1);
    let c = stack.add_free_in_guts(x, ElementSet::EMPTY, ElementId::gadget(2))?;

    println!("ground {} elements, rank {}", stack.len(), stack.full_rank());
    for i in [a, b, c] {
        println!("{}: in guts of {{e1,e2}}: {}", stack.label(i), stack.in_guts(x, i));
    }
    println!("circuits through the free point:");
    for circ in stack.circuits().into_iter().filter(|s| s.contains(b)) {
        println!("  {circ:?}");
    }

    let r = stack.restrict(ElementSet::full(7) - ElementSet::singleton(0))?;
    println!("after deleting e1: {} elements, rank {}", r.len(), r.full_rank());
    Ok(())
}
