use matpw::matroid::{MatroidExt, RankOracle};
use matpw::pathwidth::{decide_prefix_extendable, pathwidth_exact};
use matpw::propcheck::Named;
use matpw::selfreduce::{GadgetAbstract, GadgetLinear};

fn main() -> matpw::Result<()> {
    let m = Named::Cycle(4).build()?;
    let t = 1;
    for f in 1..m.len() {
        let g = GadgetLinear::build(&m, &[0, f], t)?;
        let check = g.check();
        println!(
            "prefix [e1, e{}]: k={} |P|={} rest={:?} gadget pw={} extendable={} checks={}",
            f + 1,
            g.k(),
            g.points().len(),
            g.rest(),
            pathwidth_exact(&g)?.0,
            decide_prefix_extendable(&m, &[0, f], t).unwrap_or(false),
            check.all()
        );
    }

    let u = Named::U24.build()?;
    let g = GadgetAbstract::build(&u, &[0], 2)?;
    println!("abstract gadget over U(2,4): {} elements, rank {}", g.len(), g.full_rank());
    println!("  coloops {:?} points {:?} d {:?}", g.coloop_indices(), g.point_indices(), g.d_indices());
    println!("  pw {}", pathwidth_exact(&g)?.0);
    Ok(())
}
