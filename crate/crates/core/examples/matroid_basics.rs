use matpw::matroid::{ElementSet, MatroidExt, RankOracle};
use matpw::propcheck::Named;

fn main() -> matpw::Result<()> {
    let fano = Named::Fano.build()?;
    println!("F7: {} elements, rank {}", fano.len(), fano.full_rank());
    println!("circuits: {}", fano.circuits().len());

    let line: ElementSet = fano.circuits().into_iter().find(|c| c.len() == 3).expect("a line");
    println!("a line {line:?} has closure {:?}", fano.closure(line));
    println!("lambda(line) = {}", fano.lambda(line));

    let basis = fano.greedy_basis(fano.ground());
    for f in fano.ground() - basis {
        println!("fundamental circuit of {}: {:?}", fano.label(f), fano.fundamental_circuit(f, basis)?);
    }
    println!("connected: {}", fano.is_connected());

    let k4 = Named::K4.build()?;
    let triangle = k4.find_circuit(k4.ground())?;
    println!("M(K4) first circuit {triangle:?}, mu with itself {}", k4.mu(triangle, triangle));
    Ok(())
}
