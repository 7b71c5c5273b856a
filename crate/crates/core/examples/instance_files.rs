//! Parses an instance file, decomposes it and checks the printed result.

use matpw::cli::{InstanceDocument, ResultDocument};
use matpw::pathwidth::width_of_order;
use matpw::selfreduce::{decompose_full, gadget_oracle, Method};

const FILE: &str = "\
# the non-Fano plane
field 3
matrix 3 7
1 0 0 1 1 0 1
0 1 0 1 0 1 1
0 0 1 0 1 1 1
";

fn main() -> matpw::Result<()> {
    let doc = InstanceDocument::parse(FILE)?;
    assert_eq!(doc.emit(), FILE);
    let m = doc.to_matroid()?;
    let d = decompose_full(&m, Method::SelfAbstract, &gadget_oracle())?;
    let result = ResultDocument {
        width: d.width,
        order: d.decomposition.order.iter().map(|i| i + 1).collect(),
        lambdas: d.decomposition.lambdas.clone(),
        stats: None,
    };
    print!("{}", result.emit());

    let back = ResultDocument::parse(&result.emit())?;
    let order: Vec<usize> = back.order.iter().map(|i| i - 1).collect();
    assert_eq!(width_of_order(&m, &order)?.lambdas, back.lambdas);
    Ok(())
}
