//! Counts projective points of subspaces over GF(3) and intersects spans.

use matpw::field::GfTable;
use matpw::linalg::{projective_points, subspace_intersection, SubspaceBasis};

fn main() -> matpw::Result<()> {
    let f = GfTable::prime(3)?;
    let plane = SubspaceBasis::span(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0]])?;
    let other = SubspaceBasis::span(&f, 3, &[vec![1, 1, 1], vec![0, 0, 1]])?;
    let line = subspace_intersection(&f, &plane, &other)?;

    println!("plane has {} points", projective_points(&f, &plane).len());
    println!("intersection has rank {}", line.rank());
    for p in projective_points(&f, &line) {
        println!("  point {p:?}");
    }
    let whole = SubspaceBasis::span(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])?;
    println!("PG(2,3) has {} points", projective_points(&f, &whole).len());
    Ok(())
}
