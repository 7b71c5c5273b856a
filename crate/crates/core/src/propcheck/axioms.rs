use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matroid::{ElementSet, MatroidExt, RankOracle};

/// Violation counts from sampled rank-axiom checks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub samples: usize,
    pub empty_rank: bool,
    pub unit_increase: usize,
    pub monotonicity: usize,
    pub submodularity: usize,
    pub lambda_symmetry: usize,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.empty_rank
            && self.unit_increase == 0
            && self.monotonicity == 0
            && self.submodularity == 0
            && self.lambda_symmetry == 0
    }
}

/// Checks the rank axioms on `samples` random pairs of subsets.
pub fn check_rank_axioms(m: &dyn RankOracle, samples: usize, seed: u64) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ground = m.ground();
    let mask = ground.bits();
    let mut report = AxiomReport { samples, empty_rank: m.rank(ElementSet::EMPTY) == 0, ..Default::default() };
    for _ in 0..samples {
        let a = ElementSet::from_bits(rng.gen::<u64>() & mask);
        let b = ElementSet::from_bits(rng.gen::<u64>() & mask);
        let ra = m.rank(a);
        if ra > a.len() {
            report.unit_increase += 1;
        }
        for e in ground - a {
            let re = m.rank(a.with(e));
            if re < ra || re > ra + 1 {
                report.unit_increase += 1;
            }
        }
        if m.rank(a & b) > ra || ra > m.rank(a | b) {
            report.monotonicity += 1;
        }
        if m.rank(a | b) + m.rank(a & b) > ra + m.rank(b) {
            report.submodularity += 1;
        }
        if m.lambda(a) != m.lambda(ground - a) {
            report.lambda_symmetry += 1;
        }
    }
    report
}
