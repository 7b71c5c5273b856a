use crate::error::{Error, Result};

use super::{ElementId, ElementSet, RankOracle};

/// `M / contract \ delete`, on the remaining elements renumbered densely in
/// increasing order.
pub struct Minor<'a> {
    base: &'a dyn RankOracle,
    contract: ElementSet,
    keep: Vec<usize>,
    contract_rank: usize,
}

pub fn minor<'a>(base: &'a dyn RankOracle, contract: ElementSet, delete: ElementSet) -> Result<Minor<'a>> {
    if !contract.is_disjoint(delete) {
        return Err(Error::OverlappingMinor);
    }
    let ground = ElementSet::full(base.len());
    for s in [contract, delete] {
        if let Some(e) = (s - ground).first() {
            return Err(Error::UnknownElement { index: e, len: base.len() });
        }
    }
    let keep = (ground - contract - delete).iter().collect();
    Ok(Minor { base, contract, keep, contract_rank: base.rank(contract) })
}

impl Minor<'_> {
    /// Position in the base matroid of minor element `i`.
    pub fn base_index(&self, i: usize) -> usize {
        self.keep[i]
    }

    fn lift(&self, set: ElementSet) -> ElementSet {
        set.iter().map(|i| self.keep[i]).collect()
    }
}

impl RankOracle for Minor<'_> {
    fn len(&self) -> usize {
        self.keep.len()
    }

    fn rank(&self, set: ElementSet) -> usize {
        self.base.rank(self.lift(set) | self.contract) - self.contract_rank
    }

    fn queries(&self) -> u64 {
        self.base.queries()
    }

    fn label(&self, index: usize) -> ElementId {
        self.base.label(self.keep[index])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{MatroidExt, UniformMatroid};

    #[test]
    fn minors_of_uniform() {
        let u = UniformMatroid::new(2, 4);
        let c = minor(&u, ElementSet::singleton(0), ElementSet::EMPTY).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.full_rank(), 1);
        let d = minor(&u, ElementSet::EMPTY, ElementSet::singleton(0)).unwrap();
        assert_eq!(d.full_rank(), 2);
        assert_eq!(d.label(0), ElementId::input(1));
        assert!(matches!(minor(&u, ElementSet::singleton(1), ElementSet::singleton(1)), Err(Error::OverlappingMinor)));
    }
}
