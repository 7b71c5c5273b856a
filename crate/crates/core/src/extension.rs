//! Single-element extensions of a rank oracle, stacked one layer per new
//! element, and restriction to a subset of the result.

use std::cell::{Cell, RefCell};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::matroid::{ElementId, ElementSet, RankOracle, MAX_ELEMENTS};

/// How a layer's element depends on the sets below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LayerKind {
    /// Adding the element always raises rank.
    Coloop,
    /// Placed freely in `cl(z)`: spanned by `X` exactly when `X` spans `z`.
    FreeInClosure { z: ElementSet },
    /// Placed freely in the guts of `(z, E \ z)`, with `dup` counted on
    /// both sides of the separation.
    FreeInGuts { z: ElementSet, dup: ElementSet },
}

#[derive(Clone, Debug)]
pub struct ExtensionLayer {
    pub kind: LayerKind,
    pub id: ElementId,
}

/// A base oracle with extension layers on top. Element `base.len() + i` is
/// the element added by layer `i`.
pub struct StackedOracle<'a> {
    base: &'a dyn RankOracle,
    layers: Vec<ExtensionLayer>,
    labels: Vec<ElementId>,
    memo: RefCell<FxHashMap<(usize, u64), u8>>,
    queries: Cell<u64>,
}

impl<'a> StackedOracle<'a> {
    pub fn new(base: &'a dyn RankOracle) -> Self {
        let labels = (0..base.len()).map(|i| base.label(i)).collect();
        StackedOracle { base, layers: Vec::new(), labels, memo: RefCell::default(), queries: Cell::new(0) }
    }

    pub fn layers(&self) -> &[ExtensionLayer] {
        &self.layers
    }

    pub fn base_len(&self) -> usize {
        self.base.len()
    }

    /// Index of the element with the given id.
    pub fn index_of(&self, id: ElementId) -> Option<usize> {
        self.labels.iter().position(|&l| l == id)
    }

    pub fn add_coloop(&mut self, id: ElementId) -> Result<usize> {
        self.push(LayerKind::Coloop, id)
    }

    pub fn add_free_in_closure(&mut self, z: ElementSet, id: ElementId) -> Result<usize> {
        self.check_subset(z)?;
        self.push(LayerKind::FreeInClosure { z }, id)
    }

    pub fn add_free_in_guts(&mut self, z: ElementSet, dup: ElementSet, id: ElementId) -> Result<usize> {
        self.check_subset(z)?;
        self.check_subset(dup)?;
        self.push(LayerKind::FreeInGuts { z, dup }, id)
    }

    /// The restriction to `keep`, renumbered densely in increasing order.
    pub fn restrict(self, keep: ElementSet) -> Result<Restriction<Self>> {
        Restriction::new(self, keep)
    }

    fn check_subset(&self, s: ElementSet) -> Result<()> {
        match (s - ElementSet::full(self.labels.len())).first() {
            Some(index) => Err(Error::UnknownElement { index, len: self.labels.len() }),
            None => Ok(()),
        }
    }

    fn push(&mut self, kind: LayerKind, id: ElementId) -> Result<usize> {
        if self.labels.contains(&id) {
            return Err(Error::IdCollision(id));
        }
        if self.labels.len() == MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge(MAX_ELEMENTS + 1));
        }
        self.layers.push(ExtensionLayer { kind, id });
        self.labels.push(id);
        self.memo.borrow_mut().clear();
        Ok(self.labels.len() - 1)
    }

    /// Rank of `set` in the matroid after the first `level` layers.
    fn rank_at(&self, level: usize, set: ElementSet) -> usize {
        if level == 0 {
            return self.base.rank(set);
        }
        let e = self.base.len() + level - 1;
        if !set.contains(e) {
            return self.rank_at(level - 1, set);
        }
        if let Some(&r) = self.memo.borrow().get(&(level, set.bits())) {
            return r as usize;
        }
        let rest = set.without(e);
        let below = level - 1;
        let r = self.rank_at(below, rest);
        let dependent = match &self.layers[below].kind {
            LayerKind::Coloop => false,
            LayerKind::FreeInClosure { z } => self.rank_at(below, rest | *z) == r,
            LayerKind::FreeInGuts { z, dup } => {
                let ground = ElementSet::full(self.base.len() + below);
                let mu = self.rank_at(below, *z | *dup | rest) + self.rank_at(below, (ground - *z) | *dup | rest)
                    - self.rank_at(below, ground);
                mu == r
            }
        };
        let value = if dependent { r } else { r + 1 };
        self.memo.borrow_mut().insert((level, set.bits()), value as u8);
        value
    }
}

impl RankOracle for StackedOracle<'_> {
    fn len(&self) -> usize {
        self.labels.len()
    }

    fn rank(&self, set: ElementSet) -> usize {
        self.queries.set(self.queries.get() + 1);
        self.rank_at(self.layers.len(), set)
    }

    fn queries(&self) -> u64 {
        self.queries.get()
    }

    fn label(&self, index: usize) -> ElementId {
        self.labels[index]
    }
}

/// An owned restriction (deletion of the complement of `keep`).
pub struct Restriction<O> {
    inner: O,
    keep: Vec<usize>,
}

impl<O: RankOracle> Restriction<O> {
    pub fn new(inner: O, keep: ElementSet) -> Result<Self> {
        if let Some(index) = (keep - ElementSet::full(inner.len())).first() {
            return Err(Error::UnknownElement { index, len: inner.len() });
        }
        Ok(Restriction { inner, keep: keep.iter().collect() })
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }

    /// Position in the unrestricted oracle of element `i`.
    pub fn inner_index(&self, i: usize) -> usize {
        self.keep[i]
    }

    /// Dense index of the element at `inner` position, if kept.
    pub fn outer_index(&self, inner: usize) -> Option<usize> {
        self.keep.binary_search(&inner).ok()
    }

    pub fn lift(&self, set: ElementSet) -> ElementSet {
        set.iter().map(|i| self.keep[i]).collect()
    }
}

impl<O: RankOracle> RankOracle for Restriction<O> {
    fn len(&self) -> usize {
        self.keep.len()
    }

    fn rank(&self, set: ElementSet) -> usize {
        self.inner.rank(self.lift(set))
    }

    fn queries(&self) -> u64 {
        self.inner.queries()
    }

    fn label(&self, index: usize) -> ElementId {
        self.inner.label(self.keep[index])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{MatroidExt, UniformMatroid};

    fn set(v: &[usize]) -> ElementSet {
        v.iter().collect()
    }

    #[test]
    fn coloop_layer() {
        let u = UniformMatroid::new(1, 1);
        let mut s = StackedOracle::new(&u);
        let a = s.add_coloop(ElementId::gadget(0)).unwrap();
        assert_eq!(s.rank(set(&[a])), 1);
        assert_eq!(s.rank(set(&[0, a])), 2);
        assert_eq!(s.lambda(set(&[a])), 0);
        assert!(matches!(s.add_coloop(ElementId::gadget(0)), Err(Error::IdCollision(_))));

        let empty = UniformMatroid::new(0, 0);
        let mut s = StackedOracle::new(&empty);
        s.add_coloop(ElementId::gadget(0)).unwrap();
        assert_eq!(s.full_rank(), 1);
    }

    #[test]
    fn closure_layer() {
        let u = UniformMatroid::new(2, 3);
        let mut s = StackedOracle::new(&u);
        let b = s.add_free_in_closure(set(&[0, 1]), ElementId::gadget(0)).unwrap();
        assert_eq!(s.rank(set(&[0, b])), 2);
        assert_eq!(s.rank(set(&[0, 1, b])), 2);
        assert_eq!(s.rank(set(&[b])), 1);
        assert_eq!(s.full_rank(), 2);
    }

    #[test]
    fn guts_layer() {
        let pair = UniformMatroid::new(1, 2);
        let mut s = StackedOracle::new(&pair);
        let c = s.add_free_in_guts(set(&[0]), ElementSet::EMPTY, ElementId::gadget(0)).unwrap();
        assert_eq!(s.rank(set(&[c])), 1);
        assert_eq!(s.rank(set(&[0, c])), 1);

        let two = UniformMatroid::new(2, 2);
        let mut s = StackedOracle::new(&two);
        let c = s.add_free_in_guts(set(&[0]), ElementSet::EMPTY, ElementId::gadget(0)).unwrap();
        assert_eq!(s.rank(set(&[c])), 0);
    }

    #[test]
    fn restriction() {
        let u = UniformMatroid::new(2, 4);
        let s = StackedOracle::new(&u);
        let r = s.restrict(set(&[1, 3])).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.full_rank(), 2);
        assert_eq!(r.label(1), ElementId::input(3));
        let s = StackedOracle::new(&u);
        let r = s.restrict(ElementSet::EMPTY).unwrap();
        assert_eq!(r.full_rank(), 0);
    }
}
