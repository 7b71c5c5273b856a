//! Matroids as rank oracles.
//!
//! Every derived quantity (connectivity, closure, circuits, components) is
//! computed through [`RankOracle::rank`] alone, so linear matroids, minors
//! and extension stacks share one code path.

mod linear;
mod minor;
mod set;
mod uniform;

pub use linear::LinearMatroid;
pub use minor::{minor, Minor};
pub use set::{ElementSet, Elements, MAX_ELEMENTS};
pub use uniform::UniformMatroid;

use std::cell::{Cell, RefCell};
use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Identity of a matroid element in reports.
///
/// Input elements carry their 0-based input position; elements introduced
/// by gadget constructions live in the negative range so they can never be
/// mistaken for input elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId(i64);

impl ElementId {
    pub fn input(index: usize) -> Self {
        ElementId(index as i64)
    }

    pub fn gadget(serial: usize) -> Self {
        ElementId(-(serial as i64) - 1)
    }

    pub fn is_gadget(self) -> bool {
        self.0 < 0
    }

    /// 0-based input position, `None` for gadget elements.
    pub fn input_index(self) -> Option<usize> {
        (self.0 >= 0).then_some(self.0 as usize)
    }

    pub fn raw(self) -> i64 {
        self.0
    }
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.input_index() {
            Some(i) => write!(f, "e{}", i + 1),
            None => write!(f, "g{}", -self.0),
        }
    }
}

/// Access to a matroid on the dense ground set `0..len()` through rank
/// queries.
pub trait RankOracle {
    fn len(&self) -> usize;

    /// Rank of `set`, which must be a subset of the ground set.
    fn rank(&self, set: ElementSet) -> usize;

    /// Number of logical rank queries answered so far, memoized or not.
    fn queries(&self) -> u64;

    fn label(&self, index: usize) -> ElementId {
        ElementId::input(index)
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<T: RankOracle + ?Sized> RankOracle for &T {
    fn len(&self) -> usize {
        (**self).len()
    }
    fn rank(&self, set: ElementSet) -> usize {
        (**self).rank(set)
    }
    fn queries(&self) -> u64 {
        (**self).queries()
    }
    fn label(&self, index: usize) -> ElementId {
        (**self).label(index)
    }
}

const CACHE_CAPACITY: usize = 1 << 20;

/// Per-oracle memo table and logical query counter.
#[derive(Debug, Default)]
pub struct RankCache {
    memo: RefCell<FxHashMap<u64, u8>>,
    queries: Cell<u64>,
}

impl RankCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_compute(&self, set: ElementSet, compute: impl FnOnce() -> usize) -> usize {
        self.queries.set(self.queries.get() + 1);
        if let Some(&r) = self.memo.borrow().get(&set.bits()) {
            return r as usize;
        }
        let r = compute();
        let mut memo = self.memo.borrow_mut();
        if memo.len() < CACHE_CAPACITY {
            memo.insert(set.bits(), r as u8);
        }
        r
    }

    pub fn queries(&self) -> u64 {
        self.queries.get()
    }
}

/// Counts the queries a caller issues, forwarding them unchanged.
pub struct CountingOracle<'a> {
    inner: &'a dyn RankOracle,
    count: Cell<u64>,
}

impl<'a> CountingOracle<'a> {
    pub fn new(inner: &'a dyn RankOracle) -> Self {
        CountingOracle { inner, count: Cell::new(0) }
    }

    pub fn count(&self) -> u64 {
        self.count.get()
    }
}

impl RankOracle for CountingOracle<'_> {
    fn len(&self) -> usize {
        self.inner.len()
    }
    fn rank(&self, set: ElementSet) -> usize {
        self.count.set(self.count.get() + 1);
        self.inner.rank(set)
    }
    fn queries(&self) -> u64 {
        self.count.get()
    }
    fn label(&self, index: usize) -> ElementId {
        self.inner.label(index)
    }
}

/// Quantities derived from the rank function.
pub trait MatroidExt: RankOracle {
    fn ground(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    /// Connectivity `r(X) + r(E \ X) - r(E)`.
    fn lambda(&self, x: ElementSet) -> usize {
        let e = self.ground();
        self.rank(x) + self.rank(e - x) - self.rank(e)
    }

    /// `r(X ∪ A) + r((E \ X) ∪ A) - r(E)`.
    fn mu(&self, x: ElementSet, a: ElementSet) -> usize {
        let e = self.ground();
        self.rank(x | a) + self.rank((e - x) | a) - self.rank(e)
    }

    fn closure(&self, x: ElementSet) -> ElementSet {
        let r = self.rank(x);
        let mut cl = x;
        for e in self.ground() - x {
            if self.rank(x.with(e)) == r {
                cl.insert(e);
            }
        }
        cl
    }

    fn is_independent(&self, x: ElementSet) -> bool {
        self.rank(x) == x.len()
    }

    fn is_circuit(&self, c: ElementSet) -> bool {
        !c.is_empty() && self.rank(c) + 1 == c.len() && c.iter().all(|e| self.rank(c.without(e)) + 1 == c.len())
    }

    /// Whether `e` is spanned by both sides of `(X, E \ X)`.
    fn in_guts(&self, x: ElementSet, e: usize) -> bool {
        let y = self.ground() - x;
        let rx = self.rank(x);
        let ry = self.rank(y);
        self.rank(x.with(e)) == rx && self.rank(y.with(e)) == ry
    }

    /// A circuit inside the dependent set `x`.
    fn find_circuit(&self, x: ElementSet) -> Result<ElementSet> {
        if self.is_independent(x) {
            return Err(Error::NoCircuit);
        }
        let mut c = x;
        for e in x {
            let smaller = c.without(e);
            if !self.is_independent(smaller) {
                c = smaller;
            }
        }
        Ok(c)
    }

    /// Lexicographically first basis of `within`.
    fn greedy_basis(&self, within: ElementSet) -> ElementSet {
        let mut b = ElementSet::EMPTY;
        let mut r = 0;
        for e in within {
            if self.rank(b.with(e)) > r {
                b.insert(e);
                r += 1;
            }
        }
        b
    }

    /// The unique circuit in `B ∪ {f}` for a basis `B` and `f ∉ B`.
    fn fundamental_circuit(&self, f: usize, basis: ElementSet) -> Result<ElementSet> {
        if basis.contains(f) {
            return Err(Error::NotABasis("element lies in the basis"));
        }
        let rb = self.rank(basis);
        if rb != basis.len() || rb != self.full_rank() {
            return Err(Error::NotABasis("set is not a basis"));
        }
        let with_f = basis.with(f);
        let mut c = ElementSet::singleton(f);
        for b in basis {
            if self.rank(with_f.without(b)) == rb {
                c.insert(b);
            }
        }
        Ok(c)
    }

    /// Connected components, ordered by smallest element.
    ///
    /// Joins each non-basis element with its fundamental circuit for one
    /// greedily chosen basis.
    fn components(&self) -> Vec<ElementSet> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let basis = self.greedy_basis(self.ground());
        for f in self.ground() - basis {
            if self.rank(ElementSet::singleton(f)) == 0 {
                continue;
            }
            let c = self.fundamental_circuit(f, basis).expect("greedy basis is a basis");
            let root = find(&mut parent, f);
            for e in c {
                let r = find(&mut parent, e);
                parent[r] = root;
            }
        }
        let mut by_root: Vec<ElementSet> = vec![ElementSet::EMPTY; n];
        for e in 0..n {
            let r = find(&mut parent, e);
            by_root[r].insert(e);
        }
        let mut parts: Vec<ElementSet> = by_root.into_iter().filter(|s| !s.is_empty()).collect();
        parts.sort_by_key(|s| s.first());
        parts
    }

    fn is_connected(&self) -> bool {
        self.len() <= 1 || self.components().len() == 1
    }

    /// Every circuit, by exhaustive enumeration. Exponential; small ground
    /// sets only.
    fn circuits(&self) -> Vec<ElementSet> {
        let n = self.len();
        assert!(n <= 20, "exhaustive circuit enumeration on {n} elements");
        (1u64..1u64 << n).map(ElementSet::from_bits).filter(|&c| self.is_circuit(c)).collect()
    }
}

impl<T: RankOracle + ?Sized> MatroidExt for T {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GfTable;
    use crate::linalg::Matrix;

    fn linear(p: u32, rows: &[Vec<u16>]) -> LinearMatroid<GfTable> {
        let cols = rows[0].len();
        LinearMatroid::new(GfTable::prime(p).unwrap(), Matrix::from_rows(cols, rows).unwrap()).unwrap()
    }

    /// Cycle matroid of the 4-cycle, edges 12, 23, 34, 41.
    fn c4() -> LinearMatroid<GfTable> {
        linear(2, &[vec![1, 0, 0, 1], vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1]])
    }

    fn set(v: &[usize]) -> ElementSet {
        v.iter().collect()
    }

    #[test]
    fn lambda_examples() {
        let u24 = UniformMatroid::new(2, 4);
        assert_eq!(u24.lambda(ElementSet::EMPTY), 0);
        assert_eq!(u24.lambda(set(&[0, 1])), 2);
        assert_eq!(c4().lambda(set(&[0, 1])), 1);
    }

    #[test]
    fn mu_examples() {
        let u24 = UniformMatroid::new(2, 4);
        assert_eq!(u24.mu(set(&[0]), ElementSet::EMPTY), u24.lambda(set(&[0])));
        assert_eq!(u24.mu(set(&[0]), set(&[1])), 2);
        let m = c4();
        assert_eq!(m.mu(set(&[0]), set(&[0])), 1);
        assert_eq!(m.lambda(set(&[0])), 1);
    }

    #[test]
    fn closure_examples() {
        let u24 = UniformMatroid::new(2, 4);
        assert_eq!(u24.closure(set(&[0, 1])), u24.ground());
        assert_eq!(u24.closure(set(&[0])), set(&[0]));
        let par = linear(2, &[vec![1, 1, 0], vec![0, 0, 1]]);
        assert!(set(&[0, 1]).is_subset(par.closure(set(&[0]))));
    }

    #[test]
    fn circuit_examples() {
        let u24 = UniformMatroid::new(2, 4);
        assert_eq!(u24.find_circuit(set(&[0, 1, 2])).unwrap(), set(&[0, 1, 2]));
        let free = linear(2, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(matches!(free.find_circuit(free.ground()), Err(Error::NoCircuit)));
        let par = linear(2, &[vec![1, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert_eq!(par.find_circuit(par.ground()).unwrap(), set(&[0, 1]));
    }

    #[test]
    fn fundamental_circuit_examples() {
        let u23 = UniformMatroid::new(2, 3);
        assert_eq!(u23.fundamental_circuit(2, set(&[0, 1])).unwrap(), set(&[0, 1, 2]));
        let m = linear(2, &[vec![1, 0, 1], vec![0, 1, 0]]);
        assert_eq!(m.fundamental_circuit(2, set(&[0, 1])).unwrap(), set(&[0, 2]));
        assert!(matches!(m.fundamental_circuit(0, set(&[0, 1])), Err(Error::NotABasis(_))));
        assert!(matches!(m.fundamental_circuit(2, set(&[0])), Err(Error::NotABasis(_))));
        // b1 plus a coloop c; f parallel to b1
        let coloop = linear(2, &[vec![1, 0, 1], vec![0, 1, 0]]);
        assert_eq!(coloop.fundamental_circuit(2, set(&[0, 1])).unwrap(), set(&[0, 2]));
    }

    #[test]
    fn component_examples() {
        let free = linear(2, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(free.components().len(), 3);
        // two parallel pairs in separate blocks
        let blocks = linear(3, &[vec![1, 2, 0, 0], vec![0, 0, 1, 1]]);
        assert_eq!(blocks.components(), vec![set(&[0, 1]), set(&[2, 3])]);
        assert_eq!(UniformMatroid::new(2, 4).components(), vec![set(&[0, 1, 2, 3])]);
    }

    #[test]
    fn components_match_separator_atoms() {
        let m = linear(
            2,
            &[
                vec![1, 0, 1, 0, 0, 0, 0],
                vec![0, 1, 1, 0, 0, 0, 0],
                vec![0, 0, 0, 1, 1, 0, 0],
                vec![0, 0, 0, 0, 0, 1, 0],
            ],
        );
        let n = m.len();
        let separators: Vec<ElementSet> =
            (0u64..1 << n).map(ElementSet::from_bits).filter(|&x| m.lambda(x) == 0).collect();
        let mut atoms: Vec<ElementSet> =
            (0..n).map(|e| separators.iter().filter(|s| s.contains(e)).fold(m.ground(), |a, &s| a & s)).collect();
        atoms.sort();
        atoms.dedup();
        atoms.sort_by_key(|s| s.first());
        assert_eq!(m.components(), atoms);
    }
}
