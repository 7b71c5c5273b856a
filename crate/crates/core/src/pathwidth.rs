//! Orderings, their widths, and exact path-width by search over prefix sets.

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::matroid::{ElementId, ElementSet, MatroidExt, RankOracle};

/// Ground sets larger than this are refused by the user-facing exact
/// solvers.
pub const DEFAULT_GUARD: usize = 24;

/// An ordering of the ground set with its prefix connectivities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDecomposition {
    pub order: Vec<usize>,
    /// `lambdas[i]` is the connectivity of the first `i + 1` elements.
    pub lambdas: Vec<usize>,
    pub width: usize,
}

impl PathDecomposition {
    pub fn ids(&self, m: &dyn RankOracle) -> Vec<ElementId> {
        self.order.iter().map(|&i| m.label(i)).collect()
    }
}

pub fn width_of_order(m: &dyn RankOracle, order: &[usize]) -> Result<PathDecomposition> {
    let n = m.len();
    let mut seen = ElementSet::EMPTY;
    for &e in order {
        if e >= n || seen.contains(e) {
            return Err(Error::NotAPermutation);
        }
        seen.insert(e);
    }
    if order.len() != n {
        return Err(Error::NotAPermutation);
    }
    let mut prefix = ElementSet::EMPTY;
    let lambdas: Vec<usize> = order[..n.saturating_sub(1)]
        .iter()
        .map(|&e| {
            prefix.insert(e);
            m.lambda(prefix)
        })
        .collect();
    let width = lambdas.iter().copied().max().unwrap_or(0);
    Ok(PathDecomposition { order: order.to_vec(), lambdas, width })
}

fn guard(m: &dyn RankOracle, limit: usize) -> Result<()> {
    if m.len() > limit {
        return Err(Error::GuardExceeded { n: m.len(), limit });
    }
    Ok(())
}

/// `f(S)`: the least width of an ordering that places `S` first.
pub struct DpTable {
    n: usize,
    values: Vec<u8>,
    last: Vec<u8>,
}

impl DpTable {
    pub fn build(m: &dyn RankOracle) -> Result<Self> {
        Self::build_with_guard(m, DEFAULT_GUARD)
    }

    pub fn build_with_guard(m: &dyn RankOracle, limit: usize) -> Result<Self> {
        guard(m, limit)?;
        let n = m.len();
        let size = 1usize << n;
        let full = ElementSet::full(n);
        let ranks: Vec<u8> = (0..size as u64).map(|s| m.rank(ElementSet::from_bits(s)) as u8).collect();
        let total = ranks[size - 1];
        let mut values = vec![0u8; size];
        let mut last = vec![0u8; size];
        for s in 1..size {
            let set = ElementSet::from_bits(s as u64);
            let lambda = ranks[s] + ranks[(full - set).bits() as usize] - total;
            let (best, e) = set.iter().map(|e| (values[set.without(e).bits() as usize], e)).min().expect("nonempty");
            values[s] = lambda.max(best);
            last[s] = e as u8;
        }
        Ok(DpTable { n, values, last })
    }

    pub fn value(&self, s: ElementSet) -> usize {
        self.values[s.bits() as usize] as usize
    }

    pub fn pathwidth(&self) -> usize {
        self.value(ElementSet::full(self.n))
    }

    /// An optimal ordering; each position takes the smallest element
    /// attaining the minimum.
    pub fn witness_order(&self) -> Vec<usize> {
        let mut s = ElementSet::full(self.n);
        let mut rev = Vec::with_capacity(self.n);
        while !s.is_empty() {
            let e = self.last[s.bits() as usize] as usize;
            rev.push(e);
            s.remove(e);
        }
        rev.reverse();
        rev
    }
}

/// Exact path-width and an optimal decomposition.
pub fn pathwidth_exact(m: &dyn RankOracle) -> Result<(usize, PathDecomposition)> {
    let table = DpTable::build(m)?;
    let pd = width_of_order(m, &table.witness_order())?;
    debug_assert_eq!(pd.width, table.pathwidth());
    Ok((table.pathwidth(), pd))
}

/// Adds every element that does not raise the connectivity, until none is
/// left. Any width-`t` ordering through `s` can be rearranged to pass
/// through the result, so searches may jump there directly.
fn absorb(m: &dyn RankOracle, mut s: ElementSet, added: &mut Vec<usize>) -> ElementSet {
    let ground = m.ground();
    let mut lambda = m.lambda(s);
    'outer: loop {
        for e in ground - s {
            let l = m.lambda(s.with(e));
            if l <= lambda {
                s.insert(e);
                added.push(e);
                lambda = l;
                continue 'outer;
            }
        }
        return s;
    }
}

/// Depth-first search for a chain of sets from `start` to the ground set
/// with every connectivity at most `t`. Returns the elements in the order
/// they are added.
fn search(m: &dyn RankOracle, start: ElementSet, t: usize) -> Option<Vec<usize>> {
    struct Frame {
        state: ElementSet,
        added: Vec<usize>,
        candidates: Vec<usize>,
        next: usize,
    }
    let ground = m.ground();
    let expand = |state: ElementSet| -> Vec<usize> {
        let mut c: Vec<(usize, usize)> =
            (ground - state).iter().map(|e| (m.lambda(state.with(e)), e)).filter(|&(l, _)| l <= t).collect();
        c.sort_unstable();
        c.into_iter().map(|(_, e)| e).collect()
    };
    let mut added = Vec::new();
    let root = absorb(m, start, &mut added);
    let mut visited = FxHashSet::default();
    visited.insert(root.bits());
    let mut stack = vec![Frame { state: root, candidates: expand(root), added, next: 0 }];
    loop {
        let top = stack.last_mut()?;
        if top.state == ground {
            return Some(stack.into_iter().flat_map(|f| f.added).collect());
        }
        if top.next == top.candidates.len() {
            stack.pop();
            continue;
        }
        let e = top.candidates[top.next];
        top.next += 1;
        let mut added = vec![e];
        let child = absorb(m, top.state.with(e), &mut added);
        if visited.insert(child.bits()) {
            stack.push(Frame { state: child, candidates: expand(child), added, next: 0 });
        }
    }
}

/// Whether `pw(m) <= t`.
pub fn decide_pw_le(m: &dyn RankOracle, t: usize) -> Result<bool> {
    decide_pw_le_with_guard(m, t, DEFAULT_GUARD)
}

pub fn decide_pw_le_with_guard(m: &dyn RankOracle, t: usize, limit: usize) -> Result<bool> {
    guard(m, limit)?;
    Ok(search(m, ElementSet::EMPTY, t).is_some())
}

/// A width-`t` ordering, if one exists.
pub fn order_of_width(m: &dyn RankOracle, t: usize) -> Result<Option<Vec<usize>>> {
    guard(m, DEFAULT_GUARD)?;
    Ok(search(m, ElementSet::EMPTY, t))
}

/// Whether some ordering of width at most `t` begins with `prefix`.
pub fn decide_prefix_extendable(m: &dyn RankOracle, prefix: &[usize], t: usize) -> Result<bool> {
    guard(m, DEFAULT_GUARD)?;
    let mut s = ElementSet::EMPTY;
    for &e in prefix {
        if e >= m.len() {
            return Err(Error::UnknownElement { index: e, len: m.len() });
        }
        if s.contains(e) {
            return Err(Error::NotAPermutation);
        }
        s.insert(e);
        if m.lambda(s) > t {
            return Ok(false);
        }
    }
    Ok(search(m, s, t).is_some())
}

/// A procedure answering "is the path-width at most `t`?".
pub trait DecisionOracle {
    fn decide(&self, m: &dyn RankOracle, t: usize) -> Result<bool>;
}

/// The built-in exact search.
#[derive(Clone, Copy, Debug)]
pub struct DpOracle {
    pub max_elements: usize,
}

impl Default for DpOracle {
    fn default() -> Self {
        DpOracle { max_elements: DEFAULT_GUARD }
    }
}

impl DecisionOracle for DpOracle {
    fn decide(&self, m: &dyn RankOracle, t: usize) -> Result<bool> {
        decide_pw_le_with_guard(m, t, self.max_elements)
    }
}

impl<F> DecisionOracle for F
where
    F: Fn(&dyn RankOracle, usize) -> Result<bool>,
{
    fn decide(&self, m: &dyn RankOracle, t: usize) -> Result<bool> {
        self(m, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::UniformMatroid;

    #[test]
    fn widths_of_orders() {
        let u = UniformMatroid::new(2, 4);
        let pd = width_of_order(&u, &[2, 0, 3, 1]).unwrap();
        assert_eq!(pd.lambdas, vec![1, 2, 1]);
        assert_eq!(pd.width, 2);
        assert!(matches!(width_of_order(&u, &[0, 0, 1, 2]), Err(Error::NotAPermutation)));
        assert!(matches!(width_of_order(&u, &[0, 1, 2]), Err(Error::NotAPermutation)));
        let free = UniformMatroid::new(3, 3);
        assert_eq!(width_of_order(&free, &[1, 0, 2]).unwrap().width, 0);
    }

    #[test]
    fn exact_and_decision() {
        let u = UniformMatroid::new(2, 4);
        assert_eq!(pathwidth_exact(&u).unwrap().0, 2);
        assert!(!decide_pw_le(&u, 1).unwrap());
        assert!(decide_pw_le(&u, 2).unwrap());
        let free = UniformMatroid::new(5, 5);
        assert_eq!(pathwidth_exact(&free).unwrap().0, 0);
        assert!(decide_pw_le(&UniformMatroid::new(3, 3), 0).unwrap());
        let empty = UniformMatroid::new(0, 0);
        let (w, pd) = pathwidth_exact(&empty).unwrap();
        assert_eq!((w, pd.order.len()), (0, 0));
    }

    #[test]
    fn prefixes() {
        let u = UniformMatroid::new(2, 4);
        assert!(!decide_prefix_extendable(&u, &[0, 1], 1).unwrap());
        assert!(decide_prefix_extendable(&u, &[0, 1], 2).unwrap());
        assert!(decide_prefix_extendable(&UniformMatroid::new(3, 3), &[0], 0).unwrap());
    }

    #[test]
    fn guard_refuses() {
        let big = UniformMatroid::new(1, 30);
        assert!(matches!(pathwidth_exact(&big), Err(Error::GuardExceeded { n: 30, limit: 24 })));
        assert!(DpOracle { max_elements: 64 }.decide(&big, 1).unwrap());
    }
}
