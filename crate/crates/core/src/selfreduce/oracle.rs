use std::ops::Range;

use crate::error::{Error, Result};
use crate::extension::{Restriction, StackedOracle};
use crate::matroid::{ElementId, ElementSet, MatroidExt, RankOracle};

/// The gadget matroid `M'` for a prefix of a matroid given only by its
/// rank oracle, built from coloops and free placements.
///
/// Ground set, in order: the input elements outside the prefix (ascending),
/// the `2t` elements of `P` (coloops first, then guts placements), then
/// `d0, d1, ..., dt`.
pub struct GadgetAbstract<'a> {
    prefix: Vec<usize>,
    k: usize,
    t: usize,
    rest_len: usize,
    oracle: Restriction<StackedOracle<'a>>,
}

impl<'a> GadgetAbstract<'a> {
    pub fn build(m: &'a dyn RankOracle, prefix: &[usize], t: usize) -> Result<Self> {
        let n = m.len();
        if let Some(&e) = prefix.iter().find(|&&e| e >= n) {
            return Err(Error::UnknownElement { index: e, len: n });
        }
        let x: ElementSet = prefix.iter().collect();
        if x.len() != prefix.len() {
            return Err(Error::NotAPermutation);
        }
        let k = m.lambda(x);
        if k > t {
            return Err(Error::PrefixTooWide { lambda: k, t });
        }

        let mut stack = StackedOracle::new(m);
        let mut serial = 0;
        let mut fresh = || {
            serial += 1;
            ElementId::gadget(serial - 1)
        };
        let mut p0 = ElementSet::EMPTY;
        for _ in k..t {
            p0.insert(stack.add_coloop(fresh())?);
        }
        let z = x | p0;
        let mut dup = p0;
        for _ in 0..t + k {
            let c = stack.add_free_in_guts(z, dup, fresh())?;
            dup.insert(c);
        }
        let p = dup;
        let d0 = stack.add_coloop(fresh())?;
        let span = p.with(d0);
        for _ in 0..t {
            stack.add_free_in_closure(span, fresh())?;
        }
        let keep = ElementSet::full(stack.len()) - x;
        Ok(GadgetAbstract { prefix: prefix.to_vec(), k, t, rest_len: n - prefix.len(), oracle: stack.restrict(keep)? })
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Indices of the coloops added before the guts placements.
    pub fn coloop_indices(&self) -> Range<usize> {
        self.rest_len..self.rest_len + (self.t - self.k)
    }

    pub fn point_indices(&self) -> Range<usize> {
        self.rest_len..self.rest_len + 2 * self.t
    }

    /// Indices of `d0, d1, ..., dt`.
    pub fn d_indices(&self) -> Range<usize> {
        let start = self.rest_len + 2 * self.t;
        start..start + self.t + 1
    }

    pub fn stack(&self) -> &StackedOracle<'a> {
        self.oracle.inner()
    }
}

impl RankOracle for GadgetAbstract<'_> {
    fn len(&self) -> usize {
        self.oracle.len()
    }

    fn rank(&self, set: ElementSet) -> usize {
        self.oracle.rank(set)
    }

    fn queries(&self) -> u64 {
        self.oracle.queries()
    }

    fn label(&self, index: usize) -> ElementId {
        self.oracle.label(index)
    }
}
